#pragma once

#include <optional>

#include "cohomforge/modules.hpp"

namespace cohomforge {

/// Degree ceiling for cohomology computations; COHOMFORGE_MAX_DEGREE overrides.
int max_degree();

/// Normalized group cochain: a dense map (G \ {1})^p -> A in coefficient
/// generator coordinates. Tuples containing the identity are implicitly zero.
struct Cochain {
    GModulePtr coeff;
    int degree = 0;
    std::vector<i64> values;  // tuple-major, block of carrier.gens per tuple

    const FiniteGroup& group() const { return coeff->group; }
    int block() const { return coeff->carrier.gens; }
    i64 tuple_count() const;

    static Cochain zero(GModulePtr coeff, int degree);

    /// Lexicographic index of a tuple of non-identity elements.
    i64 tuple_index(std::span<const int> tuple) const;
    std::vector<int> tuple_at(i64 idx) const;

    std::vector<i64> value_at(i64 idx) const;
    void set_value(i64 idx, std::span<const i64> v);

    /// Evaluation at an arbitrary tuple; identity arguments give zero.
    std::vector<i64> eval(std::span<const int> tuple) const;

    bool is_zero() const;  // zero modulo coefficient relations, every tuple
    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain negated() const;
};

Cochain coboundary(const Cochain& c);
bool is_cocycle(const Cochain& c);

/// One summand of the coboundary at a fixed target tuple: value picked up
/// from source tuple `src` (or skipped when a merged product hits the
/// identity), scaled by `sign`, acted on by group element `act`.
struct DeltaTerm {
    i64 src;
    int sign;
    int act;  // group element; 0 applies the identity matrix
};

std::vector<DeltaTerm> delta_terms(const FiniteGroup& G, std::span<const int> tuple);

/// Advances a tuple over (G \ {1})^k lexicographically; false past the end.
bool next_tuple(std::vector<int>& t, int n);

/// H^p as a subquotient of the free module on cochain coordinates, with
/// representative cocycle lifts per canonical generator.
struct CohomologyResult {
    GModulePtr coeff;
    int degree = 0;
    Subquotient sq;
    std::vector<Cochain> reps;

    std::vector<i64> invariant_factors() const { return sq.group.invariant_factors(); }
    std::optional<i64> order() const { return sq.group.element_count(); }
    /// Canonical coordinates of a cocycle's class. Throws NotCocycle.
    std::vector<i64> class_of(const Cochain& c) const;
    Cochain rep_from_class(std::span<const i64> cls) const;
};

CohomologyResult cohomology(GModulePtr A, int p);

struct CohomologousResult {
    bool equivalent = false;
    std::optional<Cochain> witness;  // T with c1 - c2 = dT (mod relations)
};

/// Decides whether two cocycles differ by a coboundary; produces a witness.
CohomologousResult cohomologous(const Cochain& c1, const Cochain& c2);

/// Basis cochains of C^{p-1} together with their coboundaries as columns,
/// plus the per-tuple relation embeddings. Shared by several solvers.
struct CoboundaryLattice {
    IntMat columns;       // T_p*m x (T_{p-1}*m + relation columns)
    int coboundary_cols;  // leading columns that came from C^{p-1} basis vectors
};

CoboundaryLattice coboundary_lattice(GModulePtr A, int p);

}  // namespace cohomforge
