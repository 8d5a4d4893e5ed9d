#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "cohomforge/groups.hpp"
#include "cohomforge/intmat.hpp"

namespace cohomforge {

/// Finitely generated abelian group presented by an integer relation matrix
/// (columns are relations). Canonical coordinates come from the Smith normal
/// form of the relations: y = U x, coordinate i taken modulo moduli[i]
/// (0 = free coordinate).
struct AbelianGroupPresentation {
    int gens = 0;
    IntMat relations;          // gens x k
    IntMat U, Uinv;            // gens x gens, unimodular
    std::vector<i64> moduli;   // length gens

    static AbelianGroupPresentation from_relations(int gens, IntMat relations);
    static AbelianGroupPresentation cyclic(i64 d);
    static AbelianGroupPresentation free_group(int r);
    static AbelianGroupPresentation from_moduli(std::vector<i64> moduli);
    /// T independent copies, assembled blockwise without recomputing SNF.
    static AbelianGroupPresentation power(const AbelianGroupPresentation& base, i64 copies);

    std::vector<i64> reduce(std::span<const i64> x) const;       // canonical, normalized
    std::vector<i64> lift_canonical(std::span<const i64> y) const;  // Uinv * y
    bool is_zero(std::span<const i64> x) const;
    bool equal(std::span<const i64> a, std::span<const i64> b) const;

    std::vector<i64> invariant_factors() const;  // moduli > 1, in divisibility order
    int free_rank() const;
    std::optional<i64> element_count() const;  // nullopt when infinite
    i64 exponent() const;  // lcm of the torsion orders, 0 when a free part exists

    /// Enumeration of a finite group's elements in generator coordinates,
    /// index 0 being the zero element. Throws InfiniteCoefficients if free.
    std::vector<i64> element_by_index(i64 idx) const;
    i64 index_of(std::span<const i64> x) const;
};

/// Abelian coefficient module with a group action by integer matrices.
struct GModule {
    FiniteGroup group;
    AbelianGroupPresentation carrier;
    std::vector<IntMat> action;  // per group element, gens x gens

    void validate() const;
    std::vector<i64> act(int g, std::span<const i64> x) const;
    bool trivial_on(const std::vector<int>& elems) const;
};

using GModulePtr = std::shared_ptr<const GModule>;

GModulePtr trivial_module(const FiniteGroup& G, const AbelianGroupPresentation& carrier);
GModulePtr make_module(FiniteGroup G, AbelianGroupPresentation carrier, std::vector<IntMat> action);

/// Restrict a G-module to a subgroup (module over subgroup_group(H)).
GModulePtr restrict_module(const GModule& A, const Subgroup& H, const FiniteGroup& Hgrp);

/// View a G-module on which N acts trivially as a G/N-module through the
/// section. Throws TrivialityViolation if some n in N acts nontrivially.
GModulePtr quotient_module(const GModule& A, const QuotientData& qd);

/// (span Z + ambient relations) / (span B + ambient relations), with lifts.
struct Subquotient {
    AbelianGroupPresentation group;  // presented on canonical generators
    IntMat lift;                     // ambient_gens x group.gens
    // reduction data
    HermiteBasis zbasis;
    IntMat Uq;
    std::vector<i64> moduli;

    /// Canonical coordinates of an ambient element; throws NotContained
    /// when the element lies outside the numerator lattice.
    std::vector<i64> reduce(std::span<const i64> ambient) const;
};

Subquotient subquotient(const IntMat& Z, const IntMat& B, const AbelianGroupPresentation& ambient);

/// A^H as a subquotient of A's carrier together with the induced module
/// structure over a chosen group acting through `actors` (actors[i] is the
/// element of A.group that realizes the action of over.element i).
struct InvariantModule {
    Subquotient sq;       // inclusion data into A's carrier
    GModulePtr mod;       // module over the chosen group
};

Subquotient invariant_subquotient(const GModule& A, const std::vector<int>& H_elems);
InvariantModule invariant_module(const GModule& A, const std::vector<int>& H_elems,
                                 const FiniteGroup& over, const std::vector<int>& actors);

/// N/N' with its G-action by conjugation, presented on one generator per
/// element of N.
struct AbelianizedKernel {
    Subgroup N;
    std::vector<int> index_in_N;      // parent element -> position, -1 outside
    AbelianGroupPresentation pres;    // |N| generators
    GModulePtr as_g_module;           // over G

    std::vector<i64> coords_of(int parent_element) const;  // basis vector e_n
};

AbelianizedKernel abelianization_module(const FiniteGroup& G, const Subgroup& N);

/// View of N/N' as a G/N-module (conjugation through the section).
GModulePtr abelianization_as_quotient_module(const AbelianizedKernel& ab, const QuotientData& qd);

/// Homomorphism N -> A, stored by its value on every element of N.
struct KernelHom {
    std::vector<int> kernel_elems;           // sorted elements of N in the parent
    std::vector<int> index_in_N;             // parent element -> position
    std::vector<std::vector<i64>> values;    // per element, A generator coords
    GModulePtr target;

    std::vector<i64> eval(int parent_element) const;
    /// Linear extension to chains in the e_n basis of the abelianization.
    std::vector<i64> apply_chain(std::span<const i64> coords) const;
    bool is_zero() const;
    /// f(g n g^-1) == g . f(n) for all g in G, n in N.
    bool is_equivariant(const FiniteGroup& G) const;
};

KernelHom kernel_hom_from_values(const Subgroup& N, GModulePtr A,
                                 std::vector<std::vector<i64>> values);

struct HomGroupResult {
    std::vector<KernelHom> homs;         // all homomorphisms N -> A
    std::vector<char> invariant;         // equivariance flag per hom
    AbelianizedKernel ab;
};

/// Enumerates Hom(N, A); requires the finite-list representation to exist.
HomGroupResult hom_group(const FiniteGroup& G, const Subgroup& N, GModulePtr A);

}  // namespace cohomforge
