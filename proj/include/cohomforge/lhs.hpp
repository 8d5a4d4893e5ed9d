#pragma once

#include "cohomforge/connection.hpp"

namespace cohomforge {

/// c of degree n lies in filtration level p when it vanishes whenever at
/// least n - p + 1 of its arguments lie in N. Levels p <= 0 are everything;
/// degrees below p contain only zero.
bool filtration_membership(const Cochain& c, const Subgroup& N, int p);

/// Generator matrix (columns) for Z_r^{p,q} = { c in C_p^{p+q} :
/// delta c in C_{p+r} } inside the free module on degree-(p+q) cochain
/// coordinates.
IntMat z_group(const Subgroup& N, GModulePtr A, int r, int p, int q);

/// E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + delta Z_{r-1}^{p-r+1,q+r-2}),
/// presented as a subquotient with cochain lifts per canonical generator.
struct SpectralPage {
    int r = 0, p = 0, q = 0;
    Subquotient sq;
    std::vector<Cochain> reps;

    std::vector<i64> invariant_factors() const { return sq.group.invariant_factors(); }
    std::optional<i64> order() const { return sq.group.element_count(); }
};

SpectralPage spectral_page(const Subgroup& N, GModulePtr A, int r, int p, int q);

/// Stable page at (p, q): computed at r = p + q + 2, beyond which nothing moves.
SpectralPage e_infinity(const Subgroup& N, GModulePtr A, int p, int q);

/// Matrix of d_r : E_r^{p,q} -> E_r^{p+r, q-r+1} on canonical generators.
/// Asserts well-definedness (denominator generators map to zero).
IntMat differential(const Subgroup& N, GModulePtr A, const SpectralPage& src,
                    const SpectralPage& dst);

/// H^q(N; A) with the conjugation action of G/N through the section,
/// packaged as a module over the quotient group.
struct KernelCohomology {
    CohomologyResult over_n;     // on the relabeled kernel group
    std::vector<int> index_in_N; // parent element -> kernel label
    GModulePtr as_quotient_module;
};

KernelCohomology kernel_cohomology(const Subgroup& N, GModulePtr A, const QuotientData& qd,
                                   int q);

/// Degreewise comparison map C_p^{p+q} -> C^p(G/N; C^q(N; A)) for p+q <= 2:
/// phi(c)(b_1..b_p)(a_1..a_q) = c(a_1,..,a_q, s(b_1),..,s(b_p)).
struct ShuffleImage {
    int p = 0, q = 0;
    GModulePtr restricted;        // A over the relabeled kernel
    std::vector<Cochain> values;  // one degree-q kernel cochain per quotient p-tuple
};

ShuffleImage shuffle_compare(const Cochain& c, const Subgroup& N, const QuotientData& qd, int p);

/// Pullback along the projection; lands in filtration level = degree of c.
Cochain inflation(const Cochain& c, const QuotientData& qd, GModulePtr A);

/// Class of c restricted to N, with a certificate that the class is fixed
/// by the conjugation action of the quotient.
struct RestrictionResult {
    std::vector<i64> class_coords;
    CohomologyResult target;  // H^q(N; A)
    bool invariant = false;
};

RestrictionResult restriction(const Cochain& c, const Subgroup& N, const QuotientData& qd);

/// e(G/N') as a normalized 2-cocycle on G/N with values in N/N'.
Cochain kernel_abelianization_class(const FiniteGroup& G, const Subgroup& N,
                                    const QuotientData& qd);

/// (f cup chi)(x, y) = f(chi(x, y)); chi valued in N/N' coordinates.
Cochain cup_f_chi(const KernelHom& f, const Cochain& chi_ab, const QuotientData& qd);

/// d2 f computed by the spectral route (delta of a connection cochain,
/// descended) and by the formula -(f cup e(G/N')); the two must agree up to
/// coboundary or RouteMismatch is thrown. Returns the spectral-route cocycle.
Cochain transgression_d2(const FiniteGroup& G, const Subgroup& N, GModulePtr A,
                         const KernelHom& f, const QuotientData& qd);

/// The five groups and four maps of the low-degree exact sequence
///   H1(G/N; A^N) -> H1(G; A) -> H0(G/N; H1(N; A)) -> H2(G/N; A^N) -> H2(G; A)
/// with exactness asserted at the three interior nodes.
struct FiveTermReport {
    std::vector<std::vector<i64>> factors;  // invariant factors of the five groups
    IntMat inf1, res1, d2, inf2;            // maps on canonical generators
    bool exact_at_2 = false, exact_at_3 = false, exact_at_4 = false;
};

FiveTermReport five_term(const FiniteGroup& G, const Subgroup& N, GModulePtr A,
                         const QuotientData& qd);

}  // namespace cohomforge
