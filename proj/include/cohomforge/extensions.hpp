#pragma once

#include "cohomforge/cochains.hpp"

namespace cohomforge {

/// Short exact sequence 1 -> N -> E -> Q -> 1. The kernel keeps its own
/// multiplication table; embed maps its elements into the total group.
/// When the kernel is abelian, coefficient_view presents it as a module
/// over the quotient (conjugation through the section) so extension
/// classes can take values in it.
struct ExtensionData {
    FiniteGroup kernel;
    std::vector<int> embed;  // kernel element -> total element
    QuotientData qd;         // total over the embedded kernel
    GModulePtr coefficient_view;                  // null when kernel nonabelian
    std::vector<std::vector<i64>> kernel_coords;  // per kernel element, view coords
};

/// Wraps a total group and a normal subgroup as an extension.
ExtensionData make_extension(const FiniteGroup& total, const std::vector<int>& kernel_elems);

/// chi(x, y) = s(x) s(y) s(xy)^-1 in coefficient_view coordinates, using the
/// stored minimal-representative section. Throws KernelNotAbelian.
Cochain extension_class(const ExtensionData& ext);

/// Same cocycle from a caller-chosen normalized section (section[0] must be
/// the identity, one representative per coset).
Cochain extension_class(const ExtensionData& ext, const std::vector<int>& section);

/// Central-style reconstruction: total group on pairs (q, a) with
/// (q1,a1)(q2,a2) = (q1 q2, a1 + q1.a2 + sigma(q1,q2)). A is a module over Q.
ExtensionData extension_from_cocycle(const FiniteGroup& Q, GModulePtr A, const Cochain& sigma,
                                     int order_bound = kDefaultOrderBound);

/// G_A = (G x A) / ((ng, a) ~ (g, f(n)+a)) as an extension of G/N by A.
/// Requires N normal, N acting trivially on A, and f equivariant.
ExtensionData pushout_extension(const FiniteGroup& G, const Subgroup& N, GModulePtr A,
                                const KernelHom& f, int order_bound = kDefaultOrderBound);

/// f_* e(G/N'): the quotient's extension cocycle chi pushed into A by f.
/// Degree-2 cochain on G/N with coefficients A viewed over the quotient.
Cochain pushforward_class(const FiniteGroup& G, const Subgroup& N, GModulePtr A,
                          const KernelHom& f);

}  // namespace cohomforge
