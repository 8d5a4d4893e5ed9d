#pragma once

#include "cohomforge/extensions.hpp"
#include "cohomforge/fixtures.hpp"

namespace cohomforge {

/// Degree-1 cochain tau on G with tau(ng) = f(n) + tau(g) for n in N.
struct ConnectionCochain {
    Cochain underlying;  // on G in A
    KernelHom over;      // f
    Subgroup N;
};

/// tau_s(g) = f(g * iota(g)^-1), iota = s o p. Pass a custom normalized
/// section to override the stored minimal-representative one.
ConnectionCochain connection_from_section(const FiniteGroup& G, const Subgroup& N, GModulePtr A,
                                          const KernelHom& f, const QuotientData& qd,
                                          const std::vector<int>* section = nullptr);

bool is_connection(const Cochain& tau, const KernelHom& f, const Subgroup& N);

/// sigma(x, y) = -delta tau(s(x), s(y)) on the quotient, after checking that
/// delta tau descends. Throws DescentFailure with a witness triple.
Cochain induced_sigma(const ConnectionCochain& tau, const QuotientData& qd);

/// Per-clause verification artifacts; verify_theorem_1 throws ClauseFailure
/// instead of returning a report with a false entry.
struct TheoremReport {
    bool clause1 = false, clause2 = false, clause3 = false, clause4 = false;
    Cochain sigma;                    // from the minimal section
    Cochain witness2;                 // T with sigma - sigma' = delta T
    std::optional<Cochain> witness3;  // coboundary witness against the pushout class
    std::optional<Cochain> witness4;  // coboundary witness against f_* e(G/N')
};

TheoremReport verify_theorem_1(const FixtureContext& ctx);

}  // namespace cohomforge
