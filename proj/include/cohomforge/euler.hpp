#pragma once

#include <vector>

#include "cohomforge/intmat.hpp"

namespace cohomforge {

/// Lift of an orientation-preserving circle diffeomorphism to the line:
/// h(x) = x + rotation + sum_k (c_k cos kx + s_k sin kx). The finite Fourier
/// form gives h(x + 2 pi) = h(x) + 2 pi by construction, so strict
/// monotonicity is the only runtime check.
struct FourierTerm {
    int k = 1;
    double c = 0.0;
    double s = 0.0;
};

struct CircleDiffeoLift {
    double rotation = 0.0;
    std::vector<FourierTerm> fourier;

    double operator()(double x) const;
    double derivative(double x) const;
};

/// Checks h' > margin on a uniform grid; throws NonMonotoneLift.
void validate_lift(const CircleDiffeoLift& h, int grid = 4096, double margin = 1e-6);

/// chi(h1, h2) = (1 / 4 pi^2) * integral over [0, 2 pi] of
/// h1(h2(x)) - h1(x) - h2(x), by composite trapezoid with `nodes` intervals.
/// Pairs of pure rotations give exactly -1/2.
double euler_cocycle(const CircleDiffeoLift& h1, const CircleDiffeoLift& h2, int nodes = 2048);

/// |delta chi(h1, h2, h3)|; compositions are evaluated pointwise, so the
/// result is a pure quadrature-error probe and should be near zero.
double cocycle_defect(const CircleDiffeoLift& h1, const CircleDiffeoLift& h2,
                      const CircleDiffeoLift& h3, int nodes = 2048);

}  // namespace cohomforge
