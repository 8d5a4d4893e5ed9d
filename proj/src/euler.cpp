#include "cohomforge/euler.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace cohomforge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// deterministic tree reduction: summation order is independent of how the
// values were produced, so repeated runs agree bit-for-bit
double pairwise_sum(std::vector<double>& v) {
    for (size_t width = 1; width < v.size(); width *= 2)
        for (size_t i = 0; i + width < v.size(); i += 2 * width) v[i] += v[i + width];
    return v.empty() ? 0.0 : v[0];
}

using RealMap = std::function<double(double)>;

// trapezoid over [0, 2 pi]; the integrand is (linear) + (smooth periodic),
// exact on the linear part and spectrally accurate on the rest
double chi_integral(const RealMap& f1, const RealMap& f2, int nodes) {
    const double step = kTwoPi / nodes;
    std::vector<double> terms(static_cast<size_t>(nodes) + 1);
    for (int i = 0; i <= nodes; ++i) {
        const double x = step * i;
        double v = f1(f2(x)) - f1(x) - f2(x);
        if (i == 0 || i == nodes) v *= 0.5;
        terms[static_cast<size_t>(i)] = v;
    }
    return pairwise_sum(terms) * step / (kTwoPi * kTwoPi);
}

}  // namespace

double CircleDiffeoLift::operator()(double x) const {
    double y = x + rotation;
    for (const FourierTerm& t : fourier)
        y += t.c * std::cos(t.k * x) + t.s * std::sin(t.k * x);
    return y;
}

double CircleDiffeoLift::derivative(double x) const {
    double y = 1.0;
    for (const FourierTerm& t : fourier)
        y += t.k * (t.s * std::cos(t.k * x) - t.c * std::sin(t.k * x));
    return y;
}

void validate_lift(const CircleDiffeoLift& h, int grid, double margin) {
    for (const FourierTerm& t : h.fourier)
        if (t.k < 1)
            throw Error("NonMonotoneLift", "frequency " + std::to_string(t.k) + " below 1");
    const double step = kTwoPi / grid;
    for (int i = 0; i < grid; ++i) {
        const double x = step * i;
        const double d = h.derivative(x);
        if (!(d > margin))
            throw Error("NonMonotoneLift",
                        "derivative " + std::to_string(d) + " at x = " + std::to_string(x));
    }
}

double euler_cocycle(const CircleDiffeoLift& h1, const CircleDiffeoLift& h2, int nodes) {
    validate_lift(h1);
    validate_lift(h2);
    return chi_integral(std::cref(h1), std::cref(h2), nodes);
}

double cocycle_defect(const CircleDiffeoLift& h1, const CircleDiffeoLift& h2,
                      const CircleDiffeoLift& h3, int nodes) {
    validate_lift(h1);
    validate_lift(h2);
    validate_lift(h3);
    RealMap f1 = std::cref(h1), f2 = std::cref(h2), f3 = std::cref(h3);
    RealMap f12 = [&](double x) { return h1(h2(x)); };
    RealMap f23 = [&](double x) { return h2(h3(x)); };
    const double d = chi_integral(f2, f3, nodes) - chi_integral(f12, f3, nodes) +
                     chi_integral(f1, f23, nodes) - chi_integral(f1, f2, nodes);
    return std::fabs(d);
}

}  // namespace cohomforge
