#pragma once

#include <string>

#include "cohomforge/modules.hpp"

namespace cohomforge {

/// A bundled verification context: group, normal subgroup, coefficients with
/// trivial kernel action, and an equivariant homomorphism f : N -> A.
struct FixtureContext {
    std::string name;
    FiniteGroup G;
    Subgroup N;
    GModulePtr A;
    KernelHom f;
    QuotientData qd;
};

/// Named contexts: z4, q8, heisenberg3, heisenberg3-2id, s3xz2, z2z2split.
FixtureContext make_fixture(const std::string& name);

std::vector<std::string> fixture_names();

}  // namespace cohomforge
