#include "cohomforge/fixtures.hpp"

namespace cohomforge {

namespace {

// maps a generator of the cyclic subgroup N to `scale` times the generator
// of the cyclic coefficient group, extended multiplicatively
KernelHom cyclic_hom(const Subgroup& N, GModulePtr A, i64 scale) {
    FiniteGroup Ngrp = subgroup_group(N);
    int gen = -1;
    for (int k = 1; k < Ngrp.order; ++k)
        if (Ngrp.element_order(k) == Ngrp.order) {
            gen = k;
            break;
        }
    if (gen < 0) throw Error("NotContained", "fixture kernel must be cyclic");
    std::vector<std::vector<i64>> vals(Ngrp.order);
    int cur = 0;
    for (int step = 0; step < Ngrp.order; ++step) {
        vals[cur] = {step * scale};
        cur = Ngrp.mul(cur, gen);
    }
    return kernel_hom_from_values(N, A, std::move(vals));
}

FixtureContext finish(FixtureContext ctx) {
    ctx.qd = quotient(ctx.G, ctx.N);
    return ctx;
}

}  // namespace

FixtureContext make_fixture(const std::string& name) {
    FixtureContext ctx;
    ctx.name = name;
    if (name == "z4") {
        ctx.G = make_standard(StandardKind::Cyclic, 4);
        ctx.N = subgroup_closure(ctx.G, {2});
        ctx.A = trivial_module(ctx.G, AbelianGroupPresentation::cyclic(2));
        ctx.f = cyclic_hom(ctx.N, ctx.A, 1);
        return finish(std::move(ctx));
    }
    if (name == "q8") {
        ctx.G = make_standard(StandardKind::Quaternion8, 8);
        ctx.N = make_subgroup(ctx.G, center(ctx.G));
        ctx.A = trivial_module(ctx.G, AbelianGroupPresentation::cyclic(2));
        ctx.f = cyclic_hom(ctx.N, ctx.A, 1);
        return finish(std::move(ctx));
    }
    if (name == "heisenberg3" || name == "heisenberg3-2id") {
        ctx.G = make_standard(StandardKind::Heisenberg, 3);
        ctx.N = make_subgroup(ctx.G, center(ctx.G));
        ctx.A = trivial_module(ctx.G, AbelianGroupPresentation::cyclic(3));
        ctx.f = cyclic_hom(ctx.N, ctx.A, name == "heisenberg3" ? 1 : 2);
        return finish(std::move(ctx));
    }
    if (name == "s3xz2") {
        FiniteGroup s3 = make_standard(StandardKind::Symmetric, 3);
        FiniteGroup z2 = make_standard(StandardKind::Cyclic, 2);
        ctx.G = direct_product(s3, z2);
        std::vector<int> embedded;
        for (int g = 0; g < 6; ++g) embedded.push_back(2 * g);  // (g, 0)
        ctx.N = make_subgroup(ctx.G, embedded);
        ctx.A = trivial_module(ctx.G, AbelianGroupPresentation::cyclic(2));
        Subgroup a3 = commutator_subgroup(s3, make_subgroup(s3, {0, 1, 2, 3, 4, 5}));
        std::vector<std::vector<i64>> vals;
        for (int g = 0; g < 6; ++g) vals.push_back({a3.contains(g) ? i64{0} : i64{1}});
        ctx.f = kernel_hom_from_values(ctx.N, ctx.A, std::move(vals));  // sign
        return finish(std::move(ctx));
    }
    if (name == "z2z2split") {
        FiniteGroup z2 = make_standard(StandardKind::Cyclic, 2);
        ctx.G = direct_product(z2, z2);
        ctx.N = make_subgroup(ctx.G, {0, 1});  // second factor
        ctx.A = trivial_module(ctx.G, AbelianGroupPresentation::cyclic(2));
        ctx.f = cyclic_hom(ctx.N, ctx.A, 1);
        return finish(std::move(ctx));
    }
    throw Error("NotContained", "unknown fixture: " + name);
}

std::vector<std::string> fixture_names() {
    return {"z4", "q8", "heisenberg3", "heisenberg3-2id", "s3xz2", "z2z2split"};
}

}  // namespace cohomforge
