#include "cohomforge/connection.hpp"

#include <string>

namespace cohomforge {

namespace {

std::vector<i64> sub_vec(std::span<const i64> a, std::span<const i64> b) {
    std::vector<i64> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = chk_sub(a[i], b[i]);
    return r;
}

}  // namespace

ConnectionCochain connection_from_section(const FiniteGroup& G, const Subgroup& N, GModulePtr A,
                                          const KernelHom& f, const QuotientData& qd,
                                          const std::vector<int>* section) {
    const std::vector<int>& s = section ? *section : qd.section;
    if (static_cast<int>(s.size()) != qd.quotient.order || s[0] != 0 ||
        qd.projection[s[0]] != 0)
        throw Error("NotContained", "section must be normalized with one entry per coset");

    ConnectionCochain tau;
    tau.underlying = Cochain::zero(A, 1);
    tau.over = f;
    tau.N = N;
    for (int g = 1; g < G.order; ++g) {
        int iota = s[qd.projection[g]];
        int n = G.mul(g, G.inv(iota));
        if (!N.contains(n)) throw Error("NotContained", "section picked a wrong-coset element");
        std::vector<int> t{g};
        tau.underlying.set_value(tau.underlying.tuple_index(t), f.eval(n));
    }
    if (!is_connection(tau.underlying, f, N))
        throw Error("NotContained", "constructed cochain violates the connection identity");
    return tau;
}

bool is_connection(const Cochain& tau, const KernelHom& f, const Subgroup& N) {
    const FiniteGroup& G = tau.coeff->group;
    const auto& carrier = tau.coeff->carrier;
    if (tau.degree != 1) return false;
    for (int n : N.elements)
        for (int g = 0; g < G.order; ++g) {
            std::vector<int> tn{N.parent.mul(n, g)}, tg{g};
            std::vector<i64> lhs = tau.eval(tn);
            std::vector<i64> rhs = f.eval(n);
            std::vector<i64> tv = tau.eval(tg);
            for (size_t j = 0; j < rhs.size(); ++j) rhs[j] = chk_add(rhs[j], tv[j]);
            if (!carrier.equal(lhs, rhs)) return false;
        }
    return true;
}

Cochain induced_sigma(const ConnectionCochain& tau, const QuotientData& qd) {
    const FiniteGroup& G = tau.underlying.coeff->group;
    const auto& carrier = tau.underlying.coeff->carrier;
    Cochain dtau = coboundary(tau.underlying);

    // delta tau must only depend on the cosets of its arguments
    for (int n : tau.N.elements) {
        if (n == 0) continue;
        for (int g = 0; g < G.order; ++g)
            for (int h = 0; h < G.order; ++h) {
                std::vector<int> base{g, h}, left{G.mul(n, g), h}, right{g, G.mul(n, h)};
                if (!carrier.equal(dtau.eval(base), dtau.eval(left)) ||
                    !carrier.equal(dtau.eval(base), dtau.eval(right)))
                    throw Error("DescentFailure",
                                "delta tau varies on cosets at (n,g,h) = (" + std::to_string(n) +
                                    "," + std::to_string(g) + "," + std::to_string(h) + ")");
            }
    }

    GModulePtr Aq = quotient_module(*tau.underlying.coeff, qd);
    Cochain sigma = Cochain::zero(Aq, 2);
    const FiniteGroup& Q = qd.quotient;
    for (int x = 1; x < Q.order; ++x)
        for (int y = 1; y < Q.order; ++y) {
            std::vector<int> t{qd.section[x], qd.section[y]};
            std::vector<i64> v = dtau.eval(t);
            for (auto& c : v) c = chk_neg(c);
            std::vector<int> q{x, y};
            sigma.set_value(sigma.tuple_index(q), v);
        }
    if (!is_cocycle(sigma)) throw Error("NotCocycle", "descended sigma is not a cocycle");
    return sigma;
}

namespace {

// re-express a quotient cochain valued in A by kernel-view coordinates of the
// pushout extension (kernel element i is the coefficient element of index i)
Cochain to_kernel_view(const Cochain& c, const ExtensionData& ext) {
    const auto& carrier = c.coeff->carrier;
    Cochain out = Cochain::zero(ext.coefficient_view, c.degree);
    for (i64 t = 0; t < c.tuple_count(); ++t) {
        i64 idx = carrier.index_of(c.value_at(t));
        out.set_value(t, ext.kernel_coords[static_cast<int>(idx)]);
    }
    return out;
}

}  // namespace

TheoremReport verify_theorem_1(const FixtureContext& ctx) {
    const FiniteGroup& G = ctx.G;
    const auto& carrier = ctx.A->carrier;
    TheoremReport rep;

    ConnectionCochain tau = connection_from_section(G, ctx.N, ctx.A, ctx.f, ctx.qd);
    rep.sigma = induced_sigma(tau, ctx.qd);

    // (1) sigma(p(g), p(h)) = -delta tau(g, h) for every pair, not only sections
    Cochain dtau = coboundary(tau.underlying);
    for (int g = 0; g < G.order; ++g)
        for (int h = 0; h < G.order; ++h) {
            std::vector<int> q{ctx.qd.projection[g], ctx.qd.projection[h]}, t{g, h};
            std::vector<i64> lhs = rep.sigma.eval(q);
            std::vector<i64> rhs = dtau.eval(t);
            for (auto& v : rhs) v = chk_neg(v);
            if (!carrier.equal(lhs, rhs))
                throw Error("ClauseFailure", "clause 1: sigma disagrees with -delta tau");
        }
    rep.clause1 = true;

    // (2) an independent section shifts sigma by an explicit coboundary
    std::vector<int> alt = ctx.qd.section;
    int n0 = ctx.N.elements.size() > 1 ? ctx.N.elements[1] : 0;
    for (int x = 1; x < ctx.qd.quotient.order; ++x) alt[x] = G.mul(n0, ctx.qd.section[x]);
    ConnectionCochain tau2 = connection_from_section(G, ctx.N, ctx.A, ctx.f, ctx.qd, &alt);
    Cochain sigma2 = induced_sigma(tau2, ctx.qd);

    GModulePtr Aq = rep.sigma.coeff;
    Cochain T = Cochain::zero(Aq, 1);
    for (int x = 1; x < ctx.qd.quotient.order; ++x) {
        std::vector<int> t{ctx.qd.section[x]};
        std::vector<i64> v = sub_vec(tau2.underlying.eval(t), tau.underlying.eval(t));
        std::vector<int> q{x};
        T.set_value(T.tuple_index(q), v);  // T(x) = -(tau - tau')(s(x))
    }
    // T(p(g)) = -(tau - tau')(g) must hold for every g, not only sections
    for (int g = 0; g < G.order; ++g) {
        std::vector<int> q{ctx.qd.projection[g]}, t{g};
        std::vector<i64> lhs = T.eval(q);
        std::vector<i64> rhs = sub_vec(tau2.underlying.eval(t), tau.underlying.eval(t));
        if (!carrier.equal(lhs, rhs))
            throw Error("ClauseFailure", "clause 2: T does not descend from tau' - tau");
    }
    Cochain resid = rep.sigma - sigma2 - coboundary(T);
    if (!resid.is_zero())
        throw Error("ClauseFailure", "clause 2: sigma - sigma' is not delta T");
    rep.clause2 = true;
    rep.witness2 = std::move(T);

    // (3) sigma represents the class of the pushout extension
    ExtensionData push = pushout_extension(G, ctx.N, ctx.A, ctx.f);
    if (push.qd.quotient.table != ctx.qd.quotient.table)
        throw Error("ClauseFailure", "clause 3: pushout quotient mismatch");
    Cochain epush = extension_class(push);
    CohomologousResult c3 = cohomologous(to_kernel_view(rep.sigma, push), epush);
    if (!c3.equivalent)
        throw Error("ClauseFailure", "clause 3: sigma is not the pushout class");
    rep.clause3 = true;
    rep.witness3 = std::move(c3.witness);

    // (4) sigma represents f_* e(G/N')
    Cochain pf = pushforward_class(G, ctx.N, ctx.A, ctx.f);
    CohomologousResult c4 = cohomologous(rep.sigma, pf);
    if (!c4.equivalent)
        throw Error("ClauseFailure", "clause 4: sigma is not the pushforward class");
    rep.clause4 = true;
    rep.witness4 = std::move(c4.witness);

    return rep;
}

}  // namespace cohomforge
