#include "cohomforge/extensions.hpp"

#include <string>

namespace cohomforge {

namespace {

// position of a total-group element inside the embedded kernel, -1 outside
std::vector<int> embed_index(const ExtensionData& ext) {
    std::vector<int> idx(ext.qd.parent.order, -1);
    for (int k = 0; k < ext.kernel.order; ++k) idx[ext.embed[k]] = k;
    return idx;
}

void check_section(const ExtensionData& ext, const std::vector<int>& section) {
    const FiniteGroup& Q = ext.qd.quotient;
    if (static_cast<int>(section.size()) != Q.order)
        throw Error("NotContained", "section length must equal the quotient order");
    if (section[0] != 0) throw Error("NotContained", "section must be normalized: s(1) = 1");
    for (int x = 0; x < Q.order; ++x)
        if (ext.qd.projection[section[x]] != x)
            throw Error("NotContained", "section picks an element of the wrong coset");
}

}  // namespace

ExtensionData make_extension(const FiniteGroup& total, const std::vector<int>& kernel_elems) {
    ExtensionData ext;
    Subgroup N = make_subgroup(total, kernel_elems);
    ext.qd = quotient(total, N);  // throws NotNormal
    ext.kernel = subgroup_group(N);
    ext.embed = N.elements;

    if (ext.kernel.is_abelian()) {
        AbelianizedKernel ab = abelianization_module(total, N);
        ext.coefficient_view = abelianization_as_quotient_module(ab, ext.qd);
        ext.kernel_coords.reserve(ext.kernel.order);
        for (int k = 0; k < ext.kernel.order; ++k)
            ext.kernel_coords.push_back(ab.coords_of(ext.embed[k]));

        // conjugation inside the total group must realize the module action
        const auto& pres = ext.coefficient_view->carrier;
        for (int e = 0; e < total.order; ++e)
            for (int k = 0; k < ext.kernel.order; ++k) {
                int c = total.conj(e, ext.embed[k]);
                if (!N.contains(c)) throw Error("NotNormal", "kernel is not closed under conjugation");
                int kc = 0;
                while (ext.embed[kc] != c) ++kc;
                auto acted =
                    ext.coefficient_view->act(ext.qd.projection[e], ext.kernel_coords[k]);
                if (!pres.equal(acted, ext.kernel_coords[kc]))
                    throw Error("NotContained",
                                "conjugation disagrees with the coefficient action");
            }
    }
    return ext;
}

Cochain extension_class(const ExtensionData& ext) { return extension_class(ext, ext.qd.section); }

Cochain extension_class(const ExtensionData& ext, const std::vector<int>& section) {
    if (!ext.coefficient_view)
        throw Error("KernelNotAbelian", "extension class needs an abelian kernel");
    check_section(ext, section);
    const FiniteGroup& E = ext.qd.parent;
    const FiniteGroup& Q = ext.qd.quotient;
    std::vector<int> kidx = embed_index(ext);

    Cochain chi = Cochain::zero(ext.coefficient_view, 2);
    for (int x = 1; x < Q.order; ++x)
        for (int y = 1; y < Q.order; ++y) {
            int e = E.mul(E.mul(section[x], section[y]), E.inv(section[Q.mul(x, y)]));
            if (kidx[e] < 0) throw Error("NotContained", "section defect left the kernel");
            std::vector<int> t{x, y};
            chi.set_value(chi.tuple_index(t), ext.kernel_coords[kidx[e]]);
        }
    if (!is_cocycle(chi)) throw Error("NotCocycle", "section defect failed the cocycle identity");
    return chi;
}

ExtensionData extension_from_cocycle(const FiniteGroup& Q, GModulePtr A, const Cochain& sigma,
                                     int order_bound) {
    if (sigma.degree != 2 || sigma.coeff->group.table != Q.table)
        throw Error("NotCocycle", "need a degree-2 cochain on the quotient group");
    if (!is_cocycle(sigma)) throw Error("NotCocycle", "sigma fails the cocycle identity");
    auto count_opt = A->carrier.element_count();
    if (!count_opt) throw Error("InfiniteCoefficients", "coefficient group must be finite");
    const i64 count = *count_opt;
    if (chk_mul(Q.order, count) > order_bound)
        throw Error("OrderBoundExceeded",
                    "total order " + std::to_string(Q.order * count) + " exceeds the bound");

    const int n = static_cast<int>(Q.order * count);
    auto pair_index = [&](int q, std::span<const i64> a) {
        return q * static_cast<int>(count) + static_cast<int>(A->carrier.index_of(a));
    };
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int q1 = 0; q1 < Q.order; ++q1)
        for (i64 i1 = 0; i1 < count; ++i1) {
            auto a1 = A->carrier.element_by_index(i1);
            for (int q2 = 0; q2 < Q.order; ++q2)
                for (i64 i2 = 0; i2 < count; ++i2) {
                    auto a2 = A->carrier.element_by_index(i2);
                    std::vector<i64> v = A->act(q1, a2);
                    for (int j = 0; j < A->carrier.gens; ++j) v[j] = chk_add(v[j], a1[j]);
                    std::vector<int> t{q1, q2};
                    auto s = sigma.eval(t);
                    for (int j = 0; j < A->carrier.gens; ++j) v[j] = chk_add(v[j], s[j]);
                    table[pair_index(q1, a1)][pair_index(q2, a2)] =
                        pair_index(Q.mul(q1, q2), v);
                }
        }
    FiniteGroup total = make_group(table);

    std::vector<int> kernel_elems(count);
    for (i64 i = 0; i < count; ++i) kernel_elems[i] = static_cast<int>(i);
    ExtensionData ext = make_extension(total, kernel_elems);

    // the canonical section q -> (q, 0) recovers sigma on the nose
    for (int x = 1; x < Q.order; ++x)
        for (int y = 1; y < Q.order; ++y) {
            int e = total.mul(total.mul(ext.qd.section[x], ext.qd.section[y]),
                              total.inv(ext.qd.section[Q.mul(x, y)]));
            if (e >= count) throw Error("NotCocycle", "section defect left the kernel");
            std::vector<int> t{x, y};
            if (!A->carrier.equal(A->carrier.element_by_index(e), sigma.eval(t)))
                throw Error("NotCocycle", "reconstructed extension does not round-trip");
        }
    return ext;
}

namespace {

struct PushoutChecks {
    QuotientData qd;
    i64 count = 0;
};

PushoutChecks pushout_preconditions(const FiniteGroup& G, const Subgroup& N, const GModulePtr& A,
                                    const KernelHom& f) {
    if (!is_normal(G, N)) throw Error("NotNormal", "pushout needs a normal kernel");
    if (!A->trivial_on(N.elements))
        throw Error("TrivialityViolation", "kernel must act trivially on the coefficients");
    for (int g = 0; g < G.order; ++g)
        for (int n : N.elements) {
            if (!A->carrier.equal(f.eval(G.conj(g, n)), A->act(g, f.eval(n))))
                throw Error("NotEquivariant", "f(gng^-1) != g.f(n) at g=" + std::to_string(g) +
                                                  ", n=" + std::to_string(n));
        }
    PushoutChecks out;
    out.qd = quotient(G, N);
    auto count_opt = A->carrier.element_count();
    if (!count_opt) throw Error("InfiniteCoefficients", "coefficient group must be finite");
    out.count = *count_opt;
    return out;
}

}  // namespace

ExtensionData pushout_extension(const FiniteGroup& G, const Subgroup& N, GModulePtr A,
                                const KernelHom& f, int order_bound) {
    PushoutChecks pc = pushout_preconditions(G, N, A, f);
    const QuotientData& qd = pc.qd;
    const i64 count = pc.count;
    const int Qn = qd.quotient.order;
    if (chk_mul(Qn, count) > order_bound)
        throw Error("OrderBoundExceeded",
                    "pushout order " + std::to_string(Qn * count) + " exceeds the bound");

    // class of (g, a): slide g to the minimal coset representative, paying f(n)
    auto class_index = [&](int g, std::span<const i64> a) {
        int x = qd.projection[g];
        int n = G.mul(g, G.inv(qd.section[x]));  // g = n * s(x)
        std::vector<i64> v = f.eval(n);
        for (size_t j = 0; j < v.size(); ++j) v[j] = chk_add(v[j], a[j]);
        return x * static_cast<int>(count) + static_cast<int>(A->carrier.index_of(v));
    };

    const int n = Qn * static_cast<int>(count);
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int x = 0; x < Qn; ++x)
        for (i64 i = 0; i < count; ++i) {
            auto a = A->carrier.element_by_index(i);
            int g = qd.section[x];
            for (int y = 0; y < Qn; ++y)
                for (i64 k = 0; k < count; ++k) {
                    auto b = A->carrier.element_by_index(k);
                    std::vector<i64> v = A->act(g, b);
                    for (size_t j = 0; j < v.size(); ++j) v[j] = chk_add(v[j], a[j]);
                    table[x * count + i][y * count + k] = class_index(G.mul(g, qd.section[y]), v);
                }
        }

    // the product must not depend on which (ng, a - f(n)) represented a class
    for (int x = 0; x < Qn; ++x)
        for (i64 i = 0; i < count; ++i) {
            auto a = A->carrier.element_by_index(i);
            int g = qd.section[x];
            for (int nn : N.elements) {
                std::vector<i64> a2 = f.eval(nn);
                for (size_t j = 0; j < a2.size(); ++j) a2[j] = chk_sub(a[j], a2[j]);
                for (int y = 0; y < Qn; ++y)
                    for (i64 k = 0; k < count; ++k) {
                        auto b = A->carrier.element_by_index(k);
                        int gn = G.mul(nn, g);
                        std::vector<i64> v = A->act(gn, b);
                        for (size_t j = 0; j < v.size(); ++j) v[j] = chk_add(v[j], a2[j]);
                        int lhs = class_index(G.mul(gn, qd.section[y]), v);
                        if (lhs != table[x * count + i][y * count + k])
                            throw Error("NotEquivariant",
                                        "pushout product is not well defined");
                    }
            }
        }

    FiniteGroup total = make_group(table);
    std::vector<int> kernel_elems(count);
    for (i64 i = 0; i < count; ++i) kernel_elems[i] = static_cast<int>(i);
    ExtensionData ext = make_extension(total, kernel_elems);

    // with a trivial quotient action the image of A must be central
    bool trivial_everywhere = true;
    for (int g = 0; g < G.order && trivial_everywhere; ++g)
        if (!A->trivial_on({g})) trivial_everywhere = false;
    if (trivial_everywhere) {
        for (int e = 0; e < total.order; ++e)
            for (int k : kernel_elems)
                if (total.mul(e, k) != total.mul(k, e))
                    throw Error("NotContained", "pushout kernel failed to be central");
    }
    return ext;
}

Cochain pushforward_class(const FiniteGroup& G, const Subgroup& N, GModulePtr A,
                          const KernelHom& f) {
    PushoutChecks pc = pushout_preconditions(G, N, A, f);
    const QuotientData& qd = pc.qd;
    GModulePtr Aq = quotient_module(*A, qd);
    const FiniteGroup& Q = qd.quotient;

    Cochain c = Cochain::zero(Aq, 2);
    for (int x = 1; x < Q.order; ++x)
        for (int y = 1; y < Q.order; ++y) {
            int e = G.mul(G.mul(qd.section[x], qd.section[y]), G.inv(qd.section[Q.mul(x, y)]));
            if (!N.contains(e)) throw Error("NotContained", "section defect left the kernel");
            std::vector<int> t{x, y};
            c.set_value(c.tuple_index(t), f.eval(e));
        }
    if (!is_cocycle(c)) throw Error("NotCocycle", "pushforward failed the cocycle identity");
    return c;
}

}  // namespace cohomforge
