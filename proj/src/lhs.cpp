#include "cohomforge/lhs.hpp"

#include <string>

namespace cohomforge {

namespace {

i64 pow_i64(i64 base, int exp) {
    i64 r = 1;
    for (int i = 0; i < exp; ++i) r = chk_mul(r, base);
    return r;
}

// does C_{p'} force this tuple's value to vanish? level p' means: zero
// whenever at least n - p' + 1 arguments (any positions) lie in N
bool constrained(std::span<const int> tuple, const Subgroup& N, int pprime) {
    const int n = static_cast<int>(tuple.size());
    const int threshold = n - pprime + 1;
    if (threshold > n) return false;  // more members than arguments
    if (threshold <= 0) return true;  // C_{p'}^{n} = 0 past the degree
    int in_n = 0;
    for (int g : tuple)
        if (N.contains(g)) ++in_n;
    return in_n >= threshold;
}

// rows forcing the cochain value at `tidx` to vanish modulo relations
void add_value_rows(CongruenceSolver& solver, const GModule& A, i64 tidx) {
    const int m = A.carrier.gens;
    for (int r = 0; r < m; ++r) {
        if (A.carrier.moduli[r] == 1) continue;
        SparseRow row;
        for (int j = 0; j < m; ++j)
            if (A.carrier.U.at(r, j) != 0)
                row.entries.emplace_back(static_cast<int>(tidx * m + j), A.carrier.U.at(r, j));
        if (!row.entries.empty()) solver.add(row, A.carrier.moduli[r]);
    }
}

// rows forcing (delta c) to vanish at the given target tuple
void add_delta_rows(CongruenceSolver& solver, const GModule& A, std::span<const int> tuple) {
    const int m = A.carrier.gens;
    std::vector<std::pair<i64, IntMat>> blocks;
    for (const DeltaTerm& t : delta_terms(A.group, tuple)) {
        IntMat M = t.act != 0 ? A.action[t.act] : IntMat::identity(m);
        if (t.sign < 0)
            for (auto& v : M.a) v = chk_neg(v);
        bool merged = false;
        for (auto& [src, acc] : blocks)
            if (src == t.src) {
                for (size_t i = 0; i < acc.a.size(); ++i) acc.a[i] = chk_add(acc.a[i], M.a[i]);
                merged = true;
                break;
            }
        if (!merged) blocks.emplace_back(t.src, std::move(M));
    }
    for (auto& [src, acc] : blocks) acc = mat_mul(A.carrier.U, acc);
    for (int r = 0; r < m; ++r) {
        if (A.carrier.moduli[r] == 1) continue;
        SparseRow row;
        for (auto& [src, acc] : blocks)
            for (int j = 0; j < m; ++j)
                if (acc.at(r, j) != 0)
                    row.entries.emplace_back(static_cast<int>(src * m + j), acc.at(r, j));
        if (!row.entries.empty()) solver.add(row, A.carrier.moduli[r]);
    }
}

Cochain column_as_cochain(GModulePtr A, int degree, const IntMat& cols, int j) {
    Cochain c = Cochain::zero(A, degree);
    for (size_t i = 0; i < c.values.size(); ++i) c.values[i] = cols.at(static_cast<int>(i), j);
    return c;
}

int kernel_label(const std::vector<int>& index_in_N, int parent) {
    int k = index_in_N[parent];
    if (k < 0) throw Error("NotContained", "element outside the kernel subgroup");
    return k;
}

}  // namespace

bool filtration_membership(const Cochain& c, const Subgroup& N, int p) {
    if (p <= 0) return true;
    if (c.degree < p) return c.is_zero();
    const i64 T = c.tuple_count();
    for (i64 t = 0; t < T; ++t) {
        std::vector<int> tuple = c.tuple_at(t);
        if (!constrained(tuple, N, p)) continue;
        if (!c.coeff->carrier.is_zero(c.value_at(t))) return false;
    }
    return true;
}

IntMat z_group(const Subgroup& N, GModulePtr A, int r, int p, int q) {
    const FiniteGroup& G = A->group;
    const int m = A->carrier.gens;
    const int n = p + q;
    if (n < 0) return IntMat(0, 0);
    const i64 Tn = pow_i64(G.order - 1, n);
    if (q < 0) return IntMat(static_cast<int>(Tn * m), 0);  // C_p^n = 0 here

    CongruenceSolver solver(static_cast<int>(Tn * m), A->carrier.exponent());
    if (G.order > 1) {
        if (p >= 1) {
            std::vector<int> tuple(n, 1);
            i64 tidx = 0;
            do {
                if (constrained(tuple, N, p)) add_value_rows(solver, *A, tidx);
                ++tidx;
            } while (next_tuple(tuple, G.order));
        }
        if (p + r >= 1 && r >= 1) {  // r = 0 adds only redundant rows
            std::vector<int> target(n + 1, 1);
            do {
                if (constrained(target, N, p + r)) add_delta_rows(solver, *A, target);
            } while (next_tuple(target, G.order));
        }
    }
    return solver.basis();
}

SpectralPage spectral_page(const Subgroup& N, GModulePtr A, int r, int p, int q) {
    if (p + q + 1 > max_degree())
        throw Error("DegreeBoundExceeded", "page total degree needs delta headroom");
    if (r < 1) throw Error("DegreeBoundExceeded", "page index must be at least 1");
    const int n = p + q;
    const i64 Tn = pow_i64(A->group.order - 1, n);
    const int m = A->carrier.gens;

    IntMat Z = z_group(N, A, r, p, q);
    IntMat B = z_group(N, A, r - 1, p + 1, q - 1);
    if (n >= 1) {
        IntMat low = z_group(N, A, r - 1, p - r + 1, q + r - 2);
        IntMat db(static_cast<int>(Tn * m), low.cols);
        for (int j = 0; j < low.cols; ++j) {
            Cochain c = column_as_cochain(A, n - 1, low, j);
            Cochain d = coboundary(c);
            db.set_col(j, d.values);
        }
        B = hstack(B, db);
    }

    SpectralPage page;
    page.r = r;
    page.p = p;
    page.q = q;
    page.sq = subquotient(Z, B, AbelianGroupPresentation::power(A->carrier, Tn));
    for (int j = 0; j < page.sq.group.gens; ++j)
        page.reps.push_back(column_as_cochain(A, n, page.sq.lift, j));
    return page;
}

SpectralPage e_infinity(const Subgroup& N, GModulePtr A, int p, int q) {
    return spectral_page(N, A, p + q + 2, p, q);
}

IntMat differential(const Subgroup& N, GModulePtr A, const SpectralPage& src,
                    const SpectralPage& dst) {
    if (dst.r != src.r || dst.p != src.p + src.r || dst.q != src.q - src.r + 1)
        throw Error("NotContained", "pages are not connected by d_r");

    // denominator generators must die in the target
    IntMat B = z_group(N, A, src.r - 1, src.p + 1, src.q - 1);
    for (int j = 0; j < B.cols; ++j) {
        Cochain d = coboundary(column_as_cochain(A, src.p + src.q, B, j));
        if (!dst.sq.group.is_zero(dst.sq.reduce(d.values)))
            throw Error("NotContained", "d_r is not well defined on the source page");
    }

    IntMat M(dst.sq.group.gens, src.sq.group.gens);
    for (int j = 0; j < src.sq.group.gens; ++j) {
        Cochain d = coboundary(src.reps[j]);
        M.set_col(j, dst.sq.reduce(d.values));
    }
    return M;
}

KernelCohomology kernel_cohomology(const Subgroup& N, GModulePtr A, const QuotientData& qd,
                                   int q) {
    KernelCohomology out;
    FiniteGroup Ngrp = subgroup_group(N);
    out.index_in_N.assign(N.parent.order, -1);
    for (int k = 0; k < Ngrp.order; ++k) out.index_in_N[N.elements[k]] = k;
    GModulePtr AN = restrict_module(*A, N, Ngrp);
    out.over_n = cohomology(AN, q);

    const FiniteGroup& G = N.parent;
    const FiniteGroup& Q = qd.quotient;
    const int t = out.over_n.sq.group.gens;
    std::vector<IntMat> act;
    act.reserve(Q.order);
    for (int x = 0; x < Q.order; ++x) {
        int g = qd.section[x];
        IntMat M(t, t);
        for (int j = 0; j < t; ++j) {
            const Cochain& rep = out.over_n.reps[j];
            Cochain moved = Cochain::zero(AN, q);
            const i64 T = moved.tuple_count();
            for (i64 ti = 0; ti < T; ++ti) {
                std::vector<int> tuple = moved.tuple_at(ti);
                for (int& a : tuple)
                    a = kernel_label(out.index_in_N, G.conj(G.inv(g), N.elements[a]));
                moved.set_value(ti, A->act(g, rep.eval(tuple)));
            }
            M.set_col(j, out.over_n.class_of(moved));
        }
        act.push_back(std::move(M));
    }
    out.as_quotient_module = make_module(Q, out.over_n.sq.group, std::move(act));
    return out;
}

ShuffleImage shuffle_compare(const Cochain& c, const Subgroup& N, const QuotientData& qd, int p) {
    if (!filtration_membership(c, N, p))
        throw Error("NotInFiltration", "cochain is outside the requested level");
    ShuffleImage out;
    out.p = p;
    out.q = c.degree - p;
    FiniteGroup Ngrp = subgroup_group(N);
    out.restricted = restrict_module(*c.coeff, N, Ngrp);

    const FiniteGroup& Q = qd.quotient;
    const i64 Tp = pow_i64(Q.order - 1, p);
    for (i64 b = 0; b < Tp; ++b) {
        // decode the quotient p-tuple
        std::vector<int> beta(p);
        i64 rem = b;
        for (int i = p - 1; i >= 0; --i) {
            beta[i] = static_cast<int>(rem % (Q.order - 1)) + 1;
            rem /= (Q.order - 1);
        }
        Cochain val = Cochain::zero(out.restricted, out.q);
        const i64 Tq = val.tuple_count();
        for (i64 a = 0; a < Tq; ++a) {
            std::vector<int> alpha = val.tuple_at(a);
            std::vector<int> args;
            args.reserve(c.degree);
            for (int x : alpha) args.push_back(N.elements[x]);
            for (int x : beta) args.push_back(qd.section[x]);
            val.set_value(a, c.eval(args));
        }
        out.values.push_back(std::move(val));
    }
    return out;
}

Cochain inflation(const Cochain& c, const QuotientData& qd, GModulePtr A) {
    if (c.coeff->group.table != qd.quotient.table)
        throw Error("NotContained", "cochain must live on the quotient group");
    if (c.coeff->carrier.gens != A->carrier.gens)
        throw Error("NotContained", "coefficient carriers disagree");
    if (!is_cocycle(c)) throw Error("NotCocycle", "inflation requires a cocycle");

    Cochain out = Cochain::zero(A, c.degree);
    const i64 T = out.tuple_count();
    for (i64 t = 0; t < T; ++t) {
        std::vector<int> tuple = out.tuple_at(t);
        for (int& g : tuple) g = qd.projection[g];
        out.set_value(t, c.eval(tuple));
    }
    if (!is_cocycle(out)) throw Error("NotCocycle", "inflated cochain lost the cocycle identity");
    return out;
}

RestrictionResult restriction(const Cochain& c, const Subgroup& N, const QuotientData& qd) {
    if (!is_cocycle(c)) throw Error("NotCocycle", "restriction requires a cocycle");
    const int q = c.degree;
    KernelCohomology kc = kernel_cohomology(N, c.coeff, qd, q);
    GModulePtr AN = kc.over_n.coeff;

    Cochain cr = Cochain::zero(AN, q);
    const i64 T = cr.tuple_count();
    for (i64 t = 0; t < T; ++t) {
        std::vector<int> tuple = cr.tuple_at(t);
        std::vector<int> args;
        args.reserve(q);
        for (int x : tuple) args.push_back(N.elements[x]);
        cr.set_value(t, c.eval(args));
    }

    RestrictionResult out;
    out.class_coords = kc.over_n.class_of(cr);
    out.invariant = true;
    for (int x = 0; x < qd.quotient.order && out.invariant; ++x) {
        auto moved = kc.as_quotient_module->act(x, out.class_coords);
        if (!kc.over_n.sq.group.equal(moved, out.class_coords)) out.invariant = false;
    }
    out.target = std::move(kc.over_n);
    return out;
}

Cochain kernel_abelianization_class(const FiniteGroup& G, const Subgroup& N,
                                    const QuotientData& qd) {
    AbelianizedKernel ab = abelianization_module(G, N);
    GModulePtr coeff = abelianization_as_quotient_module(ab, qd);
    const FiniteGroup& Q = qd.quotient;

    Cochain chi = Cochain::zero(coeff, 2);
    for (int x = 1; x < Q.order; ++x)
        for (int y = 1; y < Q.order; ++y) {
            int e = G.mul(G.mul(qd.section[x], qd.section[y]), G.inv(qd.section[Q.mul(x, y)]));
            if (!N.contains(e)) throw Error("NotContained", "section defect left the kernel");
            std::vector<int> t{x, y};
            chi.set_value(chi.tuple_index(t), ab.coords_of(e));
        }
    if (!is_cocycle(chi)) throw Error("NotCocycle", "abelianized class failed the cocycle test");
    return chi;
}

Cochain cup_f_chi(const KernelHom& f, const Cochain& chi_ab, const QuotientData& qd) {
    GModulePtr coeff = quotient_module(*f.target, qd);
    Cochain out = Cochain::zero(coeff, chi_ab.degree);
    const i64 T = chi_ab.tuple_count();
    for (i64 t = 0; t < T; ++t) out.set_value(t, f.apply_chain(chi_ab.value_at(t)));
    return out;
}

Cochain transgression_d2(const FiniteGroup& G, const Subgroup& N, GModulePtr A,
                         const KernelHom& f, const QuotientData& qd) {
    // spectral route: a connection cochain lifts f; its coboundary descends
    ConnectionCochain tau = connection_from_section(G, N, A, f, qd);
    Cochain route_a = induced_sigma(tau, qd).negated();  // [delta tau] on the quotient

    // formula route: -(f cup e(G/N'))
    Cochain chi = kernel_abelianization_class(G, N, qd);
    Cochain route_b = cup_f_chi(f, chi, qd).negated();

    if (!cohomologous(route_a, route_b).equivalent)
        throw Error("RouteMismatch", "spectral and cup-product transgressions disagree");
    return route_a;
}

namespace {

// kernel of the group map M : S -> T as a lattice in S's generator coordinates
IntMat hom_kernel_lattice(const IntMat& M, const std::vector<i64>& source_moduli,
                          const std::vector<i64>& target_moduli) {
    const int s = M.cols;
    CongruenceSolver solver(s);
    for (int r = 0; r < M.rows; ++r) {
        SparseRow row;
        for (int j = 0; j < s; ++j)
            if (M.at(r, j) != 0) row.entries.emplace_back(j, M.at(r, j));
        if (!row.entries.empty()) solver.add(row, target_moduli[r]);
    }
    IntMat K = solver.basis();
    IntMat D(s, s);
    for (int i = 0; i < s; ++i) D.at(i, i) = source_moduli[i];
    return hstack(K, D);
}

IntMat image_lattice(const IntMat& M, const std::vector<i64>& target_moduli) {
    IntMat D(M.rows, M.rows);
    for (int i = 0; i < M.rows; ++i) D.at(i, i) = target_moduli[i];
    return hstack(M, D);
}

}  // namespace

FiveTermReport five_term(const FiniteGroup& G, const Subgroup& N, GModulePtr A,
                         const QuotientData& qd) {
    InvariantModule inv = invariant_module(*A, N.elements, qd.quotient, qd.section);
    GModulePtr Aq = quotient_module(*A, qd);

    CohomologyResult h1q = cohomology(inv.mod, 1);
    CohomologyResult h1g = cohomology(A, 1);
    KernelCohomology kc = kernel_cohomology(N, A, qd, 1);
    CohomologyResult h0q = cohomology(kc.as_quotient_module, 0);
    CohomologyResult h2q = cohomology(inv.mod, 2);
    CohomologyResult h2g = cohomology(A, 2);

    FiveTermReport rep;
    rep.factors = {h1q.invariant_factors(), h1g.invariant_factors(), h0q.invariant_factors(),
                   h2q.invariant_factors(), h2g.invariant_factors()};

    auto lift_to_quotient_cochain = [&](const Cochain& c) {
        // re-express an invariants-valued cochain in the full coefficient carrier
        Cochain out = Cochain::zero(Aq, c.degree);
        for (i64 t = 0; t < c.tuple_count(); ++t)
            out.set_value(t, inv.sq.lift.apply(c.value_at(t)));
        return out;
    };
    auto reduce_to_invariants = [&](const Cochain& c) {
        Cochain out = Cochain::zero(inv.mod, c.degree);
        for (i64 t = 0; t < c.tuple_count(); ++t) out.set_value(t, inv.sq.reduce(c.value_at(t)));
        return out;
    };

    rep.inf1 = IntMat(h1g.sq.group.gens, h1q.sq.group.gens);
    for (int j = 0; j < h1q.sq.group.gens; ++j) {
        Cochain infl = inflation(lift_to_quotient_cochain(h1q.reps[j]), qd, A);
        rep.inf1.set_col(j, h1g.class_of(infl));
    }

    rep.res1 = IntMat(h0q.sq.group.gens, h1g.sq.group.gens);
    for (int j = 0; j < h1g.sq.group.gens; ++j) {
        RestrictionResult r = restriction(h1g.reps[j], N, qd);
        if (!r.invariant)
            throw Error("ExactnessFailure", "restriction missed the invariant part");
        Cochain cls = Cochain::zero(kc.as_quotient_module, 0);
        cls.set_value(0, r.class_coords);
        rep.res1.set_col(j, h0q.class_of(cls));
    }

    rep.d2 = IntMat(h2q.sq.group.gens, h0q.sq.group.gens);
    for (int j = 0; j < h0q.sq.group.gens; ++j) {
        // a degree-0 class on the quotient is an invariant class in H^1(N; A);
        // realize it as a homomorphism N -> A and transgress
        std::vector<i64> h1n_coords = h0q.reps[j].value_at(0);
        Cochain repn = kc.over_n.rep_from_class(kc.over_n.sq.group.reduce(h1n_coords));
        std::vector<std::vector<i64>> vals(N.size());
        vals[0].assign(A->carrier.gens, 0);
        for (int k = 1; k < N.size(); ++k) {
            std::vector<int> t{k};
            vals[k] = repn.eval(t);
        }
        KernelHom f = kernel_hom_from_values(N, A, std::move(vals));
        Cochain d2f = transgression_d2(G, N, A, f, qd);
        rep.d2.set_col(j, h2q.class_of(reduce_to_invariants(d2f)));
    }

    rep.inf2 = IntMat(h2g.sq.group.gens, h2q.sq.group.gens);
    for (int j = 0; j < h2q.sq.group.gens; ++j) {
        Cochain infl = inflation(lift_to_quotient_cochain(h2q.reps[j]), qd, A);
        rep.inf2.set_col(j, h2g.class_of(infl));
    }

    auto check_exact = [&](const IntMat& in_map, const AbelianGroupPresentation& middle,
                           const IntMat& out_map, const AbelianGroupPresentation& target,
                           const char* node) {
        IntMat im = image_lattice(in_map, middle.moduli);
        IntMat ker = hom_kernel_lattice(out_map, middle.moduli, target.moduli);
        if (!lattice_equal(im, ker))
            throw Error("ExactnessFailure", std::string("sequence breaks at ") + node);
        return true;
    };
    rep.exact_at_2 = check_exact(rep.inf1, h1g.sq.group, rep.res1, h0q.sq.group, "H1(G)");
    rep.exact_at_3 = check_exact(rep.res1, h0q.sq.group, rep.d2, h2q.sq.group, "H0(G/N;H1(N))");
    rep.exact_at_4 = check_exact(rep.d2, h2q.sq.group, rep.inf2, h2g.sq.group, "H2(G/N)");
    return rep;
}

}  // namespace cohomforge
