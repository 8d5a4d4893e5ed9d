#include "cohomforge/modules.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace cohomforge {

// ---------------------------------------------------------------------------
// AbelianGroupPresentation

AbelianGroupPresentation AbelianGroupPresentation::from_relations(int gens, IntMat relations) {
    AbelianGroupPresentation P;
    P.gens = gens;
    if (relations.rows == 0 && relations.cols == 0) relations = IntMat(gens, 0);
    if (relations.rows != gens) throw Error("NotContained", "relation matrix row count mismatch");
    P.relations = std::move(relations);
    SmithForm sf = smith_normal_form(P.relations);
    P.U = std::move(sf.U);
    P.Uinv = std::move(sf.Uinv);
    P.moduli.assign(gens, 0);
    for (size_t i = 0; i < sf.diag.size(); ++i) P.moduli[i] = sf.diag[i];
    return P;
}

AbelianGroupPresentation AbelianGroupPresentation::cyclic(i64 d) {
    IntMat rel(1, 1);
    rel.at(0, 0) = d;
    return from_relations(1, rel);
}

AbelianGroupPresentation AbelianGroupPresentation::free_group(int r) {
    return from_relations(r, IntMat(r, 0));
}

AbelianGroupPresentation AbelianGroupPresentation::from_moduli(std::vector<i64> moduli) {
    AbelianGroupPresentation P;
    P.gens = static_cast<int>(moduli.size());
    int nrel = 0;
    for (i64 d : moduli)
        if (d > 0) ++nrel;
    P.relations = IntMat(P.gens, nrel);
    int j = 0;
    for (int i = 0; i < P.gens; ++i)
        if (moduli[i] > 0) P.relations.at(i, j++) = moduli[i];
    P.U = IntMat::identity(P.gens);
    P.Uinv = IntMat::identity(P.gens);
    P.moduli = std::move(moduli);
    return P;
}

AbelianGroupPresentation AbelianGroupPresentation::power(const AbelianGroupPresentation& base,
                                                         i64 copies) {
    AbelianGroupPresentation P;
    const int m = base.gens, T = static_cast<int>(copies);
    P.gens = m * T;
    P.relations = IntMat(P.gens, base.relations.cols * T);
    P.U = IntMat(P.gens, P.gens);
    P.Uinv = IntMat(P.gens, P.gens);
    P.moduli.resize(P.gens);
    for (int t = 0; t < T; ++t) {
        for (int i = 0; i < m; ++i) {
            P.moduli[t * m + i] = base.moduli[i];
            for (int j = 0; j < m; ++j) {
                P.U.at(t * m + i, t * m + j) = base.U.at(i, j);
                P.Uinv.at(t * m + i, t * m + j) = base.Uinv.at(i, j);
            }
            for (int j = 0; j < base.relations.cols; ++j)
                P.relations.at(t * m + i, t * base.relations.cols + j) = base.relations.at(i, j);
        }
    }
    return P;
}

std::vector<i64> AbelianGroupPresentation::reduce(std::span<const i64> x) const {
    std::vector<i64> y = U.apply(x);
    for (int i = 0; i < gens; ++i)
        if (moduli[i] > 0) y[i] = mod_floor(y[i], moduli[i]);
    return y;
}

std::vector<i64> AbelianGroupPresentation::lift_canonical(std::span<const i64> y) const {
    return Uinv.apply(y);
}

bool AbelianGroupPresentation::is_zero(std::span<const i64> x) const {
    for (i64 v : reduce(x))
        if (v != 0) return false;
    return true;
}

bool AbelianGroupPresentation::equal(std::span<const i64> a, std::span<const i64> b) const {
    std::vector<i64> d(gens);
    for (int i = 0; i < gens; ++i) d[i] = chk_sub(a[i], b[i]);
    return is_zero(d);
}

std::vector<i64> AbelianGroupPresentation::invariant_factors() const {
    std::vector<i64> f;
    for (i64 d : moduli)
        if (d > 1) f.push_back(d);
    return f;
}

int AbelianGroupPresentation::free_rank() const {
    return static_cast<int>(std::count(moduli.begin(), moduli.end(), 0));
}

std::optional<i64> AbelianGroupPresentation::element_count() const {
    i64 n = 1;
    for (i64 d : moduli) {
        if (d == 0) return std::nullopt;
        n = chk_mul(n, d);
    }
    return n;
}

i64 AbelianGroupPresentation::exponent() const {
    i64 e = 1;
    for (i64 d : moduli) {
        if (d == 0) return 0;
        e = std::lcm(e, d);
    }
    return e;
}

std::vector<i64> AbelianGroupPresentation::element_by_index(i64 idx) const {
    if (!element_count()) throw Error("InfiniteCoefficients", "cannot enumerate an infinite group");
    std::vector<i64> y(gens, 0);
    for (int i = gens - 1; i >= 0; --i) {
        if (moduli[i] <= 1) continue;
        y[i] = idx % moduli[i];
        idx /= moduli[i];
    }
    return lift_canonical(y);
}

i64 AbelianGroupPresentation::index_of(std::span<const i64> x) const {
    if (!element_count()) throw Error("InfiniteCoefficients", "cannot enumerate an infinite group");
    std::vector<i64> y = reduce(x);
    i64 idx = 0;
    for (int i = 0; i < gens; ++i) {
        if (moduli[i] <= 1) continue;
        idx = idx * moduli[i] + y[i];
    }
    return idx;
}

// ---------------------------------------------------------------------------
// GModule

void GModule::validate() const {
    const int n = group.order, m = carrier.gens;
    if (static_cast<int>(action.size()) != n)
        throw Error("NotContained", "action table size mismatch");
    for (const IntMat& M : action)
        if (M.rows != m || M.cols != m) throw Error("NotContained", "action matrix shape mismatch");
    // identity acts as identity
    for (int j = 0; j < m; ++j) {
        std::vector<i64> e(m, 0);
        e[j] = 1;
        if (!carrier.equal(action[0].col(j), e))
            throw Error("NotContained", "identity element does not act trivially");
    }
    // composition and relation preservation
    for (int g = 0; g < n; ++g) {
        for (int j = 0; j < carrier.relations.cols; ++j)
            if (!carrier.is_zero(action[g].apply(carrier.relations.col(j))))
                throw Error("NotContained", "action does not preserve relations");
        for (int h = 0; h < n; ++h) {
            int gh = group.mul(g, h);
            for (int j = 0; j < m; ++j)
                if (!carrier.equal(action[g].apply(action[h].col(j)), action[gh].col(j)))
                    throw Error("NotContained", "action fails to be a homomorphism");
        }
    }
}

std::vector<i64> GModule::act(int g, std::span<const i64> x) const { return action[g].apply(x); }

bool GModule::trivial_on(const std::vector<int>& elems) const {
    for (int g : elems)
        for (int j = 0; j < carrier.gens; ++j) {
            std::vector<i64> e(carrier.gens, 0);
            e[j] = 1;
            if (!carrier.equal(action[g].col(j), e)) return false;
        }
    return true;
}

GModulePtr make_module(FiniteGroup G, AbelianGroupPresentation carrier, std::vector<IntMat> action) {
    auto m = std::make_shared<GModule>();
    m->group = std::move(G);
    m->carrier = std::move(carrier);
    m->action = std::move(action);
    m->validate();
    return m;
}

GModulePtr trivial_module(const FiniteGroup& G, const AbelianGroupPresentation& carrier) {
    std::vector<IntMat> act(G.order, IntMat::identity(carrier.gens));
    return make_module(G, carrier, std::move(act));
}

GModulePtr restrict_module(const GModule& A, const Subgroup& H, const FiniteGroup& Hgrp) {
    std::vector<IntMat> act;
    act.reserve(H.size());
    for (int g : H.elements) act.push_back(A.action[g]);
    return make_module(Hgrp, A.carrier, std::move(act));
}

GModulePtr quotient_module(const GModule& A, const QuotientData& qd) {
    if (!A.trivial_on(qd.normal.elements))
        throw Error("TrivialityViolation", "kernel subgroup acts nontrivially on the coefficients");
    std::vector<IntMat> act;
    act.reserve(qd.quotient.order);
    for (int x = 0; x < qd.quotient.order; ++x) act.push_back(A.action[qd.section[x]]);
    return make_module(qd.quotient, A.carrier, std::move(act));
}

// ---------------------------------------------------------------------------
// Subquotient

std::vector<i64> Subquotient::reduce(std::span<const i64> ambient) const {
    auto x = solve_in_lattice(zbasis, ambient);
    if (!x) throw Error("NotContained", "element lies outside the numerator lattice");
    std::vector<i64> y = Uq.apply(*x);
    for (size_t i = 0; i < y.size(); ++i)
        if (moduli[i] > 0) y[i] = mod_floor(y[i], moduli[i]);
    return y;
}

Subquotient subquotient(const IntMat& Z, const IntMat& B, const AbelianGroupPresentation& ambient) {
    IntMat Zfull = hstack(Z, ambient.relations);
    IntMat Bfull = hstack(B, ambient.relations);

    HermiteBasis zb = hnf_basis(Zfull);
    const int r = zb.H.cols;

    IntMat M(r, Bfull.cols);
    for (int j = 0; j < Bfull.cols; ++j) {
        auto x = solve_in_lattice(zb, Bfull.col(j));
        if (!x)
            throw Error("NotContained",
                        "denominator column " + std::to_string(j) + " outside the numerator span");
        for (int i = 0; i < r; ++i) M.at(i, j) = (*x)[i];
    }

    // finite ambient exponent e: the relation columns already put e * Z^r in
    // M's span, so a mod-e column basis spans the same lattice while keeping
    // the Smith computation small and bounded
    const i64 e = ambient.exponent();
    if (e > 0) M = column_basis_mod(M, e);

    SmithForm sf = smith_normal_form(M, e);
    std::vector<i64> moduli(r, 0);
    for (size_t i = 0; i < sf.diag.size(); ++i) moduli[i] = sf.diag[i];

    Subquotient sq;
    sq.moduli = moduli;
    sq.group = AbelianGroupPresentation::from_moduli(moduli);
    sq.Uq = sf.U;
    sq.zbasis = std::move(zb);
    sq.lift = mat_mul(sq.zbasis.H, sf.Uinv);  // column i lifts canonical generator i
    return sq;
}

Subquotient invariant_subquotient(const GModule& A, const std::vector<int>& H_elems) {
    const int m = A.carrier.gens;
    CongruenceSolver solver(m, A.carrier.exponent());
    for (int h : H_elems) {
        if (h == 0) continue;
        IntMat diff = A.action[h];
        for (int j = 0; j < m; ++j) diff.at(j, j) = chk_sub(diff.at(j, j), 1);
        IntMat rows = mat_mul(A.carrier.U, diff);
        for (int i = 0; i < m; ++i) {
            if (A.carrier.moduli[i] == 1) continue;
            SparseRow row;
            for (int j = 0; j < m; ++j)
                if (rows.at(i, j) != 0) row.entries.emplace_back(j, rows.at(i, j));
            if (!row.entries.empty()) solver.add(row, A.carrier.moduli[i]);
        }
    }
    return subquotient(solver.basis(), IntMat(m, 0), A.carrier);
}

InvariantModule invariant_module(const GModule& A, const std::vector<int>& H_elems,
                                 const FiniteGroup& over, const std::vector<int>& actors) {
    InvariantModule out;
    out.sq = invariant_subquotient(A, H_elems);
    const int t = out.sq.group.gens;
    std::vector<IntMat> act;
    act.reserve(over.order);
    for (int x = 0; x < over.order; ++x) {
        IntMat M(t, t);
        for (int j = 0; j < t; ++j) {
            auto img = out.sq.reduce(A.act(actors[x], out.sq.lift.col(j)));
            M.set_col(j, img);
        }
        act.push_back(std::move(M));
    }
    out.mod = make_module(over, out.sq.group, std::move(act));
    return out;
}

// ---------------------------------------------------------------------------
// Abelianized kernel and homomorphisms

AbelianizedKernel abelianization_module(const FiniteGroup& G, const Subgroup& N) {
    if (!is_normal(G, N)) throw Error("NotNormal", "kernel subgroup must be normal");
    AbelianizedKernel ab;
    ab.N = N;
    ab.index_in_N.assign(G.order, -1);
    const int m = N.size();
    for (int i = 0; i < m; ++i) ab.index_in_N[N.elements[i]] = i;

    IntMat rel(m, m * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int c = i * m + j;
            rel.at(i, c) = chk_add(rel.at(i, c), 1);
            rel.at(j, c) = chk_add(rel.at(j, c), 1);
            int prod = ab.index_in_N[G.mul(N.elements[i], N.elements[j])];
            rel.at(prod, c) = chk_sub(rel.at(prod, c), 1);
        }
    ab.pres = AbelianGroupPresentation::from_relations(m, std::move(rel));

    std::vector<IntMat> act;
    act.reserve(G.order);
    for (int g = 0; g < G.order; ++g) {
        IntMat P(m, m);
        for (int j = 0; j < m; ++j) P.at(ab.index_in_N[G.conj(g, N.elements[j])], j) = 1;
        act.push_back(std::move(P));
    }
    ab.as_g_module = make_module(G, ab.pres, std::move(act));
    if (!ab.as_g_module->trivial_on(N.elements))
        throw Error("NotNormal", "kernel fails to act trivially on its own abelianization");
    return ab;
}

std::vector<i64> AbelianizedKernel::coords_of(int parent_element) const {
    int i = index_in_N[parent_element];
    if (i < 0) throw Error("NotContained", "element outside the kernel subgroup");
    std::vector<i64> e(pres.gens, 0);
    e[i] = 1;
    return e;
}

GModulePtr abelianization_as_quotient_module(const AbelianizedKernel& ab, const QuotientData& qd) {
    std::vector<IntMat> act;
    const int m = ab.pres.gens;
    act.reserve(qd.quotient.order);
    for (int x = 0; x < qd.quotient.order; ++x) {
        int g = qd.section[x];
        IntMat P(m, m);
        for (int j = 0; j < m; ++j)
            P.at(ab.index_in_N[qd.parent.conj(g, ab.N.elements[j])], j) = 1;
        act.push_back(std::move(P));
    }
    return make_module(qd.quotient, ab.pres, std::move(act));
}

std::vector<i64> KernelHom::eval(int parent_element) const {
    int i = index_in_N[parent_element];
    if (i < 0) throw Error("NotContained", "element outside the kernel subgroup");
    return values[i];
}

std::vector<i64> KernelHom::apply_chain(std::span<const i64> coords) const {
    std::vector<i64> out(target->carrier.gens, 0);
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        for (int j = 0; j < target->carrier.gens; ++j)
            out[j] = chk_add(out[j], chk_mul(coords[i], values[i][j]));
    }
    return out;
}

bool KernelHom::is_zero() const {
    for (const auto& v : values)
        if (!target->carrier.is_zero(v)) return false;
    return true;
}

bool KernelHom::is_equivariant(const FiniteGroup& G) const {
    for (int g = 0; g < G.order; ++g)
        for (int n : kernel_elems)
            if (!target->carrier.equal(eval(G.conj(g, n)), target->act(g, eval(n)))) return false;
    return true;
}

KernelHom kernel_hom_from_values(const Subgroup& N, GModulePtr A,
                                 std::vector<std::vector<i64>> values) {
    KernelHom f;
    f.kernel_elems = N.elements;
    f.index_in_N.assign(N.parent.order, -1);
    for (size_t i = 0; i < N.elements.size(); ++i) f.index_in_N[N.elements[i]] = static_cast<int>(i);
    f.values = std::move(values);
    f.target = std::move(A);
    if (!f.target->carrier.is_zero(f.eval(0)))
        throw Error("NotContained", "homomorphism must send the identity to zero");
    for (int n : f.kernel_elems)
        for (int m : f.kernel_elems) {
            std::vector<i64> sum(f.target->carrier.gens);
            auto fn = f.eval(n), fm = f.eval(m);
            for (int j = 0; j < f.target->carrier.gens; ++j) sum[j] = chk_add(fn[j], fm[j]);
            if (!f.target->carrier.equal(f.eval(N.parent.mul(n, m)), sum))
                throw Error("NotContained", "value table is not a homomorphism");
        }
    return f;
}

HomGroupResult hom_group(const FiniteGroup& G, const Subgroup& N, GModulePtr A) {
    HomGroupResult out;
    out.ab = abelianization_module(G, N);
    const auto& pres = out.ab.pres;

    if (pres.free_rank() > 0 && A->carrier.free_rank() > 0)
        throw Error("InfiniteHomGroup", "Hom(N, A) is not a finite list");

    // canonical generators of N/N' with their orders
    std::vector<int> gen_idx;
    for (int i = 0; i < pres.gens; ++i)
        if (pres.moduli[i] != 1) gen_idx.push_back(i);

    // admissible images in A per generator: the d-torsion subgroup, enumerated
    // through A's canonical coordinates
    const auto& ac = A->carrier;
    std::vector<std::vector<std::vector<i64>>> choices(gen_idx.size());
    for (size_t k = 0; k < gen_idx.size(); ++k) {
        i64 d = pres.moduli[gen_idx[k]];
        std::vector<std::vector<i64>> imgs;
        std::vector<i64> y(ac.gens, 0);
        std::function<void(int)> rec = [&](int pos) {
            if (pos == ac.gens) {
                imgs.push_back(ac.lift_canonical(y));
                return;
            }
            i64 e = ac.moduli[pos];
            if (e == 0 || d == 0) {
                // free coordinate or infinite-order generator: image must vanish
                y[pos] = 0;
                rec(pos + 1);
            } else {
                i64 g = std::gcd(d, e);
                for (i64 t = 0; t < g; ++t) {
                    y[pos] = t * (e / g);
                    rec(pos + 1);
                }
            }
        };
        rec(0);
        choices[k] = std::move(imgs);
    }

    std::vector<std::vector<i64>> pick(gen_idx.size());
    std::function<void(size_t)> emit = [&](size_t k) {
        if (k == gen_idx.size()) {
            std::vector<std::vector<i64>> vals(out.ab.N.size());
            for (int i = 0; i < out.ab.N.size(); ++i) {
                auto coords = pres.reduce(out.ab.coords_of(out.ab.N.elements[i]));
                std::vector<i64> v(ac.gens, 0);
                for (size_t t = 0; t < gen_idx.size(); ++t) {
                    i64 c = coords[gen_idx[t]];
                    for (int j = 0; j < ac.gens; ++j)
                        v[j] = chk_add(v[j], chk_mul(c, pick[t][j]));
                }
                vals[i] = std::move(v);
            }
            out.homs.push_back(kernel_hom_from_values(out.ab.N, A, std::move(vals)));
            return;
        }
        for (const auto& img : choices[k]) {
            pick[k] = img;
            emit(k + 1);
        }
    };
    emit(0);

    out.invariant.resize(out.homs.size());
    for (size_t i = 0; i < out.homs.size(); ++i) out.invariant[i] = out.homs[i].is_equivariant(G);
    return out;
}

}  // namespace cohomforge
