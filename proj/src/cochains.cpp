#include "cohomforge/cochains.hpp"

#include <cstdlib>

namespace cohomforge {

int max_degree() {
    static int cached = [] {
        if (const char* env = std::getenv("COHOMFORGE_MAX_DEGREE")) {
            int v = std::atoi(env);
            if (v > 0) return v;
        }
        return 3;
    }();
    return cached;
}

namespace {

i64 pow_i64(i64 base, int exp) {
    i64 r = 1;
    for (int i = 0; i < exp; ++i) r = chk_mul(r, base);
    return r;
}

}  // namespace

std::vector<DeltaTerm> delta_terms(const FiniteGroup& G, std::span<const int> tuple) {
    const int p1 = static_cast<int>(tuple.size());  // degree of the target
    const int p = p1 - 1;
    const i64 radix = G.order - 1;
    auto index_of = [&](const std::vector<int>& t) {
        i64 idx = 0;
        for (int g : t) idx = idx * radix + (g - 1);
        return idx;
    };
    std::vector<DeltaTerm> terms;
    {
        std::vector<int> t(tuple.begin() + 1, tuple.end());
        terms.push_back({index_of(t), 1, tuple[0]});
    }
    for (int i = 1; i <= p; ++i) {
        int merged = G.mul(tuple[i - 1], tuple[i]);
        if (merged == 0) continue;  // normalized: implicit zero
        std::vector<int> t;
        t.reserve(p);
        for (int k = 0; k < i - 1; ++k) t.push_back(tuple[k]);
        t.push_back(merged);
        for (int k = i + 1; k < p1; ++k) t.push_back(tuple[k]);
        terms.push_back({index_of(t), (i % 2 == 0) ? 1 : -1, 0});
    }
    {
        std::vector<int> t(tuple.begin(), tuple.end() - 1);
        terms.push_back({index_of(t), (p1 % 2 == 0) ? 1 : -1, 0});
    }
    return terms;
}

bool next_tuple(std::vector<int>& t, int n) {
    for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
        if (t[i] < n - 1) {
            ++t[i];
            return true;
        }
        t[i] = 1;
    }
    return false;
}

i64 Cochain::tuple_count() const { return pow_i64(group().order - 1, degree); }

Cochain Cochain::zero(GModulePtr coeff, int degree) {
    Cochain c;
    c.coeff = std::move(coeff);
    c.degree = degree;
    c.values.assign(static_cast<size_t>(c.tuple_count()) * c.block(), 0);
    return c;
}

i64 Cochain::tuple_index(std::span<const int> tuple) const {
    const i64 radix = group().order - 1;
    i64 idx = 0;
    for (int g : tuple) idx = idx * radix + (g - 1);
    return idx;
}

std::vector<int> Cochain::tuple_at(i64 idx) const {
    const i64 radix = group().order - 1;
    std::vector<int> t(degree);
    for (int i = degree - 1; i >= 0; --i) {
        t[i] = static_cast<int>(idx % radix) + 1;
        idx /= radix;
    }
    return t;
}

std::vector<i64> Cochain::value_at(i64 idx) const {
    const int m = block();
    return {values.begin() + idx * m, values.begin() + (idx + 1) * m};
}

void Cochain::set_value(i64 idx, std::span<const i64> v) {
    const int m = block();
    for (int j = 0; j < m; ++j) values[idx * m + j] = v[j];
}

std::vector<i64> Cochain::eval(std::span<const int> tuple) const {
    for (int g : tuple)
        if (g == 0) return std::vector<i64>(block(), 0);
    return value_at(tuple_index(tuple));
}

bool Cochain::is_zero() const {
    const i64 T = tuple_count();
    for (i64 t = 0; t < T; ++t)
        if (!coeff->carrier.is_zero(value_at(t))) return false;
    return true;
}

Cochain Cochain::operator+(const Cochain& o) const {
    Cochain r = *this;
    for (size_t i = 0; i < values.size(); ++i) r.values[i] = chk_add(values[i], o.values[i]);
    return r;
}

Cochain Cochain::operator-(const Cochain& o) const {
    Cochain r = *this;
    for (size_t i = 0; i < values.size(); ++i) r.values[i] = chk_sub(values[i], o.values[i]);
    return r;
}

Cochain Cochain::negated() const {
    Cochain r = *this;
    for (auto& v : r.values) v = chk_neg(v);
    return r;
}

Cochain coboundary(const Cochain& c) {
    const FiniteGroup& G = c.group();
    const int m = c.block();
    Cochain d = Cochain::zero(c.coeff, c.degree + 1);
    std::vector<int> tuple(c.degree + 1, 1);
    if (G.order == 1) return d;
    i64 idx = 0;
    do {
        std::vector<i64> acc(m, 0);
        for (const DeltaTerm& t : delta_terms(G, tuple)) {
            std::vector<i64> v = c.value_at(t.src);
            if (t.act != 0) v = c.coeff->act(t.act, v);
            for (int j = 0; j < m; ++j)
                acc[j] = t.sign > 0 ? chk_add(acc[j], v[j]) : chk_sub(acc[j], v[j]);
        }
        d.set_value(idx, acc);
        ++idx;
    } while (next_tuple(tuple, G.order));
    return d;
}

bool is_cocycle(const Cochain& c) { return coboundary(c).is_zero(); }

CoboundaryLattice coboundary_lattice(GModulePtr A, int p) {
    const FiniteGroup& G = A->group;
    const int m = A->carrier.gens;
    const i64 Tp = pow_i64(G.order - 1, p);
    const int relc = A->carrier.relations.cols;

    CoboundaryLattice out;
    const i64 src_cols = p >= 1 ? pow_i64(G.order - 1, p - 1) * m : 0;
    out.coboundary_cols = static_cast<int>(src_cols);
    out.columns = IntMat(static_cast<int>(Tp * m), static_cast<int>(src_cols + Tp * relc));

    if (p >= 1) {
        for (i64 s = 0; s < src_cols; ++s) {
            Cochain basis = Cochain::zero(A, p - 1);
            basis.values[s] = 1;
            Cochain d = coboundary(basis);
            for (i64 r = 0; r < static_cast<i64>(d.values.size()); ++r)
                if (d.values[r] != 0) out.columns.at(static_cast<int>(r), static_cast<int>(s)) = d.values[r];
        }
    }
    for (i64 t = 0; t < Tp; ++t)
        for (int j = 0; j < relc; ++j)
            for (int i = 0; i < m; ++i)
                out.columns.at(static_cast<int>(t * m + i), static_cast<int>(src_cols + t * relc + j)) =
                    A->carrier.relations.at(i, j);
    return out;
}

CohomologyResult cohomology(GModulePtr A, int p) {
    if (p < 0 || p > max_degree())
        throw Error("DegreeBoundExceeded", "degree " + std::to_string(p) + " outside the ceiling");
    const FiniteGroup& G = A->group;
    const int m = A->carrier.gens;
    const i64 Tp = pow_i64(G.order - 1, p);

    // cocycle lattice: delta c vanishes modulo relations at every target tuple
    CongruenceSolver solver(static_cast<int>(Tp * m), A->carrier.exponent());
    if (G.order > 1) {
        std::vector<int> tuple(p + 1, 1);
        do {
            // accumulate the m x m coefficient block per source tuple
            std::vector<std::pair<i64, IntMat>> blocks;
            for (const DeltaTerm& t : delta_terms(G, tuple)) {
                IntMat M = t.act != 0 ? A->action[t.act] : IntMat::identity(m);
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
            for (auto& [src, acc] : blocks) acc = mat_mul(A->carrier.U, acc);
            for (int r = 0; r < m; ++r) {
                if (A->carrier.moduli[r] == 1) continue;
                SparseRow row;
                for (auto& [src, acc] : blocks)
                    for (int j = 0; j < m; ++j)
                        if (acc.at(r, j) != 0)
                            row.entries.emplace_back(static_cast<int>(src * m + j), acc.at(r, j));
                if (!row.entries.empty()) solver.add(row, A->carrier.moduli[r]);
            }
        } while (next_tuple(tuple, G.order));
    }

    CoboundaryLattice bl = coboundary_lattice(A, p);
    AbelianGroupPresentation ambient = AbelianGroupPresentation::power(A->carrier, Tp);

    CohomologyResult out;
    out.coeff = A;
    out.degree = p;
    out.sq = subquotient(solver.basis(), bl.columns, ambient);
    for (int j = 0; j < out.sq.group.gens; ++j) {
        Cochain rep = Cochain::zero(A, p);
        auto lift = out.sq.lift.col(j);
        rep.values.assign(lift.begin(), lift.end());
        out.reps.push_back(std::move(rep));
    }
    return out;
}

std::vector<i64> CohomologyResult::class_of(const Cochain& c) const {
    if (!is_cocycle(c)) throw Error("NotCocycle", "class_of requires a cocycle");
    return sq.reduce(c.values);
}

Cochain CohomologyResult::rep_from_class(std::span<const i64> cls) const {
    Cochain c = Cochain::zero(coeff, degree);
    for (size_t j = 0; j < cls.size(); ++j) {
        if (cls[j] == 0) continue;
        auto lift = sq.lift.col(static_cast<int>(j));
        for (size_t i = 0; i < c.values.size(); ++i)
            c.values[i] = chk_add(c.values[i], chk_mul(cls[j], lift[i]));
    }
    return c;
}

CohomologousResult cohomologous(const Cochain& c1, const Cochain& c2) {
    if (c1.degree != c2.degree || c1.values.size() != c2.values.size())
        throw Error("NotCocycle", "cochain shapes differ");
    if (!is_cocycle(c1)) throw Error("NotCocycle", "first argument is not a cocycle");
    if (!is_cocycle(c2)) throw Error("NotCocycle", "second argument is not a cocycle");

    CoboundaryLattice lat = coboundary_lattice(c1.coeff, c1.degree);
    HermiteBasis hb = hnf_basis(lat.columns, true);
    Cochain diff = c1 - c2;
    auto sol = solve_in_lattice(hb, diff.values);
    CohomologousResult out;
    out.equivalent = sol.has_value();
    if (sol && c1.degree >= 1) {
        std::vector<i64> x = hb.transform.apply(*sol);
        Cochain T = Cochain::zero(c1.coeff, c1.degree - 1);
        for (int i = 0; i < lat.coboundary_cols; ++i) T.values[i] = x[i];
        out.witness = std::move(T);
    }
    return out;
}

}  // namespace cohomforge
