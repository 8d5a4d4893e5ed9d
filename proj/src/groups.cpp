#include "cohomforge/groups.hpp"

#include <algorithm>
#include <numeric>

namespace cohomforge {

int FiniteGroup::element_order(int g) const {
    int k = 1, x = g;
    while (x != 0) {
        x = mul(x, g);
        ++k;
    }
    return k;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order; ++a)
        for (int b = a + 1; b < order; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

FiniteGroup make_group(const std::vector<std::vector<int>>& table_in) {
    const int n = static_cast<int>(table_in.size());
    if (n == 0) throw Error("NoIdentity", "empty table");
    for (const auto& row : table_in) {
        if (static_cast<int>(row.size()) != n) throw Error("NoIdentity", "table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw Error("NoIdentity", "table entry out of range");
    }

    int e = -1;
    for (int cand = 0; cand < n; ++cand) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            ok = table_in[cand][x] == x && table_in[x][cand] == x;
        if (ok) {
            e = cand;
            break;
        }
    }
    if (e < 0) throw Error("NoIdentity", "no two-sided identity element");

    // relabel so the identity is index 0
    std::vector<int> perm(n);  // old index -> new index
    std::iota(perm.begin(), perm.end(), 0);
    if (e != 0) std::swap(perm[0], perm[e]);
    std::vector<int> inv_perm(n);
    for (int i = 0; i < n; ++i) inv_perm[perm[i]] = i;

    FiniteGroup G;
    G.order = n;
    G.table.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            G.table[a][b] = perm[table_in[inv_perm[a]][inv_perm[b]]];

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (G.table[G.table[a][b]][c] != G.table[a][G.table[b][c]])
                    throw Error("NotAssociative", "witness triple (" + std::to_string(a) + "," +
                                                      std::to_string(b) + "," + std::to_string(c) + ")");

    G.inverse.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (G.table[a][b] == 0 && G.table[b][a] == 0) {
                G.inverse[a] = b;
                break;
            }
        if (G.inverse[a] < 0)
            throw Error("NoInverse", "element " + std::to_string(a) + " has no inverse");
    }
    // rows and columns are permutations: implied by associativity + inverses
    return G;
}

Subgroup make_subgroup(const FiniteGroup& G, std::vector<int> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    Subgroup H;
    H.parent = G;
    H.elements = std::move(elements);
    H.member.assign(G.order, 0);
    for (int g : H.elements) H.member[g] = 1;
    if (H.elements.empty() || H.elements[0] != 0)
        throw Error("NoIdentity", "subgroup must contain the identity");
    for (int a : H.elements) {
        if (!H.member[G.inv(a)]) throw Error("NoInverse", "subgroup not closed under inversion");
        for (int b : H.elements)
            if (!H.member[G.mul(a, b)])
                throw Error("NotAssociative", "subgroup not closed under multiplication");
    }
    return H;
}

namespace {

FiniteGroup from_table(std::vector<std::vector<int>> t) { return make_group(t); }

void check_bound(int order, int bound) {
    if (order > bound)
        throw Error("OrderBoundExceeded",
                    "order " + std::to_string(order) + " exceeds bound " + std::to_string(bound));
}

}  // namespace

FiniteGroup make_standard(StandardKind kind, int param, int order_bound) {
    switch (kind) {
        case StandardKind::Cyclic: {
            if (param < 1) throw Error("OrderBoundExceeded", "cyclic order must be positive");
            check_bound(param, order_bound);
            std::vector<std::vector<int>> t(param, std::vector<int>(param));
            for (int a = 0; a < param; ++a)
                for (int b = 0; b < param; ++b) t[a][b] = (a + b) % param;
            return from_table(std::move(t));
        }
        case StandardKind::Dihedral: {
            // rotations 0..m-1, reflections m..2m-1
            if (param < 1) throw Error("OrderBoundExceeded", "dihedral parameter must be positive");
            const int m = param;
            check_bound(2 * m, order_bound);
            std::vector<std::vector<int>> t(2 * m, std::vector<int>(2 * m));
            for (int x = 0; x < 2 * m; ++x)
                for (int y = 0; y < 2 * m; ++y) {
                    if (x < m && y < m) t[x][y] = (x + y) % m;
                    else if (x < m) t[x][y] = (y + x) % m + m;
                    else if (y < m) t[x][y] = ((x - y) % m + m) % m + m;
                    else t[x][y] = ((x - y) % m + m) % m;
                }
            return from_table(std::move(t));
        }
        case StandardKind::Quaternion8: {
            check_bound(8, order_bound);
            // indices: 0:+1 1:-1 2:+i 3:-i 4:+j 5:-j 6:+k 7:-k
            // basis products of {1,i,j,k}: value index/2 and sign
            static const int bmul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
            static const int s2[4][4] = {
                {+1, +1, +1, +1},  // 1*x
                {+1, -1, +1, -1},  // i*1=i, i*i=-1, i*j=+k, i*k=-j
                {+1, -1, -1, +1},  // j*1=j, j*i=-k, j*j=-1, j*k=+i
                {+1, +1, -1, -1},  // k*1=k, k*i=+j, k*j=-i, k*k=-1
            };
            std::vector<std::vector<int>> t(8, std::vector<int>(8));
            for (int x = 0; x < 8; ++x)
                for (int y = 0; y < 8; ++y) {
                    int bx = x / 2, by = y / 2;
                    int sign = (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1) * s2[bx][by];
                    t[x][y] = bmul[bx][by] * 2 + (sign < 0 ? 1 : 0);
                }
            return from_table(std::move(t));
        }
        case StandardKind::Heisenberg: {
            const int p = param;
            if (p < 2) throw Error("OrderBoundExceeded", "heisenberg parameter must be >= 2");
            check_bound(p * p * p, order_bound);
            const int n = p * p * p;
            auto idx = [p](int a, int b, int c) { return (a * p + b) * p + c; };
            std::vector<std::vector<int>> t(n, std::vector<int>(n));
            for (int a = 0; a < p; ++a)
                for (int b = 0; b < p; ++b)
                    for (int c = 0; c < p; ++c)
                        for (int a2 = 0; a2 < p; ++a2)
                            for (int b2 = 0; b2 < p; ++b2)
                                for (int c2 = 0; c2 < p; ++c2)
                                    t[idx(a, b, c)][idx(a2, b2, c2)] =
                                        idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
            return from_table(std::move(t));
        }
        case StandardKind::Symmetric: {
            const int m = param;
            if (m < 1 || m > 4) throw Error("OrderBoundExceeded", "symmetric supports m in 1..4");
            std::vector<std::vector<int>> perms;
            std::vector<int> p0(m);
            std::iota(p0.begin(), p0.end(), 0);
            do perms.push_back(p0);
            while (std::next_permutation(p0.begin(), p0.end()));
            const int n = static_cast<int>(perms.size());
            check_bound(n, order_bound);
            auto find = [&](const std::vector<int>& q) {
                return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
            };
            std::vector<std::vector<int>> t(n, std::vector<int>(n));
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    std::vector<int> comp(m);
                    for (int i = 0; i < m; ++i) comp[i] = perms[x][perms[y][i]];
                    t[x][y] = find(comp);
                }
            return from_table(std::move(t));
        }
    }
    throw Error("OrderBoundExceeded", "unknown standard kind");
}

FiniteGroup direct_product(const FiniteGroup& G, const FiniteGroup& H, int order_bound) {
    check_bound(G.order * H.order, order_bound);
    const int n = G.order * H.order;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int g1 = 0; g1 < G.order; ++g1)
        for (int h1 = 0; h1 < H.order; ++h1)
            for (int g2 = 0; g2 < G.order; ++g2)
                for (int h2 = 0; h2 < H.order; ++h2)
                    t[g1 * H.order + h1][g2 * H.order + h2] =
                        G.mul(g1, g2) * H.order + H.mul(h1, h2);
    return make_group(t);
}

Subgroup subgroup_closure(const FiniteGroup& G, const std::vector<int>& gens) {
    std::vector<char> in(G.order, 0);
    std::vector<int> stack{0};
    in[0] = 1;
    for (int g : gens) {
        if (g < 0 || g >= G.order) throw Error("NoIdentity", "generator out of range");
        if (!in[g]) {
            in[g] = 1;
            stack.push_back(g);
        }
    }
    std::vector<int> elems = stack;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        std::vector<int> next;
        for (int y : elems) {
            next.push_back(G.mul(x, y));
            next.push_back(G.mul(y, x));
        }
        next.push_back(G.inv(x));
        for (int z : next)
            if (!in[z]) {
                in[z] = 1;
                elems.push_back(z);
                stack.push_back(z);
            }
    }
    return make_subgroup(G, elems);
}

bool is_normal(const FiniteGroup& G, const Subgroup& H) {
    for (int g = 0; g < G.order; ++g)
        for (int h : H.elements)
            if (!H.contains(G.conj(g, h))) return false;
    return true;
}

QuotientData quotient(const FiniteGroup& G, const Subgroup& N) {
    if (!is_normal(G, N)) throw Error("NotNormal", "subgroup is not normal");
    const int n = G.order;
    std::vector<int> coset_rep(n, -1);  // element -> minimal element of its coset
    std::vector<int> reps;
    for (int g = 0; g < n; ++g) {
        if (coset_rep[g] >= 0) continue;
        std::vector<int> coset;
        for (int h : N.elements) coset.push_back(G.mul(h, g));
        int rep = *std::min_element(coset.begin(), coset.end());
        for (int x : coset) coset_rep[x] = rep;
        reps.push_back(rep);
    }
    std::sort(reps.begin(), reps.end());
    const int q = static_cast<int>(reps.size());
    if (n != N.size() * q) throw Error("NotNormal", "coset count mismatch");
    std::vector<int> rep_index(n, -1);
    for (int i = 0; i < q; ++i) rep_index[reps[i]] = i;

    std::vector<std::vector<int>> qt(q, std::vector<int>(q));
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) qt[i][j] = rep_index[coset_rep[G.mul(reps[i], reps[j])]];

    QuotientData qd;
    qd.parent = G;
    qd.normal = N;
    qd.quotient = make_group(qt);
    qd.projection.assign(n, -1);
    for (int g = 0; g < n; ++g) qd.projection[g] = rep_index[coset_rep[g]];
    qd.section = reps;

    // homomorphism + kernel sanity
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (qd.projection[G.mul(a, b)] !=
                qd.quotient.mul(qd.projection[a], qd.projection[b]))
                throw Error("NotNormal", "projection fails to be a homomorphism");
    for (int g = 0; g < n; ++g)
        if ((qd.projection[g] == 0) != N.contains(g))
            throw Error("NotNormal", "kernel differs from the given subgroup");
    return qd;
}

Subgroup commutator_subgroup(const FiniteGroup& G, const Subgroup& H) {
    std::vector<int> comms;
    for (int h : H.elements)
        for (int k : H.elements)
            comms.push_back(G.mul(G.mul(h, k), G.mul(G.inv(h), G.inv(k))));
    Subgroup C = subgroup_closure(G, comms);
    if (is_normal(G, H) && !is_normal(G, C))
        throw Error("NotNormal", "commutator subgroup of a normal subgroup must be normal");
    return C;
}

std::vector<int> center(const FiniteGroup& G) {
    std::vector<int> z;
    for (int g = 0; g < G.order; ++g) {
        bool central = true;
        for (int h = 0; h < G.order && central; ++h) central = G.mul(g, h) == G.mul(h, g);
        if (central) z.push_back(g);
    }
    return z;
}

FiniteGroup subgroup_group(const Subgroup& H) {
    const int m = H.size();
    std::vector<int> index_of(H.parent.order, -1);
    for (int i = 0; i < m; ++i) index_of[H.elements[i]] = i;
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            t[i][j] = index_of[H.parent.mul(H.elements[i], H.elements[j])];
    return make_group(t);
}

namespace {

std::vector<int> small_generating_set(const FiniteGroup& G) {
    std::vector<int> gens;
    std::vector<char> covered(G.order, 0);
    covered[0] = 1;
    int ncov = 1;
    while (ncov < G.order) {
        int pick = -1;
        for (int g = 1; g < G.order; ++g)
            if (!covered[g]) {
                pick = g;
                break;
            }
        gens.push_back(pick);
        Subgroup S = subgroup_closure(G, gens);
        ncov = S.size();
        covered.assign(G.order, 0);
        for (int x : S.elements) covered[x] = 1;
    }
    return gens;
}

bool extend_iso(const FiniteGroup& A, const FiniteGroup& B, const std::vector<int>& gens,
                size_t pos, std::vector<int>& images) {
    if (pos == gens.size()) {
        // grow the partial map over the closure and verify it is a bijective hom
        std::vector<int> map(A.order, -1);
        map[0] = 0;
        std::vector<int> known{0};
        for (size_t i = 0; i < gens.size(); ++i) map[gens[i]] = images[i];
        for (int g : gens) known.push_back(g);
        bool grew = true;
        while (grew) {
            grew = false;
            for (size_t i = 0; i < known.size(); ++i)
                for (size_t j = 0; j < known.size(); ++j) {
                    int prod = A.mul(known[i], known[j]);
                    int img = B.mul(map[known[i]], map[known[j]]);
                    if (map[prod] == -1) {
                        map[prod] = img;
                        known.push_back(prod);
                        grew = true;
                    } else if (map[prod] != img) {
                        return false;
                    }
                }
        }
        if (static_cast<int>(known.size()) != A.order) return false;
        std::vector<char> hit(B.order, 0);
        for (int g = 0; g < A.order; ++g) {
            if (map[g] < 0 || hit[map[g]]) return false;
            hit[map[g]] = 1;
        }
        return true;
    }
    int g = gens[pos];
    int og = A.element_order(g);
    for (int b = 0; b < B.order; ++b) {
        if (B.element_order(b) != og) continue;
        images[pos] = b;
        if (extend_iso(A, B, gens, pos + 1, images)) return true;
    }
    return false;
}

}  // namespace

bool is_isomorphic(const FiniteGroup& A, const FiniteGroup& B) {
    if (A.order != B.order) return false;
    std::vector<int> oa, ob;
    for (int g = 0; g < A.order; ++g) oa.push_back(A.element_order(g));
    for (int g = 0; g < B.order; ++g) ob.push_back(B.element_order(g));
    std::sort(oa.begin(), oa.end());
    std::sort(ob.begin(), ob.end());
    if (oa != ob) return false;
    auto gens = small_generating_set(A);
    std::vector<int> images(gens.size(), -1);
    return extend_iso(A, B, gens, 0, images);
}

}  // namespace cohomforge
