#include "cohomforge/intmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace cohomforge {

namespace {
[[noreturn]] void overflow() { throw Error("OverflowDetected", "64-bit integer range exceeded"); }
}  // namespace

i64 chk_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) overflow();
    return r;
}

i64 chk_sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) overflow();
    return r;
}

i64 chk_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) overflow();
    return r;
}

i64 chk_neg(i64 a) { return chk_sub(0, a); }

i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    if (r < 0) r += m;
    return r;
}

IntMat IntMat::identity(int n) {
    IntMat I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

std::vector<i64> IntMat::col(int j) const {
    std::vector<i64> v(rows);
    for (int i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
}

void IntMat::set_col(int j, std::span<const i64> v) {
    for (int i = 0; i < rows; ++i) at(i, j) = v[i];
}

std::vector<i64> IntMat::apply(std::span<const i64> x) const {
    std::vector<i64> y(rows, 0);
    for (int i = 0; i < rows; ++i) {
        i64 acc = 0;
        for (int j = 0; j < cols; ++j)
            if (at(i, j) != 0 && x[j] != 0) acc = chk_add(acc, chk_mul(at(i, j), x[j]));
        y[i] = acc;
    }
    return y;
}

IntMat IntMat::transposed() const {
    IntMat T(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) T.at(j, i) = at(i, j);
    return T;
}

IntMat mat_mul(const IntMat& A, const IntMat& B) {
    IntMat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            i64 v = A.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < B.cols; ++j)
                if (B.at(k, j) != 0) C.at(i, j) = chk_add(C.at(i, j), chk_mul(v, B.at(k, j)));
        }
    return C;
}

IntMat hstack(const IntMat& A, const IntMat& B) {
    if (A.cols == 0) return B;
    if (B.cols == 0) return A;
    IntMat C(A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct SnfWork {
    IntMat D, U, Uinv, V, Vinv;
    i64 mod = 0;  // > 0: keep every entry balanced mod this

    i64 red(i64 v) const { return mod > 0 ? balanced_mod(v, mod) : v; }

    void row_swap(int i, int j) {
        for (int c = 0; c < D.cols; ++c) std::swap(D.at(i, c), D.at(j, c));
        for (int c = 0; c < U.cols; ++c) std::swap(U.at(i, c), U.at(j, c));
        for (int r = 0; r < Uinv.rows; ++r) std::swap(Uinv.at(r, i), Uinv.at(r, j));
    }
    void col_swap(int i, int j) {
        for (int r = 0; r < D.rows; ++r) std::swap(D.at(r, i), D.at(r, j));
        for (int r = 0; r < V.rows; ++r) std::swap(V.at(r, i), V.at(r, j));
        for (int c = 0; c < Vinv.cols; ++c) std::swap(Vinv.at(i, c), Vinv.at(j, c));
    }
    // row i += q * row j
    void row_add(int i, int j, i64 q) {
        if (q == 0) return;
        for (int c = 0; c < D.cols; ++c)
            D.at(i, c) = red(chk_add(D.at(i, c), chk_mul(q, D.at(j, c))));
        for (int c = 0; c < U.cols; ++c)
            U.at(i, c) = red(chk_add(U.at(i, c), chk_mul(q, U.at(j, c))));
        for (int r = 0; r < Uinv.rows; ++r)
            Uinv.at(r, j) = red(chk_sub(Uinv.at(r, j), chk_mul(q, Uinv.at(r, i))));
    }
    // col i += q * col j
    void col_add(int i, int j, i64 q) {
        if (q == 0) return;
        for (int r = 0; r < D.rows; ++r)
            D.at(r, i) = red(chk_add(D.at(r, i), chk_mul(q, D.at(r, j))));
        for (int r = 0; r < V.rows; ++r)
            V.at(r, i) = red(chk_add(V.at(r, i), chk_mul(q, V.at(r, j))));
        for (int c = 0; c < Vinv.cols; ++c)
            Vinv.at(j, c) = red(chk_sub(Vinv.at(j, c), chk_mul(q, Vinv.at(i, c))));
    }
    void row_negate(int i) {
        for (int c = 0; c < D.cols; ++c) D.at(i, c) = chk_neg(D.at(i, c));
        for (int c = 0; c < U.cols; ++c) U.at(i, c) = chk_neg(U.at(i, c));
        for (int r = 0; r < Uinv.rows; ++r) Uinv.at(r, i) = chk_neg(Uinv.at(r, i));
    }
};

i64 round_div(i64 a, i64 b) {
    // quotient closest to a/b, ties toward zero; keeps entries balanced
    i64 q = a / b, r = a % b;
    if (std::llabs(r) * 2 > std::llabs(b)) q += (a < 0) == (b < 0) ? 1 : -1;
    return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMat& M, i64 reduce_mod) {
    SnfWork w;
    w.D = M;
    w.U = IntMat::identity(M.rows);
    w.Uinv = IntMat::identity(M.rows);
    w.V = IntMat::identity(M.cols);
    w.Vinv = IntMat::identity(M.cols);
    w.mod = reduce_mod;
    if (w.mod > 0)
        for (i64& v : w.D.a) v = balanced_mod(v, w.mod);

    const int nmin = std::min(M.rows, M.cols);
    for (int t = 0; t < nmin; ++t) {
        // locate the minimal nonzero entry of the trailing submatrix
        int pi = -1, pj = -1;
        for (int i = t; i < M.rows; ++i)
            for (int j = t; j < M.cols; ++j)
                if (w.D.at(i, j) != 0 &&
                    (pi < 0 || std::llabs(w.D.at(i, j)) < std::llabs(w.D.at(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        w.row_swap(t, pi);
        w.col_swap(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < M.rows; ++i) {
                if (w.D.at(i, t) == 0) continue;
                i64 q = round_div(w.D.at(i, t), w.D.at(t, t));
                w.row_add(i, t, chk_neg(q));
                if (w.D.at(i, t) != 0) {
                    w.row_swap(t, i);  // smaller remainder becomes the pivot
                    clean = false;
                }
            }
            for (int j = t + 1; j < M.cols; ++j) {
                if (w.D.at(t, j) == 0) continue;
                i64 q = round_div(w.D.at(t, j), w.D.at(t, t));
                w.col_add(j, t, chk_neg(q));
                if (w.D.at(t, j) != 0) {
                    w.col_swap(t, j);
                    clean = false;
                }
            }
        }
        if (w.D.at(t, t) < 0) w.row_negate(t);

        // enforce d_t | every later entry; a violation folds the offending
        // column into column t and redoes the pivot
        bool redo = false;
        for (int i = t + 1; i < M.rows && !redo; ++i)
            for (int j = t + 1; j < M.cols && !redo; ++j)
                if (w.D.at(i, j) % w.D.at(t, t) != 0) {
                    w.col_add(t, j, 1);
                    redo = true;
                }
        if (redo) --t;
    }

    if (reduce_mod > 0) {
        // Mod-m arithmetic only resolves the diagonal up to multiples of m, so
        // each entry is really gcd(d, m); rows past the diagonal carry the
        // implicit m * e_i generators. A second exact pass over the small
        // diagonal matrix restores the divisibility chain.
        IntMat G(M.rows, M.rows);
        for (int i = 0; i < M.rows; ++i)
            G.at(i, i) = i < nmin ? std::gcd(w.D.at(i, i), reduce_mod) : reduce_mod;
        SmithForm chain = smith_normal_form(G);

        SmithForm out;
        out.diag = std::move(chain.diag);
        out.U = mat_mul(chain.U, w.U);
        out.Uinv = mat_mul(w.Uinv, chain.Uinv);
        for (i64& v : out.U.a) v = balanced_mod(v, reduce_mod);
        for (i64& v : out.Uinv.a) v = balanced_mod(v, reduce_mod);
        out.V = IntMat::identity(M.cols);  // column transform not maintained here
        out.Vinv = IntMat::identity(M.cols);
        out.D = std::move(chain.D);
        return out;
    }

    SmithForm out;
    out.diag.resize(nmin, 0);
    for (int t = 0; t < nmin; ++t) out.diag[t] = w.D.at(t, t);
    out.U = std::move(w.U);
    out.Uinv = std::move(w.Uinv);
    out.V = std::move(w.V);
    out.Vinv = std::move(w.Vinv);
    out.D = std::move(w.D);
    return out;
}

// ---------------------------------------------------------------------------
// Hermite column basis

HermiteBasis hnf_basis(const IntMat& A, bool want_transform) {
    const int rows = A.rows, ncols = A.cols;
    std::vector<std::vector<i64>> cols(ncols);
    for (int j = 0; j < ncols; ++j) cols[j] = A.col(j);
    std::vector<std::vector<i64>> trans;
    if (want_transform) {
        trans.resize(ncols);
        for (int j = 0; j < ncols; ++j) {
            trans[j].assign(ncols, 0);
            trans[j][j] = 1;
        }
    }

    auto col_addmul = [&](int dst, int src, i64 q) {
        if (q == 0) return;
        auto& d = cols[dst];
        auto& s = cols[src];
        for (int i = 0; i < rows; ++i)
            if (s[i] != 0) d[i] = chk_add(d[i], chk_mul(q, s[i]));
        if (want_transform) {
            auto& dt = trans[dst];
            auto& st = trans[src];
            for (int i = 0; i < ncols; ++i)
                if (st[i] != 0) dt[i] = chk_add(dt[i], chk_mul(q, st[i]));
        }
    };
    auto col_swap = [&](int a, int b) {
        std::swap(cols[a], cols[b]);
        if (want_transform) std::swap(trans[a], trans[b]);
    };
    auto col_negate = [&](int j) {
        for (auto& v : cols[j]) v = chk_neg(v);
        if (want_transform)
            for (auto& v : trans[j]) v = chk_neg(v);
    };

    std::vector<int> pivot_rows;
    int r = 0;  // next basis slot
    for (int i = 0; i < rows && r < ncols; ++i) {
        // eliminate row i across columns >= r down to one nonzero
        while (true) {
            int jmin = -1;
            for (int j = r; j < ncols; ++j)
                if (cols[j][i] != 0 && (jmin < 0 || std::llabs(cols[j][i]) < std::llabs(cols[jmin][i])))
                    jmin = j;
            if (jmin < 0) break;
            bool lone = true;
            for (int j = r; j < ncols; ++j) {
                if (j == jmin || cols[j][i] == 0) continue;
                i64 q = round_div(cols[j][i], cols[jmin][i]);
                col_addmul(j, jmin, chk_neg(q));
                if (cols[j][i] != 0) lone = false;
            }
            if (lone) {
                col_swap(r, jmin);
                if (cols[r][i] < 0) col_negate(r);
                pivot_rows.push_back(i);
                ++r;
                break;
            }
        }
    }

    HermiteBasis hb;
    hb.H = IntMat(rows, r);
    for (int j = 0; j < r; ++j) hb.H.set_col(j, cols[j]);
    hb.pivot_rows = std::move(pivot_rows);
    if (want_transform) {
        hb.transform = IntMat(ncols, r);
        for (int j = 0; j < r; ++j) hb.transform.set_col(j, trans[j]);
    }
    return hb;
}

std::optional<std::vector<i64>> solve_in_lattice(const HermiteBasis& hb, std::span<const i64> b) {
    std::vector<i64> rem(b.begin(), b.end());
    const int npiv = static_cast<int>(hb.pivot_rows.size());
    std::vector<i64> c(npiv, 0);
    int k = 0;
    for (int i = 0; i < hb.H.rows; ++i) {
        if (k < npiv && hb.pivot_rows[k] == i) {
            i64 piv = hb.H.at(i, k);
            if (rem[i] % piv != 0) return std::nullopt;
            i64 q = rem[i] / piv;
            c[k] = q;
            if (q != 0)
                for (int r = i; r < hb.H.rows; ++r)
                    rem[r] = chk_sub(rem[r], chk_mul(q, hb.H.at(r, k)));
            ++k;
        } else if (rem[i] != 0) {
            return std::nullopt;
        }
    }
    return c;
}

bool lattice_equal(const IntMat& A, const IntMat& B) {
    if (A.rows != B.rows) return false;
    HermiteBasis ha = hnf_basis(A), hbm = hnf_basis(B);
    for (int j = 0; j < B.cols; ++j)
        if (!solve_in_lattice(ha, B.col(j))) return false;
    for (int j = 0; j < A.cols; ++j)
        if (!solve_in_lattice(hbm, A.col(j))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Congruence lattice solver

i64 balanced_mod(i64 a, i64 m) {
    i64 r = mod_floor(a, m);
    if (2 * r > m) r -= m;
    return r;
}

IntMat column_basis_mod(const IntMat& A, i64 e) {
    if (e <= 0) throw Error("NotContained", "column_basis_mod needs a positive exponent");
    const int r = A.rows;
    std::vector<std::vector<i64>> pivots(r);  // pivot row -> echelon column
    for (int i = 0; i < r; ++i) {
        pivots[i].assign(r, 0);
        pivots[i][i] = e;
    }

    auto feed = [&](std::vector<i64> v) {
        for (auto& x : v) x = balanced_mod(x, e);
        for (int i = 0; i < r; ++i) {
            if (v[i] == 0) continue;
            std::vector<i64>& b = pivots[i];
            // fold the pair into gcd pivot + reduced remainder at row i
            i64 g = std::gcd(std::llabs(v[i]), std::llabs(b[i]));
            i64 x, y;  // x * b[i] + y * v[i] == g
            {
                i64 a0 = b[i], b0 = v[i], x0 = 1, y0 = 0, x1 = 0, y1 = 1;
                while (b0 != 0) {
                    i64 q = a0 / b0;
                    std::tie(a0, b0) = std::pair<i64, i64>(b0, a0 - q * b0);
                    std::tie(x0, x1) = std::pair<i64, i64>(x1, x0 - q * x1);
                    std::tie(y0, y1) = std::pair<i64, i64>(y1, y0 - q * y1);
                }
                if (a0 < 0) { a0 = -a0; x0 = -x0; y0 = -y0; }
                x = x0;
                y = y0;
            }
            i64 cb = b[i] / g, cv = v[i] / g;
            for (int k = i; k < r; ++k) {
                i64 nb = chk_add(chk_mul(x, b[k]), chk_mul(y, v[k]));
                i64 nv = chk_sub(chk_mul(cb, v[k]), chk_mul(cv, b[k]));
                b[k] = balanced_mod(nb, e);
                v[k] = balanced_mod(nv, e);
            }
        }
    };

    for (int j = 0; j < A.cols; ++j) feed(A.col(j));

    IntMat out(r, r);
    for (int i = 0; i < r; ++i) out.set_col(i, pivots[i]);
    return out;
}

CongruenceSolver::CongruenceSolver(int n, i64 exponent) : n_(n), exponent_(exponent) {
    cols_.resize(n);
    for (int j = 0; j < n; ++j) {
        cols_[j].assign(n, 0);
        cols_[j][j] = 1;
    }
}

void CongruenceSolver::add(const SparseRow& row, i64 modulus) {
    if (exponent_ > 0 && (modulus <= 0 || exponent_ % modulus != 0))
        throw Error("NotContained", "row modulus must divide the solver exponent");
    const int k = static_cast<int>(cols_.size());
    if (k == 0) return;
    std::vector<i64> y(k, 0);
    for (int j = 0; j < k; ++j) {
        i64 acc = 0;
        for (auto [i, v] : row.entries)
            if (cols_[j][i] != 0) acc = chk_add(acc, chk_mul(v, cols_[j][i]));
        if (modulus > 0) acc = balanced_mod(acc, modulus);
        y[j] = acc;
    }
    bool satisfied = true;
    for (i64 v : y)
        if (v != 0) {
            satisfied = false;
            break;
        }
    if (satisfied) return;

    // gcd-eliminate y down to a single nonzero slot, mirroring on the basis
    while (true) {
        int jmin = -1;
        for (int j = 0; j < k; ++j)
            if (y[j] != 0 && (jmin < 0 || std::llabs(y[j]) < std::llabs(y[jmin]))) jmin = j;
        bool lone = true;
        for (int j = 0; j < k; ++j) {
            if (j == jmin || y[j] == 0) continue;
            i64 q = round_div(y[j], y[jmin]);
            y[j] = chk_sub(y[j], chk_mul(q, y[jmin]));
            if (modulus > 0) y[j] = balanced_mod(y[j], modulus);
            auto& dj = cols_[j];
            auto& ds = cols_[jmin];
            for (int i = 0; i < n_; ++i)
                if (ds[i] != 0) {
                    dj[i] = chk_sub(dj[i], chk_mul(q, ds[i]));
                    if (exponent_ > 0) dj[i] = balanced_mod(dj[i], exponent_);
                }
            if (y[j] != 0) lone = false;
        }
        if (lone) {
            i64 g = y[jmin];
            if (modulus > 0) {
                i64 step = modulus / std::gcd(std::llabs(g), modulus);
                if (step != 1)
                    for (auto& v : cols_[jmin]) {
                        v = chk_mul(v, step);
                        if (exponent_ > 0) v = balanced_mod(v, exponent_);
                    }
            } else {
                cols_.erase(cols_.begin() + jmin);
            }
            return;
        }
    }
}

IntMat CongruenceSolver::basis() const {
    const int k = static_cast<int>(cols_.size());
    const int extra = exponent_ > 0 ? n_ : 0;
    IntMat B(n_, k + extra);
    for (int j = 0; j < k; ++j) B.set_col(j, cols_[j]);
    for (int i = 0; i < extra; ++i) B.at(i, k + i) = exponent_;
    return B;
}

}  // namespace cohomforge
