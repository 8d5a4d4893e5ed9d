#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cohomforge {

using i64 = long long;

/// Domain error with a machine-readable code ("NotNormal", "NotCocycle", ...).
struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& msg)
        : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

i64 chk_add(i64 a, i64 b);
i64 chk_sub(i64 a, i64 b);
i64 chk_mul(i64 a, i64 b);
i64 chk_neg(i64 a);

/// Euclidean remainder in [0, m) for m > 0.
i64 mod_floor(i64 a, i64 m);

/// Dense integer matrix, row-major. All arithmetic is exact; overflow of
/// the 64-bit range throws OverflowDetected.
struct IntMat {
    int rows = 0, cols = 0;
    std::vector<i64> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    static IntMat identity(int n);

    i64& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    i64 at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    std::vector<i64> col(int j) const;
    void set_col(int j, std::span<const i64> v);

    std::vector<i64> apply(std::span<const i64> x) const;  // this * x
    IntMat transposed() const;

    bool operator==(const IntMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

IntMat mat_mul(const IntMat& A, const IntMat& B);
IntMat hstack(const IntMat& A, const IntMat& B);

/// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ...
/// Uinv and Vinv are maintained alongside so callers never invert.
struct SmithForm {
    IntMat U, Uinv, V, Vinv, D;
    std::vector<i64> diag;  // nonnegative, divisibility chain
};

/// With reduce_mod = m > 0 the caller promises span(M) contains m * Z^rows;
/// every intermediate entry is then kept balanced mod m, so the elimination
/// cannot overflow no matter how wide or ill-conditioned M is. In that mode
/// U and Uinv are only meaningful mod m, V/Vinv are not maintained, and diag
/// has one entry per row (all dividing m).
SmithForm smith_normal_form(const IntMat& M, i64 reduce_mod = 0);

/// Column Hermite-style basis of the lattice spanned by the columns of A.
/// Columns of H have strictly increasing first-nonzero rows. When
/// want_transform, transform satisfies A * transform = H column-for-column.
struct HermiteBasis {
    IntMat H;
    std::vector<int> pivot_rows;
    IntMat transform;  // A.cols x H.cols, only if requested
};

HermiteBasis hnf_basis(const IntMat& A, bool want_transform = false);

/// Coefficients c with H*c = b, or nullopt when b is outside the lattice.
std::optional<std::vector<i64>> solve_in_lattice(const HermiteBasis& hb, std::span<const i64> b);

/// True iff the two column families span the same lattice.
bool lattice_equal(const IntMat& A, const IntMat& B);

struct SparseRow {
    std::vector<std::pair<int, i64>> entries;  // (column, coefficient)
};

/// Balanced residue in (-m/2, m/2] for m > 0.
i64 balanced_mod(i64 a, i64 m);

/// Compact column-echelon generating set of span(A) + e * Z^rows for e > 0,
/// entries kept balanced mod e. At most `rows` columns; lets Smith
/// computations on wide small-exponent lattices stay bounded.
IntMat column_basis_mod(const IntMat& A, i64 e);

/// Incrementally computes the lattice { x : r.x == 0 (mod m_r) for every
/// added constraint row r }. Modulus 0 means an exact equation over Z.
/// Rows already satisfied by the current lattice are O(k) to discard, so
/// feeding millions of mostly-redundant rows is cheap.
///
/// A nonzero `exponent` promises that every row modulus divides it; the
/// solution lattice then contains exponent * Z^n, entries are kept reduced
/// so they never grow, and basis() includes the exponent * I generators.
class CongruenceSolver {
public:
    explicit CongruenceSolver(int n, i64 exponent = 0);
    void add(const SparseRow& row, i64 modulus);
    IntMat basis() const;  // n x k, columns span the solution lattice
    int dimension() const { return static_cast<int>(cols_.size()); }

private:
    int n_;
    i64 exponent_;
    std::vector<std::vector<i64>> cols_;  // lattice basis, column vectors
};

}  // namespace cohomforge
