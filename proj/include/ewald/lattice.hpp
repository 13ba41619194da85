// Exact integer linear algebra: primitive vectors, determinants, Hermite and
// Smith normal forms, kernel lattices and the unimodular basis search.
#pragma once

#include "numeric.hpp"

#include <optional>
#include <utility>

namespace ewald {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols)
    {
        IntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw Error("ragged matrix rows");
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    static IntMatrix from_rows(const std::vector<IntVector>& rows)
    {
        return from_rows(rows, rows.empty() ? 0 : rows.front().size());
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVector row(std::size_t i) const
    {
        return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    IntVector col(std::size_t j) const
    {
        IntVector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            out[i] = (*this)(i, j);
        return out;
    }

    std::vector<IntVector> row_list() const
    {
        std::vector<IntVector> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            out.push_back(row(i));
        return out;
    }

    void set_row(std::size_t i, const IntVector& v)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = v[j];
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    IntMatrix transpose() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    IntMatrix operator*(const IntMatrix& o) const
    {
        if (cols_ != o.rows_)
            throw Error("matrix product dimension mismatch");
        IntMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& a = (*this)(i, k);
                if (a == 0)
                    continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r(i, j) += a * o(k, j);
            }
        return r;
    }

    IntVector operator*(const IntVector& v) const
    {
        if (v.size() != cols_)
            throw Error("matrix-vector dimension mismatch");
        IntVector r(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r[i] += (*this)(i, j) * v[j];
        return r;
    }

    RatVector operator*(const RatVector& v) const
    {
        if (v.size() != cols_)
            throw Error("matrix-vector dimension mismatch");
        RatVector r(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            r[i] = dot(row(i), v);
        return r;
    }

    bool operator==(const IntMatrix& o) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m)
{
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i)
            os << ',';
        os << to_string(m.row(i));
    }
    return os << ']';
}

/// v / gcd(v). The sign is preserved.
inline LatticePoint primitive_part(const LatticePoint& v)
{
    Int g = 0;
    for (const auto& x : v)
        g = gcd_int(g, x);
    if (g == 0)
        throw Error("zero has no primitive part");
    LatticePoint out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = v[i] / g;
    return out;
}

/// Primitive integer vector in the direction of a nonzero rational vector.
inline LatticePoint primitive_direction(const RatVector& v) { return primitive_part(clear_denominators(v)); }

inline Int content(const IntVector& v)
{
    Int g = 0;
    for (const auto& x : v)
        g = gcd_int(g, x);
    return g;
}

/// Exact determinant by Bareiss fraction-free elimination.
inline Int det(IntMatrix m)
{
    if (!m.square())
        throw Error("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

/// Rank over Q of a list of integer rows.
inline std::size_t rank(std::vector<IntVector> rows)
{
    if (rows.empty())
        return 0;
    const std::size_t n = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0)
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[r], rows[p]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0)
                continue;
            Int a = rows[r][c], b = rows[i][c];
            for (std::size_t j = c; j < n; ++j)
                rows[i][j] = rows[i][j] * a - rows[r][j] * b;
            Int g = content(rows[i]);
            if (g > 1)
                for (auto& x : rows[i])
                    x /= g;
        }
        ++r;
    }
    return r;
}

inline std::size_t rank(const IntMatrix& m) { return rank(m.row_list()); }

/// Affine rank (dimension of the affine hull) of a set of rational points.
inline int affine_dimension(const std::vector<RatVector>& pts)
{
    if (pts.empty())
        return -1;
    std::vector<IntVector> diffs;
    diffs.reserve(pts.size());
    for (std::size_t i = 1; i < pts.size(); ++i)
        diffs.push_back(clear_denominators(sub(pts[i], pts[0])));
    return static_cast<int>(rank(std::move(diffs)));
}

struct HermiteResult {
    IntMatrix H;  ///< row-style Hermite normal form
    IntMatrix U;  ///< unimodular transform with H = U * M
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Row-style Hermite normal form: upper echelon, positive pivots, entries
/// above each pivot reduced into [0, pivot).
inline HermiteResult hermite_normal_form(const IntMatrix& M)
{
    HermiteResult res{M, IntMatrix::identity(M.rows()), 0, {}};
    IntMatrix& H = res.H;
    IntMatrix& U = res.U;
    const std::size_t m = M.rows(), n = M.cols();

    auto combine = [&](std::size_t r, std::size_t i, const Int& s, const Int& t, const Int& u, const Int& v) {
        // [row_r; row_i] <- [[s, t], [u, v]] * [row_r; row_i]
        for (IntMatrix* X : {&H, &U}) {
            for (std::size_t j = 0; j < X->cols(); ++j) {
                Int a = (*X)(r, j), b = (*X)(i, j);
                (*X)(r, j) = s * a + t * b;
                (*X)(i, j) = u * a + v * b;
            }
        }
    };

    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        for (std::size_t i = r + 1; i < m; ++i) {
            if (H(i, c) == 0)
                continue;
            Int a = H(r, c), b = H(i, c), s, t;
            Int g = xgcd(a, b, s, t);
            combine(r, i, s, t, Int(-b / g), Int(a / g));
        }
        if (H(r, c) == 0)
            continue;
        if (H(r, c) < 0)
            for (IntMatrix* X : {&H, &U})
                for (std::size_t j = 0; j < X->cols(); ++j)
                    (*X)(r, j) = -(*X)(r, j);
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(H(i, c), H(r, c));
            if (q == 0)
                continue;
            for (IntMatrix* X : {&H, &U})
                for (std::size_t j = 0; j < X->cols(); ++j)
                    (*X)(i, j) -= q * (*X)(r, j);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

/// Nonzero diagonal entries of the Smith normal form (elementary divisors).
inline std::vector<Int> smith_invariants(IntMatrix A)
{
    const std::size_t m = A.rows(), n = A.cols();
    std::vector<Int> out;
    std::size_t t = 0;
    while (t < m && t < n) {
        // pivot: smallest nonzero absolute value in the trailing block
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (A(i, j) != 0 && (pi == m || abs_int(A(i, j)) < abs_int(A(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == m)
            break;
        A.swap_rows(t, pi);
        for (std::size_t i = 0; i < m; ++i)
            std::swap(A(i, t), A(i, pj));
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
            Int q = A(i, t) / A(t, t);
            if (q != 0)
                for (std::size_t j = t; j < n; ++j)
                    A(i, j) -= q * A(t, j);
            if (A(i, t) != 0)
                clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
            Int q = A(t, j) / A(t, t);
            if (q != 0)
                for (std::size_t i = t; i < m; ++i)
                    A(i, j) -= q * A(i, t);
            if (A(t, j) != 0)
                clean = false;
        }
        if (!clean)
            continue;
        // divisibility condition on the rest of the block
        bool divides = true;
        for (std::size_t i = t + 1; i < m && divides; ++i)
            for (std::size_t j = t + 1; j < n; ++j)
                if (A(i, j) % A(t, t) != 0) {
                    for (std::size_t k = t; k < n; ++k)
                        A(t, k) += A(i, k);
                    divides = false;
                    break;
                }
        if (!divides)
            continue;
        out.push_back(abs_int(A(t, t)));
        ++t;
    }
    return out;
}

/// True iff the rows are linearly independent and span a saturated sublattice
/// (every elementary divisor equals 1), i.e. they extend to a basis of Z^n.
inline bool spans_saturated_lattice(const std::vector<IntVector>& rows)
{
    if (rows.empty())
        return true;
    auto inv = smith_invariants(IntMatrix::from_rows(rows));
    if (inv.size() != rows.size())
        return false;
    return std::all_of(inv.begin(), inv.end(), [](const Int& d) { return d == 1; });
}

/// Searches S for n points forming a basis of Z^n (determinant +-1).
///
/// Candidates are visited by max-norm then lexicographically; a partial
/// selection is abandoned as soon as it stops spanning a saturated sublattice.
inline std::optional<std::vector<LatticePoint>> find_unimodular_basis(const std::vector<LatticePoint>& S, int n)
{
    if (n <= 0)
        throw Error("dimension must be positive");
    std::vector<LatticePoint> cand;
    for (const auto& p : S) {
        if (static_cast<int>(p.size()) != n)
            throw Error("point dimension does not match");
        if (!is_zero(p))
            cand.push_back(p);
    }
    std::sort(cand.begin(), cand.end(), norm_lex_less);
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::vector<LatticePoint> sel;
    const std::size_t need = static_cast<std::size_t>(n);
    auto dfs = [&](auto&& self, std::size_t start) -> bool {
        if (sel.size() == need)
            return true;
        for (std::size_t i = start; i + (need - sel.size()) <= cand.size(); ++i) {
            sel.push_back(cand[i]);
            if (spans_saturated_lattice(sel) && self(self, i + 1))
                return true;
            sel.pop_back();
        }
        return false;
    };
    if (dfs(dfs, 0))
        return sel;
    return std::nullopt;
}

/// Basis of the lattice {x in Z^n : U x = 0} plus the data needed to solve U x = b.
struct KernelLattice {
    std::vector<IntVector> basis;  ///< rows, canonicalized by Hermite form
    IntMatrix W;                   ///< unimodular, W * U^T is in Hermite form
    IntMatrix H;                   ///< W * U^T
    std::size_t rank = 0;
};

inline KernelLattice kernel_lattice(const IntMatrix& U, std::size_t n)
{
    KernelLattice out;
    if (U.rows() == 0) {
        out.W = IntMatrix::identity(n);
        out.H = IntMatrix(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            out.basis.push_back(out.W.row(i));
        return out;
    }
    auto hnf = hermite_normal_form(U.transpose());
    out.W = hnf.U;
    out.H = hnf.H;
    out.rank = hnf.rank;
    std::vector<IntVector> raw;
    for (std::size_t i = hnf.rank; i < n; ++i)
        raw.push_back(hnf.U.row(i));
    if (!raw.empty()) {
        auto canon = hermite_normal_form(IntMatrix::from_rows(raw, n));
        for (std::size_t i = 0; i < canon.rank; ++i)
            out.basis.push_back(canon.H.row(i));
    }
    return out;
}

/// Integer solution of U x = b (if any), using a precomputed kernel lattice.
inline std::optional<IntVector> integer_solution(const KernelLattice& K, const IntVector& b, std::size_t n)
{
    // x = W^T z with H^T z = b, where H = W U^T is upper echelon.
    const std::size_t r = K.rank;
    IntVector z(n);
    const IntMatrix& H = K.H;
    std::size_t row = 0;
    std::vector<std::size_t> pivcol;
    for (std::size_t c = 0; c < H.cols() && row < r; ++c)
        if (H(row, c) != 0) {
            pivcol.push_back(c);
            ++row;
        }
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t c = pivcol[i];
        Int acc = b[c];
        for (std::size_t k = 0; k < i; ++k)
            acc -= z[k] * H(k, c);
        if (acc % H(i, c) != 0)
            return std::nullopt;
        z[i] = acc / H(i, c);
    }
    // consistency on every equation
    for (std::size_t c = 0; c < H.cols(); ++c) {
        Int acc = 0;
        for (std::size_t k = 0; k < r; ++k)
            acc += z[k] * H(k, c);
        if (acc != b[c])
            return std::nullopt;
    }
    IntVector x(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < r; ++k)
            x[i] += K.W(k, i) * z[k];
    return x;
}

/// Solves the square system A x = b over Q. Returns nullopt when singular.
inline std::optional<RatVector> solve_rational(const IntMatrix& A, const RatVector& b)
{
    const std::size_t n = A.rows();
    if (!A.square() || b.size() != n)
        throw Error("solve_rational expects a square system");
    std::vector<RatVector> M(n, RatVector(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            M[i][j] = Rational(A(i, j));
        M[i][n] = b[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && M[p][c] == 0)
            ++p;
        if (p == n)
            return std::nullopt;
        std::swap(M[c], M[p]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || M[i][c] == 0)
                continue;
            Rational f = M[i][c] / M[c][c];
            for (std::size_t j = c; j <= n; ++j)
                M[i][j] -= f * M[c][j];
        }
    }
    RatVector x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = M[i][n] / M[i][i];
    return x;
}

/// Inverse of a unimodular integer matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& A)
{
    const std::size_t n = A.rows();
    Int d = det(A);
    if (d != 1 && d != -1)
        throw Error("matrix is not unimodular");
    IntMatrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        RatVector e(n);
        e[j] = 1;
        auto x = solve_rational(A, e);
        for (std::size_t i = 0; i < n; ++i)
            inv(i, j) = boost::multiprecision::numerator((*x)[i]);
    }
    return inv;
}

/// Unimodular matrix G with G * v = e_1, for primitive v.
inline IntMatrix unimodular_completion(const LatticePoint& v)
{
    IntMatrix col(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i)
        col(i, 0) = v[i];
    auto hnf = hermite_normal_form(col);
    if (hnf.rank != 1 || hnf.H(0, 0) != 1)
        throw Error("vector is not primitive");
    return hnf.U;
}

} // namespace ewald
