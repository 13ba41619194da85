// Lattice coordinate charts on affine subspaces {x : U x = r}.
//
// A chart is x = origin + y * K with K a basis (rows) of the integer kernel
// lattice of U, so integer y correspond exactly to lattice points of the
// subspace when the origin is integral.
#pragma once

#include "polytope.hpp"

namespace ewald {

struct AffineChart {
    std::size_t ambient_dim = 0;
    std::vector<IntVector> basis;  // rows, Hermite-reduced
    RatVector origin;
    bool integral_origin = true;

    std::size_t dim() const { return basis.size(); }

    template <typename Vec>
    RatVector embed(const Vec& y) const
    {
        RatVector x = origin;
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < ambient_dim; ++j)
                x[j] += Rational(y[i]) * Rational(basis[i][j]);
        return x;
    }

    /// Chart coordinates of a point of the subspace.
    RatVector coordinates(const RatVector& x) const
    {
        RatVector d = sub(x, origin);
        RatVector y(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            std::size_t p = 0;
            while (basis[i][p] == 0)
                ++p;
            Rational acc = d[p];
            for (std::size_t k = 0; k < i; ++k)
                acc -= y[k] * Rational(basis[k][p]);
            y[i] = acc / Rational(basis[i][p]);
        }
        if (embed(y) != x)
            throw Error("point is not on the chart subspace");
        return y;
    }

    /// Row a restricted to the chart: (a K^T, a . origin).
    std::pair<IntVector, Rational> restrict_row(const IntVector& a) const
    {
        IntVector r(dim());
        for (std::size_t i = 0; i < dim(); ++i)
            r[i] = dot(a, basis[i]);
        return {r, dot(a, origin)};
    }
};

namespace detail {

// Any rational solution of U x = r, free variables set to zero.
inline std::optional<RatVector> particular_solution(const IntMatrix& U, const RatVector& r)
{
    const std::size_t m = U.rows(), n = U.cols();
    std::vector<RatVector> M(m, RatVector(n + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            M[i][j] = Rational(U(i, j));
        M[i][n] = r[i];
    }
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < m; ++c) {
        std::size_t p = row;
        while (p < m && M[p][c] == 0)
            ++p;
        if (p == m)
            continue;
        std::swap(M[row], M[p]);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || M[i][c] == 0)
                continue;
            Rational f = M[i][c] / M[row][c];
            for (std::size_t j = c; j <= n; ++j)
                M[i][j] -= f * M[row][j];
        }
        pivots.push_back(c);
        ++row;
    }
    for (std::size_t i = row; i < m; ++i)
        if (M[i][n] != 0)
            return std::nullopt;
    RatVector x(n);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = M[i][n] / M[i][pivots[i]];
    return x;
}

} // namespace detail

/// Chart of {x : U x = r}. Returns nullopt when the subspace is empty.
/// The origin is 0 when it lies on the subspace, otherwise an integer point
/// if one exists, otherwise a rational one.
inline std::optional<AffineChart> make_chart(const IntMatrix& U, const RatVector& r)
{
    const std::size_t n = U.cols();
    AffineChart ch;
    ch.ambient_dim = n;
    auto K = kernel_lattice(U, n);
    ch.basis = K.basis;
    if (std::all_of(r.begin(), r.end(), [](const Rational& x) { return x == 0; })) {
        ch.origin = RatVector(n);
        return ch;
    }
    auto rat = detail::particular_solution(U, r);
    if (!rat)
        return std::nullopt;
    if (std::all_of(r.begin(), r.end(), [](const Rational& x) { return is_integer(x); })) {
        IntVector ri;
        for (const auto& x : r)
            ri.push_back(boost::multiprecision::numerator(x));
        if (auto xi = integer_solution(K, ri, n)) {
            ch.origin = to_rat_vector(*xi);
            return ch;
        }
    }
    ch.origin = *rat;
    ch.integral_origin = false;
    return ch;
}

/// Result of restricting an inequality system to a chart.
struct ChartSlice {
    AffineChart chart;
    HPolytope polytope;            // in chart coordinates
    std::vector<int> source_rows;  // ambient row of each facet
};

/// Restricts A x <= c to the chart, skipping the listed rows.
/// Throws GeometryError (empty / not_full_dimensional) like from_inequalities.
inline ChartSlice restrict_to_chart(const AffineChart& ch, const IntMatrix& A, const RatVector& c,
                                    const std::vector<int>& skip = {})
{
    std::vector<IntVector> rows;
    RatVector offs;
    std::vector<int> ambient;
    for (std::size_t j = 0; j < A.rows(); ++j) {
        if (std::find(skip.begin(), skip.end(), static_cast<int>(j)) != skip.end())
            continue;
        auto [a, shift] = ch.restrict_row(A.row(j));
        rows.push_back(std::move(a));
        offs.push_back(c[j] - shift);
        ambient.push_back(static_cast<int>(j));
    }
    std::vector<int> src;
    HPolytope P = HPolytope::from_inequalities(IntMatrix::from_rows(rows, ch.dim()), offs, nullptr, &src);
    ChartSlice out{ch, std::move(P), {}};
    for (int s : src)
        out.source_rows.push_back(ambient[s]);
    return out;
}

/// P' = {A x <= c, U x = r} expressed in the lattice of its own affine hull.
/// Rows that turn out to be implicit equalities are moved into the equation
/// set until the slice is full-dimensional in its chart.
/// Throws GeometryError::empty when the slice is empty.
inline ChartSlice affine_hull_slice(const IntMatrix& A, const RatVector& c, std::vector<IntVector> U, RatVector r)
{
    const std::size_t n = A.cols();
    std::vector<int> eq_rows;
    for (;;) {
        auto ch = make_chart(IntMatrix::from_rows(U, n), r);
        if (!ch)
            throw GeometryError(GeometryError::Kind::empty, "slice is empty");
        std::vector<IntVector> rows;
        RatVector offs;
        std::vector<int> ambient;
        for (std::size_t j = 0; j < A.rows(); ++j) {
            if (std::find(eq_rows.begin(), eq_rows.end(), static_cast<int>(j)) != eq_rows.end())
                continue;
            auto [a, shift] = ch->restrict_row(A.row(j));
            rows.push_back(std::move(a));
            offs.push_back(c[j] - shift);
            ambient.push_back(static_cast<int>(j));
        }
        IntMatrix M = IntMatrix::from_rows(rows, ch->dim());
        try {
            std::vector<int> src;
            HPolytope P = HPolytope::from_inequalities(M, offs, nullptr, &src);
            ChartSlice out{*ch, std::move(P), {}};
            for (int s : src)
                out.source_rows.push_back(ambient[s]);
            return out;
        } catch (const GeometryError& e) {
            if (e.kind() != GeometryError::Kind::not_full_dimensional)
                throw;
        }
        // implicit equalities: nonzero rows tight at every vertex of the slice
        auto raw = enumerate_vertices(M, offs);
        bool added = false;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (is_zero(rows[k]))
                continue;
            bool all = std::all_of(raw.begin(), raw.end(), [&](const RawVertex& v) { return v.tight.test(k); });
            if (all) {
                U.push_back(A.row(ambient[k]));
                r.push_back(c[ambient[k]]);
                eq_rows.push_back(ambient[k]);
                added = true;
            }
        }
        if (!added)
            throw GeometryError(GeometryError::Kind::invalid, "failed to locate the affine hull of a slice");
    }
}

/// The face of P given by its tight facets, as a full-dimensional polytope in its own lattice.
inline ChartSlice face_in_chart(const HPolytope& P, const std::vector<int>& facets, const RatVector& shift = {})
{
    std::vector<IntVector> U;
    RatVector r;
    for (std::size_t i = 0; i < facets.size(); ++i) {
        U.push_back(P.normal(facets[i]));
        r.push_back(P.offset(facets[i]) + (shift.empty() ? Rational(0) : shift[i]));
    }
    auto ch = make_chart(IntMatrix::from_rows(U, P.dim()), r);
    if (!ch)
        throw GeometryError(GeometryError::Kind::empty, "face equations are inconsistent");
    return restrict_to_chart(*ch, P.normals(), P.offsets(), facets);
}

} // namespace ewald
