// Exact polytope representations and conversions.
//
// HPolytope is an irredundant facet description with primitive integer
// normals and rational offsets. It is validated on construction (bounded,
// full-dimensional, irredundant) and carries its vertex set and the
// vertex-facet incidence, which every other module consumes.
#pragma once

#include "double_description.hpp"
#include "lattice.hpp"

#include <boost/dynamic_bitset.hpp>

#include <functional>
#include <map>
#include <optional>
#include <set>

namespace ewald {

using FacetSet = boost::dynamic_bitset<>;

class GeometryError : public Error {
public:
    enum class Kind { empty, unbounded, not_full_dimensional, invalid };
    GeometryError(Kind k, const std::string& msg) : Error(msg), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct VPolytope {
    std::size_t dim = 0;
    std::vector<RatVector> vertices;
};

/// A face identified by the facets tight on it.
struct FaceRef {
    std::vector<int> tight_facets;  // sorted
    int codim = 0;

    auto operator<=>(const FaceRef&) const = default;
};

inline std::string to_string(const FaceRef& f)
{
    std::string s = "{";
    for (std::size_t i = 0; i < f.tight_facets.size(); ++i)
        s += (i ? "," : "") + std::to_string(f.tight_facets[i]);
    return s + "}";
}

struct NormalFanSignature {
    std::vector<std::vector<int>> cones;  // sorted, one per vertex
    bool operator==(const NormalFanSignature&) const = default;
};

/// A vertex of an inequality system together with its tight rows.
struct RawVertex {
    RatVector point;
    FacetSet tight;
};

namespace detail {

// Integer form of a rational system: rows scaled so that A x <= c is integral.
struct IntSystem {
    std::vector<IntVector> A;
    IntVector c;
};

inline IntSystem integral_system(const IntMatrix& A, const RatVector& c)
{
    IntSystem s;
    for (std::size_t j = 0; j < A.rows(); ++j) {
        Int den = boost::multiprecision::denominator(c[j]);
        IntVector row = A.row(j);
        for (auto& x : row)
            x *= den;
        s.A.push_back(std::move(row));
        s.c.push_back(boost::multiprecision::numerator(c[j]));
    }
    return s;
}

inline Int binomial_capped(std::size_t m, std::size_t k, const Int& cap)
{
    if (k > m)
        return 0;
    Int r = 1;
    for (std::size_t i = 0; i < k; ++i) {
        r = r * (m - i) / (i + 1);
        if (r > cap)
            return cap + 1;
    }
    return r;
}

} // namespace detail

/// Vertices of {A x <= c} by depth-first search over independent n-subsets of
/// rows with incremental fraction-free elimination. The system must be bounded.
inline std::vector<RawVertex> enumerate_vertices_subsets(const IntMatrix& A, const RatVector& c)
{
    const std::size_t m = A.rows(), n = A.cols();
    auto sys = detail::integral_system(A, c);
    std::map<IntVector, FacetSet> found;  // key: (D, X...) normalized

    std::vector<IntVector> ech;  // augmented rows, length n+1
    std::vector<std::size_t> piv;

    auto leaf = [&]() {
        IntVector X(n);
        Int D = 1;
        for (std::size_t kk = n; kk-- > 0;) {
            const IntVector& row = ech[kk];
            const std::size_t p = piv[kk];
            Int s = row[n] * D;
            for (std::size_t l = kk + 1; l < n; ++l)
                s -= row[piv[l]] * X[piv[l]];
            const Int& a = row[p];
            for (std::size_t l = kk + 1; l < n; ++l)
                X[piv[l]] *= a;
            X[p] = s;
            D *= a;
        }
        if (D < 0) {
            D = -D;
            for (auto& x : X)
                x = -x;
        }
        Int g = D;
        for (const auto& x : X)
            g = gcd_int(g, x);
        if (g > 1) {
            D /= g;
            for (auto& x : X)
                x /= g;
        }
        FacetSet tight(m);
        for (std::size_t j = 0; j < m; ++j) {
            Int lhs = dot(sys.A[j], X);
            Int rhs = sys.c[j] * D;
            if (lhs > rhs)
                return;
            if (lhs == rhs)
                tight.set(j);
        }
        IntVector key;
        key.reserve(n + 1);
        key.push_back(D);
        key.insert(key.end(), X.begin(), X.end());
        found.emplace(std::move(key), std::move(tight));
    };

    auto dfs = [&](auto&& self, std::size_t start) -> void {
        if (ech.size() == n) {
            leaf();
            return;
        }
        for (std::size_t i = start; i + (n - ech.size()) <= m; ++i) {
            IntVector row = sys.A[i];
            row.push_back(sys.c[i]);
            for (std::size_t k = 0; k < ech.size(); ++k) {
                const Int& f = row[piv[k]];
                if (f == 0)
                    continue;
                Int a = ech[k][piv[k]];
                Int ff = f;
                for (std::size_t j = 0; j <= n; ++j)
                    row[j] = row[j] * a - ech[k][j] * ff;
                Int g = content(row);
                if (g > 1)
                    for (auto& x : row)
                        x /= g;
            }
            std::size_t p = 0;
            while (p < n && row[p] == 0)
                ++p;
            if (p == n)
                continue;
            ech.push_back(std::move(row));
            piv.push_back(p);
            self(self, i + 1);
            ech.pop_back();
            piv.pop_back();
        }
    };
    if (n == 0) {
        FacetSet tight(m);
        for (std::size_t j = 0; j < m; ++j) {
            if (sys.c[j] < 0)
                return {};
            if (sys.c[j] == 0)
                tight.set(j);
        }
        return {RawVertex{{}, tight}};
    }
    dfs(dfs, 0);

    std::vector<RawVertex> out;
    out.reserve(found.size());
    for (auto& [key, tight] : found) {
        RatVector p(n);
        for (std::size_t i = 0; i < n; ++i)
            p[i] = Rational(key[i + 1], key[0]);
        out.push_back(RawVertex{std::move(p), tight});
    }
    std::sort(out.begin(), out.end(), [](const RawVertex& a, const RawVertex& b) { return a.point < b.point; });
    return out;
}

/// Vertices of {A x <= c} through the double description of its homogenization.
/// Throws GeometryError::unbounded if the system has recession directions.
inline std::vector<RawVertex> enumerate_vertices_dd(const IntMatrix& A, const RatVector& c)
{
    const std::size_t m = A.rows(), n = A.cols();
    auto sys = detail::integral_system(A, c);
    std::vector<IntVector> rows;
    for (std::size_t j = 0; j < m; ++j) {
        IntVector r(n + 1);
        for (std::size_t i = 0; i < n; ++i)
            r[i] = -sys.A[j][i];
        r[n] = sys.c[j];
        rows.push_back(std::move(r));
    }
    IntVector t(n + 1);
    t[n] = 1;
    rows.push_back(t);
    std::vector<IntVector> rays;
    try {
        rays = extreme_rays(rows, n + 1);
    } catch (const Error&) {
        throw GeometryError(GeometryError::Kind::unbounded, "inequality system has a lineality space");
    }
    std::vector<RawVertex> out;
    for (const auto& r : rays) {
        if (r[n] == 0)
            throw GeometryError(GeometryError::Kind::unbounded, "inequality system is unbounded");
        RatVector p(n);
        for (std::size_t i = 0; i < n; ++i)
            p[i] = Rational(r[i], r[n]);
        FacetSet tight(m);
        for (std::size_t j = 0; j < m; ++j)
            if (dot(A.row(j), p) == c[j])
                tight.set(j);
        out.push_back(RawVertex{std::move(p), tight});
    }
    std::sort(out.begin(), out.end(), [](const RawVertex& a, const RawVertex& b) { return a.point < b.point; });
    return out;
}

/// True iff {d : A d <= 0} = {0}.
inline bool has_trivial_recession_cone(const IntMatrix& A)
{
    const std::size_t n = A.cols();
    if (n == 0)
        return true;
    if (rank(A) < n)
        return false;
    std::vector<IntVector> rows;
    for (std::size_t j = 0; j < A.rows(); ++j)
        rows.push_back(negated(A.row(j)));
    return extreme_rays(rows, n).empty();
}

/// Subset enumeration is used up to this many n-subsets, double description beyond.
inline constexpr long long kSubsetEnumerationLimit = 250000;

inline std::vector<RawVertex> enumerate_vertices(const IntMatrix& A, const RatVector& c)
{
    auto count = detail::binomial_capped(A.rows(), A.cols(), Int(kSubsetEnumerationLimit));
    if (count > kSubsetEnumerationLimit)
        return enumerate_vertices_dd(A, c);
    return enumerate_vertices_subsets(A, c);
}

class HPolytope {
public:
    HPolytope() = default;

    /// Builds a validated polytope from an arbitrary inequality system A x <= c.
    /// Rows are made primitive, duplicates and redundant rows are dropped.
    /// `notes` receives one line per reduction; `source_rows` maps kept facets
    /// to input rows.
    static HPolytope from_inequalities(const IntMatrix& A, const RatVector& c, std::vector<std::string>* notes = nullptr,
                                       std::vector<int>* source_rows = nullptr)
    {
        const std::size_t n = A.cols();
        if (c.size() != A.rows())
            throw GeometryError(GeometryError::Kind::invalid, "offset count does not match normal rows");

        // primitive rows, trivial rows removed, duplicates merged
        std::vector<IntVector> rows;
        RatVector offs;
        std::vector<int> src;
        std::map<IntVector, std::size_t> seen;
        for (std::size_t j = 0; j < A.rows(); ++j) {
            IntVector a = A.row(j);
            Rational b = c[j];
            Int g = content(a);
            if (g == 0) {
                if (b < 0)
                    throw GeometryError(GeometryError::Kind::empty, "inequality 0 <= " + b.str() + " is infeasible");
                if (notes)
                    notes->push_back("row " + std::to_string(j) + " has zero normal and was dropped");
                continue;
            }
            if (g != 1) {
                for (auto& x : a)
                    x /= g;
                b /= Rational(g);
                if (notes)
                    notes->push_back("row " + std::to_string(j) + " divided by " + g.str());
            }
            auto it = seen.find(a);
            if (it != seen.end()) {
                if (notes)
                    notes->push_back("row " + std::to_string(j) + " duplicates the normal of row " +
                                     std::to_string(src[it->second]));
                if (b < offs[it->second]) {
                    offs[it->second] = b;
                    src[it->second] = static_cast<int>(j);
                }
                continue;
            }
            seen.emplace(a, rows.size());
            rows.push_back(std::move(a));
            offs.push_back(b);
            src.push_back(static_cast<int>(j));
        }

        IntMatrix M = IntMatrix::from_rows(rows, n);
        if (n > 0 && !has_trivial_recession_cone(M))
            throw GeometryError(GeometryError::Kind::unbounded, "inequality system is unbounded");
        auto raw = enumerate_vertices(M, offs);
        if (raw.empty())
            throw GeometryError(GeometryError::Kind::empty, "inequality system is infeasible");
        std::vector<RatVector> pts;
        for (const auto& r : raw)
            pts.push_back(r.point);
        if (affine_dimension(pts) != static_cast<int>(n))
            throw GeometryError(GeometryError::Kind::not_full_dimensional, "polytope is not full-dimensional");

        // irredundancy: a row is a facet iff its tight vertices span a hyperplane
        std::vector<std::size_t> keep;
        for (std::size_t j = 0; j < rows.size(); ++j) {
            std::vector<RatVector> tight;
            for (const auto& r : raw)
                if (r.tight.test(j))
                    tight.push_back(r.point);
            if (affine_dimension(tight) == static_cast<int>(n) - 1)
                keep.push_back(j);
            else if (notes)
                notes->push_back("row " + std::to_string(src[j]) + " is redundant and was dropped");
        }

        HPolytope P;
        P.dim_ = n;
        P.normals_ = IntMatrix(keep.size(), n);
        for (std::size_t k = 0; k < keep.size(); ++k) {
            P.normals_.set_row(k, rows[keep[k]]);
            P.offsets_.push_back(offs[keep[k]]);
        }
        for (const auto& r : raw) {
            FacetSet t(keep.size());
            for (std::size_t k = 0; k < keep.size(); ++k)
                if (r.tight.test(keep[k]))
                    t.set(k);
            P.vertices_.push_back(r.point);
            P.vertex_facets_.push_back(std::move(t));
        }
        if (source_rows) {
            source_rows->clear();
            for (auto k : keep)
                source_rows->push_back(src[k]);
        }
        return P;
    }

    /// Like from_inequalities, but every row must already be a primitive facet.
    static HPolytope from_facets(const IntMatrix& A, const RatVector& c)
    {
        std::vector<std::string> notes;
        HPolytope P = from_inequalities(A, c, &notes);
        if (!notes.empty())
            throw GeometryError(GeometryError::Kind::invalid, "facet description is not irredundant: " + notes.front());
        return P;
    }

    static HPolytope from_facets(const std::vector<IntVector>& rows, const std::vector<Int>& offsets)
    {
        std::size_t n = rows.empty() ? 0 : rows.front().size();
        return from_facets(IntMatrix::from_rows(rows, n), RatVector(offsets.begin(), offsets.end()));
    }

    std::size_t dim() const { return dim_; }
    std::size_t num_facets() const { return normals_.rows(); }
    std::size_t num_vertices() const { return vertices_.size(); }
    const IntMatrix& normals() const { return normals_; }
    IntVector normal(std::size_t j) const { return normals_.row(j); }
    const RatVector& offsets() const { return offsets_; }
    const Rational& offset(std::size_t j) const { return offsets_[j]; }
    const std::vector<RatVector>& vertices() const { return vertices_; }
    const std::vector<FacetSet>& vertex_facets() const { return vertex_facets_; }

    bool is_simple() const
    {
        return std::all_of(vertex_facets_.begin(), vertex_facets_.end(),
                           [&](const FacetSet& t) { return t.count() == dim_; });
    }

    bool is_lattice() const
    {
        return std::all_of(vertices_.begin(), vertices_.end(), [](const RatVector& v) { return is_integral(v); });
    }

    bool origin_in_interior() const
    {
        return std::all_of(offsets_.begin(), offsets_.end(), [](const Rational& b) { return b > 0; });
    }

    template <typename Vec>
    bool contains(const Vec& x) const
    {
        for (std::size_t j = 0; j < num_facets(); ++j)
            if (dot(normals_.row(j), x) > offsets_[j])
                return false;
        return true;
    }

    template <typename Vec>
    bool contains_in_interior(const Vec& x) const
    {
        for (std::size_t j = 0; j < num_facets(); ++j)
            if (dot(normals_.row(j), x) >= offsets_[j])
                return false;
        return true;
    }

    /// Facets whose supporting hyperplane contains x.
    template <typename Vec>
    FacetSet tight_facets(const Vec& x) const
    {
        FacetSet t(num_facets());
        for (std::size_t j = 0; j < num_facets(); ++j)
            if (dot(normals_.row(j), x) == offsets_[j])
                t.set(j);
        return t;
    }

    /// Same polytope with an identical row order (used for exact equality).
    bool operator==(const HPolytope& o) const
    {
        return dim_ == o.dim_ && normals_ == o.normals_ && offsets_ == o.offsets_;
    }

    /// Equality up to a permutation of the facet rows.
    bool same_facets(const HPolytope& o) const
    {
        if (dim_ != o.dim_ || num_facets() != o.num_facets())
            return false;
        std::set<std::pair<IntVector, Rational>> a, b;
        for (std::size_t j = 0; j < num_facets(); ++j)
            a.emplace(normal(j), offset(j));
        for (std::size_t j = 0; j < o.num_facets(); ++j)
            b.emplace(o.normal(j), o.offset(j));
        return a == b;
    }

private:
    std::size_t dim_ = 0;
    IntMatrix normals_;
    RatVector offsets_;
    std::vector<RatVector> vertices_;
    std::vector<FacetSet> vertex_facets_;
};

inline HPolytope make_polytope(const std::vector<IntVector>& rows, const std::vector<Int>& offsets)
{
    return HPolytope::from_facets(rows, offsets);
}

inline VPolytope vertices(const HPolytope& P) { return VPolytope{P.dim(), P.vertices()}; }

/// Lattice points of {A x <= c} inside the integer box [lo, hi], in
/// lexicographic order. Partial sums prune the scan coordinate by coordinate.
inline std::vector<LatticePoint> lattice_points_in_box(const IntMatrix& A, const RatVector& c, const IntVector& lo,
                                                       const IntVector& hi)
{
    const std::size_t m = A.rows(), n = A.cols();
    std::vector<LatticePoint> out;
    for (std::size_t i = 0; i < n; ++i)
        if (lo[i] > hi[i])
            return out;
    IntVector cf(m);
    for (std::size_t j = 0; j < m; ++j)
        cf[j] = floor(c[j]);
    if (n == 0) {
        for (std::size_t j = 0; j < m; ++j)
            if (cf[j] < 0)
                return out;
        out.push_back({});
        return out;
    }
    // tail[j][i] = min over the box of sum_{k >= i} A(j,k) x_k
    std::vector<IntVector> tail(m, IntVector(n + 1));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = n; i-- > 0;) {
            const Int& a = A(j, i);
            tail[j][i] = tail[j][i + 1] + (a >= 0 ? Int(a * lo[i]) : Int(a * hi[i]));
        }
    LatticePoint x(n);
    IntVector partial(m);
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == n) {
            out.push_back(x);
            return;
        }
        for (Int v = lo[i]; v <= hi[i]; ++v) {
            x[i] = v;
            bool ok = true;
            for (std::size_t j = 0; j < m; ++j) {
                partial[j] += A(j, i) * v;
                if (partial[j] + tail[j][i + 1] > cf[j])
                    ok = false;
            }
            if (ok)
                self(self, i + 1);
            for (std::size_t j = 0; j < m; ++j)
                partial[j] -= A(j, i) * v;
        }
    };
    rec(rec, 0);
    return out;
}

/// Integer bounding box of a set of rational points, rounded inward.
inline std::pair<IntVector, IntVector> integer_bounding_box(const std::vector<RatVector>& pts, std::size_t n)
{
    IntVector lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational mn = pts.front()[i], mx = pts.front()[i];
        for (const auto& p : pts) {
            mn = std::min(mn, p[i]);
            mx = std::max(mx, p[i]);
        }
        lo[i] = ceil(mn);
        hi[i] = floor(mx);
    }
    return {lo, hi};
}

inline std::vector<LatticePoint> lattice_points(const HPolytope& P)
{
    auto [lo, hi] = integer_bounding_box(P.vertices(), P.dim());
    return lattice_points_in_box(P.normals(), P.offsets(), lo, hi);
}

/// Vertex indices of the face cut out by the given facets.
inline std::vector<std::size_t> face_vertices(const HPolytope& P, const std::vector<int>& facets)
{
    FacetSet want(P.num_facets());
    for (int f : facets)
        want.set(static_cast<std::size_t>(f));
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < P.num_vertices(); ++v)
        if (want.is_subset_of(P.vertex_facets()[v]))
            out.push_back(v);
    return out;
}

inline std::vector<RatVector> face_points(const HPolytope& P, const FaceRef& f)
{
    std::vector<RatVector> out;
    for (auto v : face_vertices(P, f.tight_facets))
        out.push_back(P.vertices()[v]);
    return out;
}

/// True iff the facets of f meet P in a nonempty face of codimension f.codim.
inline bool is_face(const HPolytope& P, const FaceRef& f)
{
    for (int j : f.tight_facets)
        if (j < 0 || static_cast<std::size_t>(j) >= P.num_facets())
            return false;
    if (!std::is_sorted(f.tight_facets.begin(), f.tight_facets.end()))
        return false;
    auto pts = face_points(P, f);
    if (pts.empty())
        return false;
    return affine_dimension(pts) == static_cast<int>(P.dim()) - f.codim;
}

/// All faces of a simple polytope with the given codimension, as tight-facet sets.
inline std::vector<FaceRef> faces(const HPolytope& P, int codim)
{
    const int n = static_cast<int>(P.dim());
    if (!P.is_simple())
        throw Error("face lattice requires simple polytope");
    if (codim < 0 || codim > n)
        throw Error("codimension out of range");
    std::set<std::vector<int>> acc;
    for (const auto& t : P.vertex_facets()) {
        std::vector<int> idx;
        for (auto j = t.find_first(); j != FacetSet::npos; j = t.find_next(j))
            idx.push_back(static_cast<int>(j));
        // every codim-subset of the n facets at a simple vertex is a face
        std::vector<bool> mask(idx.size(), false);
        std::fill(mask.begin(), mask.begin() + codim, true);
        do {
            std::vector<int> s;
            for (std::size_t i = 0; i < idx.size(); ++i)
                if (mask[i])
                    s.push_back(idx[i]);
            acc.insert(std::move(s));
        } while (std::prev_permutation(mask.begin(), mask.end()));
    }
    std::vector<FaceRef> out;
    for (const auto& s : acc)
        out.push_back(FaceRef{s, codim});
    return out;
}

/// A face of an arbitrary (possibly non-simple) polytope.
struct FaceInfo {
    boost::dynamic_bitset<> vertices;
    FacetSet facets;
    int dim = 0;
};

/// Face lattice by iterated intersection of facet vertex sets. Includes P itself.
inline std::vector<FaceInfo> all_faces(const HPolytope& P)
{
    const std::size_t nv = P.num_vertices(), m = P.num_facets();
    std::vector<boost::dynamic_bitset<>> facet_verts(m, boost::dynamic_bitset<>(nv));
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t j = 0; j < m; ++j)
            if (P.vertex_facets()[v].test(j))
                facet_verts[j].set(v);
    auto dim_of = [&](const boost::dynamic_bitset<>& s) {
        std::vector<RatVector> pts;
        for (auto v = s.find_first(); v != boost::dynamic_bitset<>::npos; v = s.find_next(v))
            pts.push_back(P.vertices()[v]);
        return affine_dimension(pts);
    };
    auto facets_of = [&](const boost::dynamic_bitset<>& s) {
        FacetSet f(m);
        for (std::size_t j = 0; j < m; ++j)
            if (s.is_subset_of(facet_verts[j]))
                f.set(j);
        return f;
    };
    std::vector<FaceInfo> out;
    boost::dynamic_bitset<> all(nv);
    all.set();
    out.push_back(FaceInfo{all, FacetSet(m), static_cast<int>(P.dim())});
    std::vector<boost::dynamic_bitset<>> level;
    std::set<boost::dynamic_bitset<>> seen;
    for (std::size_t j = 0; j < m; ++j)
        if (seen.insert(facet_verts[j]).second)
            level.push_back(facet_verts[j]);
    int d = static_cast<int>(P.dim()) - 1;
    while (d >= 0 && !level.empty()) {
        std::vector<boost::dynamic_bitset<>> next;
        for (const auto& s : level) {
            out.push_back(FaceInfo{s, facets_of(s), d});
            if (d == 0)
                continue;
            for (std::size_t j = 0; j < m; ++j) {
                auto t = s & facet_verts[j];
                if (t == s || t.none() || seen.count(t))
                    continue;
                if (dim_of(t) == d - 1) {
                    seen.insert(t);
                    next.push_back(t);
                }
            }
        }
        level = std::move(next);
        --d;
    }
    return out;
}

inline NormalFanSignature normal_fan_signature(const HPolytope& P)
{
    NormalFanSignature sig;
    for (const auto& t : P.vertex_facets()) {
        std::vector<int> cone;
        for (auto j = t.find_first(); j != FacetSet::npos; j = t.find_next(j))
            cone.push_back(static_cast<int>(j));
        sig.cones.push_back(std::move(cone));
    }
    std::sort(sig.cones.begin(), sig.cones.end());
    return sig;
}

/// Equal normal fans: the same facet normals and the same vertex cones,
/// compared through the normal vectors so that row order is irrelevant.
inline bool normally_isomorphic(const HPolytope& P, const HPolytope& Q)
{
    if (P.dim() != Q.dim() || P.num_facets() != Q.num_facets() || P.num_vertices() != Q.num_vertices())
        return false;
    auto cones = [](const HPolytope& X) {
        std::vector<std::vector<IntVector>> out;
        for (const auto& t : X.vertex_facets()) {
            std::vector<IntVector> c;
            for (auto j = t.find_first(); j != FacetSet::npos; j = t.find_next(j))
                c.push_back(X.normal(j));
            std::sort(c.begin(), c.end());
            out.push_back(std::move(c));
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    std::vector<IntVector> np = P.normals().row_list(), nq = Q.normals().row_list();
    std::sort(np.begin(), np.end());
    std::sort(nq.begin(), nq.end());
    return np == nq && cones(P) == cones(Q);
}

/// True iff the normal fan of Q refines the normal fan of P.
inline bool normal_fan_refines(const HPolytope& Q, const HPolytope& P)
{
    if (P.dim() != Q.dim())
        return false;
    const std::size_t nv = P.num_vertices();
    std::vector<boost::dynamic_bitset<>> maximizers;
    for (std::size_t j = 0; j < Q.num_facets(); ++j) {
        IntVector t = Q.normal(j);
        std::vector<Rational> vals(nv);
        Rational best;
        for (std::size_t v = 0; v < nv; ++v) {
            vals[v] = dot(t, P.vertices()[v]);
            if (v == 0 || vals[v] > best)
                best = vals[v];
        }
        boost::dynamic_bitset<> b(nv);
        for (std::size_t v = 0; v < nv; ++v)
            if (vals[v] == best)
                b.set(v);
        maximizers.push_back(std::move(b));
    }
    for (const auto& t : Q.vertex_facets()) {
        boost::dynamic_bitset<> common(nv);
        common.set();
        for (auto j = t.find_first(); j != FacetSet::npos; j = t.find_next(j))
            common &= maximizers[j];
        if (common.none())
            return false;
    }
    return true;
}

/// Vertices u_F / b_F of the dual polytope.
inline VPolytope dual(const HPolytope& P)
{
    if (!P.origin_in_interior())
        throw Error("origin is not in the interior");
    VPolytope D{P.dim(), {}};
    for (std::size_t j = 0; j < P.num_facets(); ++j) {
        RatVector v(P.dim());
        for (std::size_t i = 0; i < P.dim(); ++i)
            v[i] = Rational(P.normals()(j, i)) / P.offset(j);
        D.vertices.push_back(std::move(v));
    }
    std::sort(D.vertices.begin(), D.vertices.end());
    return D;
}

/// Irredundant facet description of the convex hull of a full-dimensional point set.
inline HPolytope facet_description(const VPolytope& V)
{
    const std::size_t n = V.dim;
    if (V.vertices.empty() || affine_dimension(V.vertices) != static_cast<int>(n))
        throw GeometryError(GeometryError::Kind::not_full_dimensional, "not full-dimensional");
    if (n == 0)
        return HPolytope::from_inequalities(IntMatrix(0, 0), {});
    std::vector<IntVector> rows;
    for (const auto& v : V.vertices) {
        Int den;
        IntVector num = clear_denominators(v, &den);
        IntVector r(n + 1);
        for (std::size_t i = 0; i < n; ++i)
            r[i] = -num[i];
        r[n] = den;
        rows.push_back(std::move(r));
    }
    auto rays = extreme_rays(rows, n + 1);
    std::vector<IntVector> A;
    RatVector c;
    for (const auto& r : rays) {
        IntVector a(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n));
        Int g = content(a);
        if (g == 0)
            continue;
        for (auto& x : a)
            x /= g;
        A.push_back(std::move(a));
        c.push_back(Rational(r[n], g));
    }
    std::vector<int> order(A.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return A[a] < A[b]; });
    std::vector<IntVector> As;
    RatVector cs;
    for (int i : order) {
        As.push_back(A[i]);
        cs.push_back(c[i]);
    }
    return HPolytope::from_inequalities(IntMatrix::from_rows(As, n), cs);
}

/// Extreme points of the convex hull of a finite point set, any dimension.
inline std::vector<RatVector> convex_hull_vertices(std::vector<RatVector> pts)
{
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 1)
        return pts;
    const std::size_t n = pts.front().size();
    const int d = affine_dimension(pts);
    // coordinates on which the projection stays injective along the affine hull
    std::vector<std::size_t> coords;
    {
        std::vector<IntVector> diffs;
        for (std::size_t i = 1; i < pts.size(); ++i)
            diffs.push_back(clear_denominators(sub(pts[i], pts[0])));
        std::vector<IntVector> cols;
        for (std::size_t i = 0; i < n && static_cast<int>(coords.size()) < d; ++i) {
            IntVector col;
            for (const auto& r : diffs)
                col.push_back(r[i]);
            cols.push_back(col);
            if (rank(cols) == cols.size())
                coords.push_back(i);
            else
                cols.pop_back();
        }
    }
    std::vector<RatVector> proj;
    for (const auto& p : pts) {
        RatVector q;
        for (auto i : coords)
            q.push_back(p[i]);
        proj.push_back(std::move(q));
    }
    HPolytope H = facet_description(VPolytope{static_cast<std::size_t>(d), proj});
    std::set<RatVector> extreme(H.vertices().begin(), H.vertices().end());
    std::vector<RatVector> out;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (extreme.count(proj[i]))
            out.push_back(pts[i]);
    return out;
}

inline VPolytope minkowski_sum(const VPolytope& P, const VPolytope& Q)
{
    if (P.dim != Q.dim)
        throw Error("dimension mismatch in Minkowski sum");
    std::vector<RatVector> sums;
    for (const auto& p : P.vertices)
        for (const auto& q : Q.vertices)
            sums.push_back(add(p, q));
    return VPolytope{P.dim, convex_hull_vertices(std::move(sums))};
}

/// Instance check of (P+Q) cap Z^n = (P cap Z^n) + (Q cap Z^n).
inline bool oda_instance_check(const HPolytope& P, const HPolytope& Q)
{
    if (!P.is_lattice() || !Q.is_lattice())
        throw Error("oda check requires lattice polytopes");
    HPolytope S = facet_description(minkowski_sum(vertices(P), vertices(Q)));
    auto lp = lattice_points(P), lq = lattice_points(Q);
    std::set<LatticePoint> sums;
    for (const auto& a : lp)
        for (const auto& b : lq)
            sums.insert(add(a, b));
    for (const auto& x : lattice_points(S))
        if (!sums.count(x))
            return false;
    return true;
}

/// Image of P under x -> M x + t with M unimodular.
inline HPolytope apply_unimodular(const HPolytope& P, const IntMatrix& M, const IntVector& t = {})
{
    IntMatrix Minv = unimodular_inverse(M);
    IntMatrix A = P.normals() * Minv;
    RatVector c = P.offsets();
    if (!t.empty())
        for (std::size_t j = 0; j < A.rows(); ++j)
            c[j] += Rational(dot(A.row(j), t));
    return HPolytope::from_inequalities(A, c);
}

/// Exact Euclidean volume via a pulling triangulation from the
/// lexicographically smallest vertex of each face.
inline Rational volume(const HPolytope& P)
{
    const std::size_t n = P.dim(), m = P.num_facets(), nv = P.num_vertices();
    if (n == 0)
        return 1;
    std::vector<boost::dynamic_bitset<>> facet_verts(m, boost::dynamic_bitset<>(nv));
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t j = 0; j < m; ++j)
            if (P.vertex_facets()[v].test(j))
                facet_verts[j].set(v);
    auto pts_of = [&](const boost::dynamic_bitset<>& s) {
        std::vector<RatVector> pts;
        for (auto v = s.find_first(); v != boost::dynamic_bitset<>::npos; v = s.find_next(v))
            pts.push_back(P.vertices()[v]);
        return pts;
    };
    std::vector<std::vector<std::size_t>> simplices;
    auto tri = [&](auto&& self, const boost::dynamic_bitset<>& face, int d, std::vector<std::size_t>& apexes) -> void {
        std::size_t apex = face.find_first();  // vertices are stored in lexicographic order
        if (d == 0) {
            auto s = apexes;
            s.push_back(apex);
            simplices.push_back(std::move(s));
            return;
        }
        std::set<boost::dynamic_bitset<>> sub;
        for (std::size_t j = 0; j < m; ++j) {
            auto t = face & facet_verts[j];
            if (t.test(apex) || t.none() || sub.count(t))
                continue;
            if (affine_dimension(pts_of(t)) == d - 1)
                sub.insert(t);
        }
        apexes.push_back(apex);
        for (const auto& t : sub)
            self(self, t, d - 1, apexes);
        apexes.pop_back();
    };
    boost::dynamic_bitset<> all(nv);
    all.set();
    std::vector<std::size_t> apexes;
    tri(tri, all, static_cast<int>(n), apexes);

    Rational total = 0;
    Int fact = 1;
    for (std::size_t i = 2; i <= n; ++i)
        fact *= i;
    for (const auto& s : simplices) {
        std::vector<RatVector> rows;
        for (std::size_t i = 1; i < s.size(); ++i)
            rows.push_back(sub(P.vertices()[s[i]], P.vertices()[s[0]]));
        Int den = 1;
        for (const auto& r : rows)
            for (const auto& x : r)
                den = lcm_int(den, boost::multiprecision::denominator(x));
        IntMatrix M(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                M(i, j) = boost::multiprecision::numerator(rows[i][j] * den);
        Int d = det(M);
        Int dpow = 1;
        for (std::size_t i = 0; i < n; ++i)
            dpow *= den;
        total += Rational(abs_int(d), dpow * fact);
    }
    return total;
}

} // namespace ewald
