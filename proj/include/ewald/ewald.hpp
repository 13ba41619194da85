// Ewald sets and the weak, strong and star Ewald conditions, plus the
// dimension-2 basis construction and the higher-dimensional partial verifiers.
#pragma once

#include "displace.hpp"

namespace ewald {

/// Symmetric lattice points Z^n cap P cap -P, sorted lexicographically.
class EwaldSet {
public:
    EwaldSet() = default;
    explicit EwaldSet(std::vector<LatticePoint> pts) : points_(std::move(pts))
    {
        std::sort(points_.begin(), points_.end());
    }

    const std::vector<LatticePoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool contains(const LatticePoint& x) const { return std::binary_search(points_.begin(), points_.end(), x); }
    bool is_trivial() const { return points_.size() <= 1; }

    std::vector<LatticePoint> nonzero() const
    {
        std::vector<LatticePoint> out;
        for (const auto& p : points_)
            if (!is_zero(p))
                out.push_back(p);
        return out;
    }

    bool operator==(const EwaldSet&) const = default;

private:
    std::vector<LatticePoint> points_;
};

inline EwaldSet ewald_set(const HPolytope& P)
{
    const std::size_t n = P.dim(), m = P.num_facets();
    auto [lo, hi] = integer_bounding_box(P.vertices(), n);
    IntVector slo(n), shi(n);
    for (std::size_t i = 0; i < n; ++i) {
        slo[i] = std::max(lo[i], Int(-hi[i]));
        shi[i] = std::min(hi[i], Int(-lo[i]));
    }
    std::vector<IntVector> rows;
    RatVector offs;
    for (std::size_t j = 0; j < m; ++j) {
        rows.push_back(P.normal(j));
        offs.push_back(P.offset(j));
    }
    for (std::size_t j = 0; j < m; ++j) {
        rows.push_back(negated(P.normal(j)));
        offs.push_back(P.offset(j));
    }
    return EwaldSet(lattice_points_in_box(IntMatrix::from_rows(rows, n), offs, slo, shi));
}

namespace detail {

inline void require_interior_origin(const HPolytope& P)
{
    if (!P.origin_in_interior())
        throw Error("origin is not in the interior");
}

} // namespace detail

struct WeakEwaldResult {
    bool ok = false;
    std::optional<std::vector<LatticePoint>> basis;
    explicit operator bool() const { return ok; }
};

inline WeakEwaldResult weak_ewald(const HPolytope& P, const EwaldSet& E)
{
    detail::require_interior_origin(P);
    auto b = find_unimodular_basis(E.points(), static_cast<int>(P.dim()));
    return {b.has_value(), b};
}

inline WeakEwaldResult weak_ewald(const HPolytope& P) { return weak_ewald(P, ewald_set(P)); }

struct StrongEwaldResult {
    bool ok = false;
    std::vector<std::vector<LatticePoint>> bases;  // one per facet, up to the first failure
    std::optional<int> failing_facet;
    explicit operator bool() const { return ok; }
};

inline StrongEwaldResult strong_ewald(const HPolytope& P, const EwaldSet& E)
{
    detail::require_interior_origin(P);
    StrongEwaldResult r;
    for (std::size_t j = 0; j < P.num_facets(); ++j) {
        std::vector<LatticePoint> on;
        for (const auto& x : E.points())
            if (dot(P.normal(j), x) == P.offset(j))
                on.push_back(x);
        auto b = find_unimodular_basis(on, static_cast<int>(P.dim()));
        if (!b) {
            r.failing_facet = static_cast<int>(j);
            return r;
        }
        r.bases.push_back(std::move(*b));
    }
    r.ok = true;
    return r;
}

inline StrongEwaldResult strong_ewald(const HPolytope& P) { return strong_ewald(P, ewald_set(P)); }

/// Star(f), star(f) and Star*(f) of a face of a simple polytope.
struct StarSets {
    FaceRef face;
    std::vector<int> Star;             // facets containing f
    std::vector<FaceRef> star_lower;   // ridges containing f
    FacetSet mask;

    template <typename Vec>
    int hits(const HPolytope& P, const Vec& x) const
    {
        int k = 0;
        for (int j : Star)
            if (dot(P.normal(j), x) == P.offset(j))
                ++k;
        return k;
    }
    template <typename Vec>
    bool in_Star(const HPolytope& P, const Vec& x) const { return P.contains(x) && hits(P, x) >= 1; }
    template <typename Vec>
    bool in_star(const HPolytope& P, const Vec& x) const { return P.contains(x) && hits(P, x) >= 2; }
    template <typename Vec>
    bool in_Star_star(const HPolytope& P, const Vec& x) const { return P.contains(x) && hits(P, x) == 1; }
};

inline StarSets star_sets(const HPolytope& P, const FaceRef& f)
{
    if (!P.is_simple())
        throw Error("face lattice requires simple polytope");
    if (!is_face(P, f))
        throw Error("invalid face " + to_string(f));
    StarSets s;
    s.face = f;
    s.Star = f.tight_facets;
    s.mask = FacetSet(P.num_facets());
    for (int j : f.tight_facets)
        s.mask.set(static_cast<std::size_t>(j));
    for (std::size_t a = 0; a < s.Star.size(); ++a)
        for (std::size_t b = a + 1; b < s.Star.size(); ++b)
            s.star_lower.push_back(FaceRef{{s.Star[a], s.Star[b]}, 2});
    return s;
}

namespace detail {

// Tight facets of each Ewald point and of its negation.
struct EwaldIncidence {
    std::vector<LatticePoint> points;
    std::vector<FacetSet> tight, tight_neg;

    EwaldIncidence(const HPolytope& P, const EwaldSet& E) : points(E.points())
    {
        for (const auto& x : points) {
            tight.push_back(P.tight_facets(x));
            tight_neg.push_back(P.tight_facets(negated(x)));
        }
    }

    std::optional<LatticePoint> star_witness(const FacetSet& T) const
    {
        for (std::size_t i = 0; i < points.size(); ++i)
            if ((tight[i] & T).count() == 1 && !(tight_neg[i] & T).any())
                return points[i];
        return std::nullopt;
    }
};

} // namespace detail

struct StarEwaldResult {
    bool ok = false;
    std::optional<FaceRef> failing_face;
    std::optional<LatticePoint> witness;  // for a single face
    std::size_t faces_checked = 0;
    explicit operator bool() const { return ok; }
};

/// Some lambda in E(P) lies in Star*(f) while -lambda avoids Star(f).
inline StarEwaldResult star_ewald_face(const HPolytope& P, const FaceRef& f, const EwaldSet& E)
{
    detail::require_interior_origin(P);
    auto s = star_sets(P, f);
    detail::EwaldIncidence inc(P, E);
    StarEwaldResult r;
    r.faces_checked = 1;
    r.witness = inc.star_witness(s.mask);
    r.ok = r.witness.has_value();
    if (!r.ok)
        r.failing_face = f;
    return r;
}

inline StarEwaldResult star_ewald_face(const HPolytope& P, const FaceRef& f)
{
    return star_ewald_face(P, f, ewald_set(P));
}

/// Every proper face is star Ewald; faces are scanned by increasing
/// codimension and the first failure is reported.
inline StarEwaldResult star_ewald(const HPolytope& P, const EwaldSet& E)
{
    detail::require_interior_origin(P);
    if (!P.is_simple())
        throw Error("face lattice requires simple polytope");
    detail::EwaldIncidence inc(P, E);
    StarEwaldResult r;
    for (int k = 1; k <= static_cast<int>(P.dim()); ++k)
        for (const auto& f : faces(P, k)) {
            ++r.faces_checked;
            FacetSet T(P.num_facets());
            for (int j : f.tight_facets)
                T.set(static_cast<std::size_t>(j));
            if (!inc.star_witness(T)) {
                r.failing_face = f;
                return r;
            }
        }
    r.ok = true;
    return r;
}

inline StarEwaldResult star_ewald(const HPolytope& P) { return star_ewald(P, ewald_set(P)); }

/// Every facet meets E(P). Requires a monotone polytope.
inline bool fs_property(const HPolytope& P, const EwaldSet& E)
{
    if (!is_monotone(P))
        throw Error("FS property requires a monotone polytope");
    for (std::size_t j = 0; j < P.num_facets(); ++j) {
        bool hit = std::any_of(E.points().begin(), E.points().end(),
                               [&](const LatticePoint& x) { return dot(P.normal(j), x) == P.offset(j); });
        if (!hit)
            return false;
    }
    return true;
}

inline bool fs_property(const HPolytope& P) { return fs_property(P, ewald_set(P)); }

/// Unimodular normalization of a monotone polytope putting the lexicographically
/// smallest vertex at (-1,...,-1) with the coordinate hyperplanes as its facets.
struct CubeNormalization {
    RatVector vertex;
    IntMatrix M;  // x -> M x
    HPolytope image;
};

inline CubeNormalization cube_normalization(const HPolytope& P)
{
    if (!is_monotone(P))
        throw Error("cube normalization requires a monotone polytope");
    const std::size_t n = P.dim();
    const auto& T = P.vertex_facets().front();
    IntMatrix Av(n, n);
    std::size_t i = 0;
    for (auto j = T.find_first(); j != FacetSet::npos; j = T.find_next(j))
        Av.set_row(i++, P.normal(j));
    IntMatrix M(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            M(a, b) = -Av(a, b);
    return {P.vertices().front(), M, apply_unimodular(P, M)};
}

/// Lattice basis inside E(P) for a polygon: normalize the smallest nonzero
/// Ewald point to (1,0) and look for an Ewald point (a,1).
inline std::optional<std::vector<LatticePoint>> nill2d_basis(const HPolytope& P, const EwaldSet& E)
{
    if (P.dim() != 2)
        throw Error("nill2d_basis expects a polygon");
    detail::require_interior_origin(P);
    auto cand = E.nonzero();
    std::sort(cand.begin(), cand.end(), norm_lex_less);
    std::set<LatticePoint> tried;
    for (const auto& raw : cand) {
        LatticePoint e = primitive_part(raw);
        if (!tried.insert(e).second)
            continue;
        IntMatrix G = unimodular_completion(e);
        for (const auto& x : E.points()) {
            IntVector y = G * x;
            if (y[1] == 1)
                return std::vector<LatticePoint>{e, x};
        }
    }
    return std::nullopt;
}

inline std::optional<std::vector<LatticePoint>> nill2d_basis(const HPolytope& P) { return nill2d_basis(P, ewald_set(P)); }

/// The origin lies in the first displacement of f.
inline bool verify_origin_next_to(const HPolytope& P, const FaceRef& f)
{
    if (!is_face(P, f))
        throw Error("invalid face " + to_string(f));
    IntVector zero(P.dim());
    if (!P.contains(zero))
        return false;
    return std::all_of(f.tight_facets.begin(), f.tight_facets.end(), [&](int j) { return P.offset(j) == 1; });
}

struct NillHigherDimReport {
    std::size_t vertex_cases = 0;  // origin next to a vertex of a deeply smooth P
    std::size_t edge_cases = 0;    // origin next to an edge of a smooth 3-polytope
    bool ok = true;
    std::optional<FaceRef> failing_face;
};

/// Instance checks of the higher-dimensional partial results: if the origin is
/// next to a vertex of a deeply smooth P, the edge vectors there lie in E(P);
/// if it is next to an edge of a smooth 3-polytope, E(P) contains a basis.
inline NillHigherDimReport nill_higher_dim_check(const HPolytope& P)
{
    if (!P.is_lattice() || !is_smooth(P))
        throw Error("requires a smooth lattice polytope");
    detail::require_interior_origin(P);
    NillHigherDimReport r;
    EwaldSet E = ewald_set(P);
    const int n = static_cast<int>(P.dim());
    if (is_deeply_smooth(P)) {
        auto edges = edge_directions(P);
        for (std::size_t v = 0; v < P.num_vertices(); ++v) {
            FaceRef f{detail::bit_indices(P.vertex_facets()[v]), n};
            if (!verify_origin_next_to(P, f))
                continue;
            ++r.vertex_cases;
            for (const auto& e : edges[v])
                if (!E.contains(e.direction)) {
                    r.ok = false;
                    r.failing_face = f;
                    return r;
                }
        }
    }
    if (n == 3) {
        for (const auto& f : faces(P, 2)) {
            if (!verify_origin_next_to(P, f))
                continue;
            ++r.edge_cases;
            if (!find_unimodular_basis(E.points(), 3)) {
                r.ok = false;
                r.failing_face = f;
                return r;
            }
        }
    }
    return r;
}

} // namespace ewald
