// Polytope classes: simple, smooth, lattice, reflexive, monotone, UT-free,
// deeply smooth, quasi-smooth polygons. Every negative answer carries a witness.
#pragma once

#include "chart.hpp"

namespace ewald {

struct VertexCheck {
    bool ok = true;
    std::optional<RatVector> vertex;
    explicit operator bool() const { return ok; }
};

struct FaceCheck {
    bool ok = true;
    std::optional<FaceRef> face;
    explicit operator bool() const { return ok; }
};

struct CornerCheck {
    bool ok = true;
    std::optional<RatVector> vertex;
    std::optional<RatVector> corner;
    explicit operator bool() const { return ok; }
};

/// An edge leaving a vertex of a simple polytope: the facet it leaves and its
/// primitive direction.
struct EdgeDirection {
    int leaves_facet;
    LatticePoint direction;
    std::size_t neighbor;
};

namespace detail {

inline std::vector<int> bit_indices(const FacetSet& t)
{
    std::vector<int> out;
    for (auto j = t.find_first(); j != FacetSet::npos; j = t.find_next(j))
        out.push_back(static_cast<int>(j));
    return out;
}

} // namespace detail

/// Edge directions at every vertex of a simple polytope, ordered by the facet they leave.
inline std::vector<std::vector<EdgeDirection>> edge_directions(const HPolytope& P)
{
    if (!P.is_simple())
        throw Error("edge directions require a simple polytope");
    std::map<FacetSet, std::vector<std::size_t>> by_edge;
    const auto& vf = P.vertex_facets();
    for (std::size_t v = 0; v < vf.size(); ++v)
        for (auto j = vf[v].find_first(); j != FacetSet::npos; j = vf[v].find_next(j)) {
            FacetSet e = vf[v];
            e.reset(j);
            by_edge[e].push_back(v);
        }
    std::vector<std::vector<EdgeDirection>> out(vf.size());
    for (std::size_t v = 0; v < vf.size(); ++v)
        for (auto j = vf[v].find_first(); j != FacetSet::npos; j = vf[v].find_next(j)) {
            FacetSet e = vf[v];
            e.reset(j);
            const auto& ends = by_edge[e];
            std::size_t w = ends[0] == v ? ends[1] : ends[0];
            out[v].push_back(EdgeDirection{static_cast<int>(j),
                                           primitive_direction(sub(P.vertices()[w], P.vertices()[v])), w});
        }
    return out;
}

inline VertexCheck check_simple(const HPolytope& P)
{
    for (std::size_t v = 0; v < P.num_vertices(); ++v)
        if (P.vertex_facets()[v].count() != P.dim())
            return {false, P.vertices()[v]};
    return {};
}

inline VertexCheck check_lattice(const HPolytope& P)
{
    for (const auto& v : P.vertices())
        if (!is_integral(v))
            return {false, v};
    return {};
}

/// Simple, and the primitive edge directions at every vertex form a lattice basis.
inline VertexCheck is_smooth(const HPolytope& P)
{
    if (auto s = check_simple(P); !s)
        return s;
    if (P.dim() == 0)
        return {};
    auto edges = edge_directions(P);
    for (std::size_t v = 0; v < edges.size(); ++v) {
        IntMatrix M(P.dim(), P.dim());
        for (std::size_t i = 0; i < P.dim(); ++i)
            M.set_row(i, edges[v][i].direction);
        Int d = det(M);
        if (d != 1 && d != -1)
            return {false, P.vertices()[v]};
    }
    return {};
}

inline bool is_reflexive(const HPolytope& P)
{
    if (!P.is_lattice())
        return false;
    return std::all_of(P.offsets().begin(), P.offsets().end(), [](const Rational& b) { return b == 1; });
}

inline bool is_monotone(const HPolytope& P) { return is_reflexive(P) && static_cast<bool>(is_smooth(P)); }

namespace detail {

// Unimodular triangle test for a 2-face given by (some of) its tight facets.
inline bool is_unimodular_triangle_face(const HPolytope& P, const std::vector<int>& facets)
{
    auto pts = face_points(P, FaceRef{facets, static_cast<int>(facets.size())});
    if (pts.size() != 3)
        return false;
    if (!std::all_of(pts.begin(), pts.end(), [](const RatVector& v) { return is_integral(v); }))
        return false;
    auto slice = face_in_chart(P, facets);
    return lattice_points(slice.polytope).size() == 3;
}

} // namespace detail

/// No 2-face is a unimodular triangle. Requires a simple lattice polytope.
inline FaceCheck is_ut_free(const HPolytope& P)
{
    if (!P.is_simple())
        throw Error("UT-free check requires a simple polytope");
    if (!P.is_lattice())
        throw Error("UT-free check requires a lattice polytope");
    if (P.dim() < 2)
        return {};
    const int codim = static_cast<int>(P.dim()) - 2;
    for (const auto& f : faces(P, codim))
        if (detail::is_unimodular_triangle_face(P, f.tight_facets))
            return {false, f};
    return {};
}

/// UT-freeness for arbitrary (possibly non-simple, non-lattice) polytopes.
inline FaceCheck ut_free_general(const HPolytope& P)
{
    if (P.dim() < 2)
        return {};
    for (const auto& f : all_faces(P)) {
        if (f.dim != 2)
            continue;
        auto facets = detail::bit_indices(f.facets);
        if (detail::is_unimodular_triangle_face(P, facets))
            return {false, FaceRef{facets, static_cast<int>(P.dim()) - 2}};
    }
    return {};
}

/// Every vertex's corner parallelepiped is contained in P. Requires a smooth lattice polytope.
inline CornerCheck is_deeply_smooth(const HPolytope& P)
{
    if (!P.is_lattice() || !is_smooth(P))
        throw Error("deep smoothness requires a smooth lattice polytope");
    const std::size_t n = P.dim();
    auto edges = edge_directions(P);
    for (std::size_t v = 0; v < P.num_vertices(); ++v) {
        const RatVector& x = P.vertices()[v];
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            RatVector c = x;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (std::size_t{1} << i))
                    c = add(c, to_rat_vector(edges[v][i].direction));
            if (!P.contains(c))
                return {false, x, c};
        }
    }
    return {};
}

/// Quasi-smoothness of a lattice polygon: each vertex is at lattice distance
/// one from the line through the boundary lattice points next to it.
inline VertexCheck is_quasi_smooth_polygon(const HPolytope& P)
{
    if (P.dim() != 2)
        throw Error("quasi-smoothness is defined for polygons only");
    if (!P.is_lattice())
        throw Error("quasi-smoothness requires a lattice polygon");
    auto edges = edge_directions(P);
    for (std::size_t v = 0; v < P.num_vertices(); ++v) {
        IntVector x = to_int_vector(P.vertices()[v]);
        IntVector plus = add(x, edges[v][0].direction);
        IntVector minus = add(x, edges[v][1].direction);
        IntVector d = sub(plus, minus);
        IntVector u = primitive_part(IntVector{-d[1], d[0]});
        if (abs_int(dot(u, sub(x, minus))) != 1)
            return {false, P.vertices()[v]};
    }
    return {};
}

struct ClassReport {
    bool simple = false;
    bool lattice = false;
    bool smooth = false;
    bool reflexive = false;
    bool monotone = false;
    std::optional<bool> ut_free;  // absent when P is not a simple lattice polytope
    std::optional<bool> deeply_smooth;
    std::optional<bool> deeply_monotone;
    std::map<std::string, std::string> witnesses;
};

inline ClassReport classify(const HPolytope& P)
{
    ClassReport r;
    auto simple = check_simple(P);
    r.simple = simple.ok;
    if (!simple)
        r.witnesses["simple"] = to_string(*simple.vertex);
    auto lattice = check_lattice(P);
    r.lattice = lattice.ok;
    if (!lattice)
        r.witnesses["lattice"] = to_string(*lattice.vertex);
    auto smooth = is_smooth(P);
    r.smooth = smooth.ok;
    if (!smooth)
        r.witnesses["smooth"] = to_string(*smooth.vertex);
    r.reflexive = is_reflexive(P);
    r.monotone = r.smooth && r.reflexive;
    if (r.simple && r.lattice) {
        auto ut = is_ut_free(P);
        r.ut_free = ut.ok;
        if (!ut)
            r.witnesses["ut_free"] = to_string(*ut.face);
    }
    if (r.smooth && r.lattice) {
        auto deep = is_deeply_smooth(P);
        r.deeply_smooth = deep.ok;
        r.deeply_monotone = deep.ok && r.monotone;
        if (!deep)
            r.witnesses["deeply_smooth"] = to_string(*deep.vertex) + " misses " + to_string(*deep.corner);
    }
    return r;
}

} // namespace ewald
