// Bundles in canonical coordinates (x, y) over a base B with fiber Q:
//   u_i . x <= b_i,    t_j . y + s_j . x <= a_j + shift_j.
#pragma once

#include "ewald.hpp"

namespace ewald {

struct BundleSpec {
    HPolytope base;
    HPolytope fiber;
    IntMatrix twist;        // fiber facets x base dimension, rows s_j
    std::vector<Int> shifts;  // empty means all zero
};

class BundleError : public Error {
public:
    BundleError(const std::string& msg, RatVector point) : Error(msg), point_(std::move(point)) {}
    const RatVector& point() const { return point_; }

private:
    RatVector point_;
};

namespace detail {

inline Int shift_of(const BundleSpec& s, std::size_t j) { return s.shifts.empty() ? Int(0) : s.shifts[j]; }

// Base points at which the slice is tested: vertices, edge midpoints, centroid.
inline std::vector<RatVector> bundle_sample_points(const HPolytope& B)
{
    std::vector<RatVector> pts = B.vertices();
    const auto& vf = B.vertex_facets();
    for (std::size_t a = 0; a < vf.size(); ++a)
        for (std::size_t b = a + 1; b < vf.size(); ++b) {
            FacetSet common = vf[a] & vf[b];
            std::vector<IntVector> rows;
            for (auto j = common.find_first(); j != FacetSet::npos; j = common.find_next(j))
                rows.push_back(B.normal(j));
            if (rank(rows) + 1 != B.dim())
                continue;
            RatVector m = add(B.vertices()[a], B.vertices()[b]);
            for (auto& x : m)
                x /= 2;
            pts.push_back(std::move(m));
        }
    RatVector c(B.dim());
    for (const auto& v : B.vertices())
        c = add(c, v);
    for (auto& x : c)
        x /= Rational(static_cast<long long>(B.num_vertices()));
    pts.push_back(std::move(c));
    return pts;
}

} // namespace detail

/// Fiber over a base point: {y : t_j . y <= a_j + shift_j - s_j . x}.
inline DisplacedSystem bundle_slice(const BundleSpec& spec, const RatVector& x)
{
    const HPolytope& Q = spec.fiber;
    DisplacedSystem d;
    d.normals = Q.normals();
    for (std::size_t j = 0; j < Q.num_facets(); ++j)
        d.offsets.push_back(Q.offset(j) + Rational(detail::shift_of(spec, j)) - dot(spec.twist.row(j), x));
    try {
        std::vector<int> src;
        HPolytope S = HPolytope::from_inequalities(d.normals, d.offsets, nullptr, &src);
        d.feasible = d.full_dimensional = true;
        d.irredundant = src.size() == Q.num_facets();
        d.normally_isomorphic = d.irredundant && normal_fan_signature(S) == normal_fan_signature(Q);
        d.polytope = std::move(S);
    } catch (const GeometryError& e) {
        d.feasible = e.kind() == GeometryError::Kind::not_full_dimensional;
    }
    return d;
}

/// Total space of the bundle. Slices over base vertices, edge midpoints and the
/// centroid must be normally isomorphic to the fiber.
inline HPolytope build_bundle(const BundleSpec& spec)
{
    const std::size_t k = spec.base.dim(), n = spec.fiber.dim();
    const std::size_t l = spec.base.num_facets(), m = spec.fiber.num_facets();
    if (spec.twist.rows() != m || (m > 0 && spec.twist.cols() != k))
        throw Error("twist must have one row per fiber facet and one column per base coordinate");
    if (!spec.shifts.empty() && spec.shifts.size() != m)
        throw Error("shift count must match the fiber facets");
    for (const auto& x : detail::bundle_sample_points(spec.base))
        if (!bundle_slice(spec, x).normally_isomorphic)
            throw BundleError("not a bundle: slice over " + to_string(x) + " is not normally isomorphic to the fiber", x);

    std::vector<IntVector> rows;
    RatVector offs;
    for (std::size_t i = 0; i < l; ++i) {
        IntVector r = spec.base.normal(i);
        r.resize(k + n);
        rows.push_back(std::move(r));
        offs.push_back(spec.base.offset(i));
    }
    for (std::size_t j = 0; j < m; ++j) {
        IntVector r = spec.twist.row(j);
        const IntVector t = spec.fiber.normal(j);
        r.insert(r.end(), t.begin(), t.end());
        rows.push_back(std::move(r));
        offs.push_back(spec.fiber.offset(j) + Rational(detail::shift_of(spec, j)));
    }
    HPolytope P = HPolytope::from_inequalities(IntMatrix::from_rows(rows, k + n), offs);
    if (P.num_facets() != l + m || P.num_vertices() != spec.base.num_vertices() * spec.fiber.num_vertices())
        throw BundleError("not a bundle: total space is not combinatorially a product", RatVector(k));
    return P;
}

inline HPolytope product(const HPolytope& B, const HPolytope& Q)
{
    return build_bundle(BundleSpec{B, Q, IntMatrix(Q.num_facets(), B.dim()), {}});
}

/// i(y) = (0, y).
inline LatticePoint fiber_inclusion(std::size_t base_dim, const LatticePoint& y)
{
    LatticePoint x(base_dim);
    x.insert(x.end(), y.begin(), y.end());
    return x;
}

struct FlagTriple {
    bool simple = false, smooth = false, monotone = false;
    bool operator==(const FlagTriple&) const = default;
};

struct BundleClassification {
    FlagTriple total, base, fiber;
    bool conjunction_holds() const
    {
        return total.simple == (base.simple && fiber.simple) && total.smooth == (base.smooth && fiber.smooth) &&
               total.monotone == (base.monotone && fiber.monotone);
    }
};

inline FlagTriple flag_triple(const HPolytope& P)
{
    FlagTriple f;
    f.simple = P.is_simple();
    f.smooth = static_cast<bool>(is_smooth(P));
    f.monotone = is_monotone(P);
    return f;
}

inline BundleClassification bundle_classification(const BundleSpec& spec)
{
    return {flag_triple(build_bundle(spec)), flag_triple(spec.base), flag_triple(spec.fiber)};
}

/// Neatness of base and fiber (up to the radius) implies neatness of the total space.
inline bool neat_transfer_bundle_check(const BundleSpec& spec, int radius)
{
    HPolytope P = build_bundle(spec);
    if (!is_neat(spec.base, radius).neat_so_far() || !is_neat(spec.fiber, radius).neat_so_far())
        return true;
    return is_neat(P, radius).neat_so_far();
}

} // namespace ewald
