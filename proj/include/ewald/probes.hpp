// Probes: segments entering P from the relative interior of a facet in an
// integrally transverse direction, and the sampled star cross-check.
#pragma once

#include "ewald.hpp"

namespace ewald {

struct Probe {
    int facet = -1;
    LatticePoint direction;  // u_F . direction = -1
    RatVector initial_point;  // w in relint F
    RatVector far_end;        // where the ray leaves P
};

inline bool is_integrally_transverse(const LatticePoint& lambda, const HPolytope& P, int facet)
{
    if (is_zero(lambda))
        throw Error("direction must be nonzero");
    Int d = dot(P.normal(facet), lambda);
    return d == 1 || d == -1;
}

namespace detail {

inline bool in_relative_interior_of_facet(const HPolytope& P, int facet, const RatVector& w)
{
    for (std::size_t j = 0; j < P.num_facets(); ++j) {
        Rational v = dot(P.normal(j), w);
        if (static_cast<int>(j) == facet ? v != P.offset(j) : v >= P.offset(j))
            return false;
    }
    return true;
}

// Largest t with w + t lambda in P.
inline Rational exit_time(const HPolytope& P, const RatVector& w, const LatticePoint& lambda)
{
    std::optional<Rational> best;
    for (std::size_t j = 0; j < P.num_facets(); ++j) {
        Int rate = dot(P.normal(j), lambda);
        if (rate <= 0)
            continue;
        Rational t = (P.offset(j) - dot(P.normal(j), w)) / Rational(rate);
        if (!best || t < *best)
            best = t;
    }
    return *best;
}

// Directions with max-norm at most the bound, ordered by max-norm then lexicographically.
inline std::vector<LatticePoint> directions_up_to(std::size_t n, int bound)
{
    std::vector<LatticePoint> out;
    if (n == 0 || bound < 1)
        return out;
    LatticePoint x(n, Int(-bound));
    for (;;) {
        if (!is_zero(x))
            out.push_back(x);
        std::size_t i = n;
        while (i > 0 && x[i - 1] == bound) {
            x[i - 1] = -bound;
            --i;
        }
        if (i == 0)
            break;
        ++x[i - 1];
    }
    std::sort(out.begin(), out.end(), norm_lex_less);
    return out;
}

inline RatVector along(const RatVector& w, const Rational& t, const LatticePoint& lambda)
{
    RatVector x = w;
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] += t * Rational(lambda[i]);
    return x;
}

} // namespace detail

/// Re-checks the defining conditions of a probe displacing u.
inline bool probe_displaces(const HPolytope& P, const RatVector& u, const Probe& p)
{
    if (dot(P.normal(p.facet), p.direction) != -1)
        return false;
    if (!detail::in_relative_interior_of_facet(P, p.facet, p.initial_point))
        return false;
    RatVector d = sub(u, p.initial_point);
    Rational t = P.offset(p.facet) - dot(P.normal(p.facet), u);
    if (t <= 0 || d != detail::along(RatVector(u.size()), t, p.direction))
        return false;
    if (t >= detail::exit_time(P, p.initial_point, p.direction))
        return false;
    RatVector mirror = sub(add(u, u), p.initial_point);
    return P.contains_in_interior(mirror);
}

/// First probe (facets by index, directions by max-norm then lexicographically)
/// displacing u, or nullopt: "not found (bound B)", never a proof of non-displaceability.
inline std::optional<Probe> displaceable_by_probe(const HPolytope& P, const RatVector& u, int bound,
                                                  const std::vector<LatticePoint>* dirs = nullptr)
{
    if (!P.contains_in_interior(u))
        throw Error("point is not in the interior");
    std::vector<LatticePoint> own;
    if (!dirs) {
        own = detail::directions_up_to(P.dim(), bound);
        dirs = &own;
    }
    for (std::size_t f = 0; f < P.num_facets(); ++f) {
        const IntVector& uf = P.normal(f);
        Rational t = P.offset(f) - dot(uf, u);
        for (const auto& lambda : *dirs) {
            if (max_norm(lambda) > bound)
                break;
            if (dot(uf, lambda) != -1)
                continue;
            RatVector w = detail::along(u, -t, lambda);
            if (!detail::in_relative_interior_of_facet(P, static_cast<int>(f), w))
                continue;
            RatVector mirror = sub(add(u, u), w);
            if (!P.contains_in_interior(mirror))
                continue;
            Probe p{static_cast<int>(f), lambda, w, detail::along(w, detail::exit_time(P, w, lambda), lambda)};
            return p;
        }
    }
    return std::nullopt;
}

struct ProbeCrosscheck {
    bool star = false;
    int denominator = 0;
    int bound = 0;
    std::size_t sampled = 0;
    std::size_t displaceable = 0;
    std::vector<RatVector> not_found;  // at this bound
    /// Star Ewald and some sample without a probe would contradict the criterion.
    bool consistent() const { return !star || not_found.empty(); }
};

/// Samples Int(P) on the grid (1/denominator) Z^n minus the origin.
inline ProbeCrosscheck star_probe_crosscheck(const HPolytope& P, int denominator, int bound)
{
    if (!is_monotone(P))
        throw Error("probe cross-check requires a monotone polytope");
    if (denominator < 1)
        throw Error("sample denominator must be positive");
    ProbeCrosscheck r;
    r.star = star_ewald(P).ok;
    r.denominator = denominator;
    r.bound = bound;
    const std::size_t n = P.dim();
    auto [lo, hi] = integer_bounding_box(P.vertices(), n);
    IntVector z(n);
    for (std::size_t i = 0; i < n; ++i)
        z[i] = lo[i] * denominator;
    auto dirs = detail::directions_up_to(n, bound);
    for (;;) {
        RatVector u(n);
        for (std::size_t i = 0; i < n; ++i)
            u[i] = Rational(z[i]) / denominator;
        if (!is_zero(z) && P.contains_in_interior(u)) {
            ++r.sampled;
            if (displaceable_by_probe(P, u, bound, &dirs))
                ++r.displaceable;
            else
                r.not_found.push_back(u);
        }
        std::size_t i = n;
        bool done = true;
        while (i > 0) {
            --i;
            if (z[i] < hi[i] * denominator) {
                ++z[i];
                done = false;
                break;
            }
            z[i] = lo[i] * denominator;
        }
        if (done)
            return r;
    }
}

} // namespace ewald
