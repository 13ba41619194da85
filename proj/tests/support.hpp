// Random instance generators shared by the unit tests and the acceptance run.
#pragma once

#include <ewald/generators.hpp>

#include <random>

namespace ewald::fixtures {

inline HPolytope dilate(const HPolytope& P, int k)
{
    RatVector c = P.offsets();
    for (auto& x : c)
        x *= k;
    return HPolytope::from_inequalities(P.normals(), c);
}

inline IntMatrix random_unimodular(std::mt19937& rng, std::size_t n)
{
    IntMatrix M = IntMatrix::identity(n);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), coef(-1, 1);
    for (int s = 0; s < 3 * static_cast<int>(n); ++s) {
        int a = pick(rng), b = pick(rng);
        if (a == b)
            continue;
        IntMatrix E = IntMatrix::identity(n);
        E(a, b) = coef(rng);
        M = E * M;
    }
    return M;
}

// Cuts a vertex of a smooth polytope along the sum of its facet normals.
inline std::optional<HPolytope> cut_corner(const HPolytope& P, std::size_t v, int depth)
{
    IntVector u(P.dim(), Int(0));
    Rational b = 0;
    const auto& t = P.vertex_facets()[v];
    for (auto j = t.find_first(); j != FacetSet::npos; j = t.find_next(j)) {
        u = add(u, P.normal(j));
        b += P.offset(j);
    }
    IntMatrix A(P.num_facets() + 1, P.dim());
    RatVector c = P.offsets();
    for (std::size_t j = 0; j < P.num_facets(); ++j)
        A.set_row(j, P.normal(j));
    A.set_row(P.num_facets(), u);
    c.push_back(b - depth);
    try {
        HPolytope Q = HPolytope::from_inequalities(A, c);
        if (Q.num_facets() != P.num_facets() + 1 || !Q.is_lattice() || !is_smooth(Q))
            return std::nullopt;
        return Q;
    } catch (const GeometryError&) {
        return std::nullopt;
    }
}

/// Smooth lattice polytopes of dimension n: dilated simplices, cubes and del Pezzo
/// polytopes with random corner cuts, under a random unimodular change of basis.
inline HPolytope random_smooth_lattice(std::mt19937& rng, int n)
{
    std::uniform_int_distribution<int> kind(0, n <= 3 ? 3 : 2), dil(1, 3), cuts(0, 2);
    HPolytope P;
    switch (kind(rng)) {
    case 0: P = dilate(simplex(n), dil(rng)); break;
    case 1: P = dilate(cube(n), dil(rng)); break;
    case 2: P = dilated_standard_simplex(n, dil(rng)); break;
    default: P = del_pezzo(2 * (n / 2)); break;
    }
    if (static_cast<int>(P.dim()) != n)
        P = dilate(cube(n), 2);
    int k = cuts(rng);
    for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pv(0, P.num_vertices() - 1);
        std::uniform_int_distribution<int> depth(1, 2);
        if (auto Q = cut_corner(P, pv(rng), depth(rng)))
            P = *Q;
    }
    return apply_unimodular(P, random_unimodular(rng, n));
}

/// Lattice polygons with the origin in the interior that pass the quasi-smooth test.
inline std::vector<HPolytope> random_quasi_smooth_polygons(std::mt19937& rng, std::size_t count)
{
    std::vector<HPolytope> out;
    std::uniform_int_distribution<int> coord(-3, 3), npts(3, 7);
    while (out.size() < count) {
        VPolytope V{2, {}};
        int k = npts(rng);
        for (int i = 0; i < k; ++i)
            V.vertices.push_back(RatVector{Rational(coord(rng)), Rational(coord(rng))});
        HPolytope P;
        try {
            P = facet_description(V);
        } catch (const Error&) {
            continue;
        }
        if (!P.origin_in_interior() || !is_quasi_smooth_polygon(P))
            continue;
        out.push_back(std::move(P));
    }
    return out;
}

/// Bundle specifications over a fixed list of base/fiber pairs with twist entries in
/// {-1,0,1}; only the ones the builder accepts are returned.
inline std::vector<BundleSpec> random_bundle_specs(std::mt19937& rng, std::size_t count)
{
    std::vector<std::pair<HPolytope, HPolytope>> pairs{
        {segment(), segment()},       {segment(), simplex(2)}, {simplex(2), segment()},
        {segment(), del_pezzo(2)},    {cube(2), segment()},    {simplex(2), simplex(1)},
        {monotone_trapezoid(), segment()}, {segment(), dilated_standard_simplex(2, 2)},
        {dilated_standard_simplex(2, 1), segment()}, {segment(), triangle_T(1)}};
    std::uniform_int_distribution<std::size_t> pp(0, pairs.size() - 1);
    std::uniform_int_distribution<int> tw(-1, 1);
    std::vector<BundleSpec> out;
    int attempts = 0;
    while (out.size() < count && attempts++ < 2000) {
        const auto& [B, Q] = pairs[pp(rng)];
        BundleSpec s{B, Q, IntMatrix(Q.num_facets(), B.dim()), {}};
        for (std::size_t j = 0; j < Q.num_facets(); ++j)
            for (std::size_t i = 0; i < B.dim(); ++i)
                s.twist(j, i) = tw(rng);
        try {
            build_bundle(s);
        } catch (const Error&) {
            continue;
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace ewald::fixtures
