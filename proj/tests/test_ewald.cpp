#include "support.hpp"

#include <gtest/gtest.h>

using namespace ewald;

namespace {

std::set<RatVector> vertex_set(const HPolytope& P) { return {P.vertices().begin(), P.vertices().end()}; }

RatVector rv(std::initializer_list<int> xs)
{
    RatVector out;
    for (int x : xs)
        out.emplace_back(x);
    return out;
}

// Ewald set by scanning lattice points of P, independent of the box intersection used by ewald_set.
std::vector<LatticePoint> ewald_oracle(const HPolytope& P)
{
    std::vector<LatticePoint> out;
    for (const auto& x : lattice_points(P))
        if (P.contains(negated(x)))
            out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST(Generators, VertexExamples)
{
    EXPECT_EQ(vertex_set(cube(2)), (std::set<RatVector>{rv({-1, -1}), rv({-1, 1}), rv({1, -1}), rv({1, 1})}));
    EXPECT_EQ(vertex_set(simplex(2)), (std::set<RatVector>{rv({-1, -1}), rv({2, -1}), rv({-1, 2})}));
    auto s = vertex_set(ssb(3, 2));
    EXPECT_EQ(s.size(), 6u);
    EXPECT_TRUE(s.count(rv({1, -1, -1})));
    EXPECT_TRUE(s.count(rv({-1, 4, -1})));
}

TEST(Generators, ParameterErrors)
{
    EXPECT_THROW(ssb(3, 3), Error);
    EXPECT_THROW(ssb(1, 0), Error);
    EXPECT_THROW(triangle_T(0), Error);
    EXPECT_THROW(emin_construction(2), Error);
    EXPECT_THROW(generate("nonsense", {}), Error);
}

TEST(Generators, PaffenholzAndDelPezzo)
{
    HPolytope P = paffenholz();
    EXPECT_EQ(P.dim(), 6u);
    EXPECT_EQ(P.num_facets(), 10u);
    EXPECT_TRUE(is_monotone(P));
    EXPECT_TRUE(del_pezzo(2).same_facets(monotone_hexagon()));
    EXPECT_TRUE(is_monotone(del_pezzo(4)));
    EXPECT_TRUE(is_reflexive(del_pezzo(3)));
    EXPECT_FALSE(is_smooth(del_pezzo(3)));
}

TEST(Generators, SsbTwoOneIsTheTrapezoidUpToLattice)
{
    HPolytope S = ssb(2, 1), T = monotone_trapezoid();
    EXPECT_EQ(S.num_vertices(), 4u);
    EXPECT_EQ(lattice_points(S).size(), lattice_points(T).size());
    EXPECT_EQ(volume(S), volume(T));
    EXPECT_EQ(ewald_set(S).size(), ewald_set(T).size());
}

TEST(Classify, Examples)
{
    for (int n = 2; n <= 4; ++n) {
        EXPECT_TRUE(is_monotone(simplex(n)));
        EXPECT_TRUE(is_monotone(cube(n)));
        EXPECT_TRUE(is_ut_free(cube(n)));
        EXPECT_FALSE(is_reflexive(fixtures::dilate(cube(n), 2)));
        for (int k = 1; k <= n + 1; ++k)
            EXPECT_EQ(is_deeply_smooth(dilated_standard_simplex(n, k)).ok, k >= n) << n << " " << k;
    }
    for (const auto& [name, P] : monotone_polygons())
        EXPECT_TRUE(is_monotone(P)) << name;
    for (int n = 2; n <= 4; ++n)
        for (int k = 0; k < n; ++k) {
            HPolytope S = ssb(n, k);
            EXPECT_TRUE(is_monotone(S));
            EXPECT_EQ(is_ut_free(S).ok, n == 2 || k <= n - 2) << n << " " << k;
            EXPECT_EQ(is_deeply_smooth(S).ok, k <= 1) << n << " " << k;
        }
    EXPECT_TRUE(is_ut_free(ssb(4, 2)));
    EXPECT_FALSE(is_deeply_smooth(dilated_standard_simplex(2, 1)));
}

TEST(Classify, QuasiSmoothPolygons)
{
    for (const auto& [name, P] : monotone_polygons())
        EXPECT_TRUE(is_quasi_smooth_polygon(P)) << name;
    for (int a = 1; a <= 5; ++a)
        EXPECT_FALSE(is_quasi_smooth_polygon(triangle_T(a))) << a;
    std::mt19937 rng(17);
    for (int i = 0; i < 20; ++i) {
        HPolytope P = fixtures::random_smooth_lattice(rng, 2);
        EXPECT_TRUE(is_quasi_smooth_polygon(P));
    }
    EXPECT_THROW(is_quasi_smooth_polygon(cube(3)), Error);
}

TEST(Classify, TriangleTOneFacets)
{
    HPolytope T = triangle_T(1);
    EXPECT_EQ(T.num_facets(), 3u);
    for (const auto& c : T.offsets())
        EXPECT_EQ(c, 1);
    EXPECT_TRUE(is_reflexive(T));
    EXPECT_EQ(lattice_points(triangle_T(2)).size(), 5u);
}

TEST(EwaldSet, Examples)
{
    EXPECT_EQ(ewald_set(segment()).size(), 3u);
    EXPECT_EQ(ewald_set(simplex(2)).size(), 7u);
    for (int n = 1; n <= 4; ++n)
        EXPECT_EQ(ewald_set(cube(n)).size(), static_cast<std::size_t>(std::pow(3, n)));
    for (int a = 1; a <= 5; ++a)
        EXPECT_EQ(ewald_set(triangle_T(a)).points(), std::vector<LatticePoint>{LatticePoint(2)});
}

TEST(EwaldSet, MatchesOracleAndIsClosedUnderNegation)
{
    std::vector<HPolytope> all;
    for (const auto& [name, P] : builtin_catalog())
        all.push_back(P);
    all.push_back(paffenholz());
    all.push_back(blown_up_tetrahedron());
    std::mt19937 rng(4);
    for (int i = 0; i < 10; ++i)
        all.push_back(fixtures::random_quasi_smooth_polygons(rng, 1).front());
    for (const auto& P : all) {
        EwaldSet E = ewald_set(P);
        EXPECT_EQ(E.points(), ewald_oracle(P));
        for (const auto& x : E.points())
            EXPECT_TRUE(E.contains(negated(x)));
    }
}

TEST(EwaldSet, ProductIsProductOfSets)
{
    auto cat = builtin_catalog();
    for (const auto& [a, P] : cat)
        for (const auto& [b, Q] : cat) {
            if (P.dim() + Q.dim() > 4)
                continue;
            HPolytope R = product(P, Q);
            std::vector<LatticePoint> expect;
            for (EwaldSet Sx = ewald_set(P); const auto& x : Sx.points())
                for (EwaldSet Sy = ewald_set(Q); const auto& y : Sy.points()) {
                    LatticePoint z = x;
                    z.insert(z.end(), y.begin(), y.end());
                    expect.push_back(z);
                }
            std::sort(expect.begin(), expect.end());
            EXPECT_EQ(ewald_set(R).points(), expect) << a << " x " << b;
        }
}

TEST(Ewald, WeakStrongStarOnSmallFamilies)
{
    for (int n = 1; n <= 4; ++n) {
        for (const HPolytope& P : {simplex(n), cube(n)}) {
            EXPECT_TRUE(weak_ewald(P));
            EXPECT_TRUE(strong_ewald(P));
            EXPECT_TRUE(star_ewald(P));
            EXPECT_TRUE(fs_property(P));
        }
    }
    for (int n = 2; n <= 5; ++n)
        for (int k = 0; k < n; ++k) {
            HPolytope S = ssb(n, k);
            EXPECT_TRUE(weak_ewald(S)) << n << k;
            EXPECT_TRUE(strong_ewald(S)) << n << k;
            EXPECT_TRUE(star_ewald(S)) << n << k;
        }
    for (int a = 1; a <= 3; ++a)
        EXPECT_FALSE(weak_ewald(triangle_T(a)));
    EXPECT_THROW(weak_ewald(dilated_standard_simplex(2, 1)), Error);
}

TEST(Ewald, StrongBasesLieOnTheirFacets)
{
    HPolytope P = ssb(3, 2);
    auto r = strong_ewald(P);
    ASSERT_TRUE(r);
    ASSERT_EQ(r.bases.size(), P.num_facets());
    for (std::size_t j = 0; j < P.num_facets(); ++j) {
        EXPECT_EQ(abs_int(det(IntMatrix::from_rows(r.bases[j]))), 1);
        for (const auto& x : r.bases[j])
            EXPECT_EQ(dot(P.normal(j), x), P.offset(j));
    }
}

TEST(Ewald, StarSetsExamples)
{
    HPolytope C2 = cube(2), C3 = cube(3);
    auto facet = star_sets(C2, FaceRef{{0}, 1});
    EXPECT_EQ(facet.Star, std::vector<int>{0});
    EXPECT_TRUE(facet.star_lower.empty());
    auto vertex = star_sets(C2, faces(C2, 2).front());
    EXPECT_EQ(vertex.Star.size(), 2u);
    EXPECT_EQ(vertex.star_lower.size(), 1u);
    auto edge = star_sets(C3, faces(C3, 2).front());
    EXPECT_EQ(edge.Star.size(), 2u);
    EXPECT_THROW(star_sets(C2, FaceRef{{0, 1}, 2}), Error);
    auto w = star_ewald_face(C2, FaceRef{{0}, 1});
    ASSERT_TRUE(w);
    EXPECT_EQ(dot(C2.normal(0), *w.witness), 1);
}

TEST(Ewald, PaffenholzIsStrongButNotStar)
{
    HPolytope P = paffenholz();
    EXPECT_EQ(ewald_set(P).size(), 151u);
    EXPECT_TRUE(strong_ewald(P));
    auto st = star_ewald(P);
    EXPECT_FALSE(st);
    ASSERT_TRUE(st.failing_face);
    EXPECT_EQ(st.failing_face->tight_facets, (std::vector<int>{1, 2, 4, 5, 8, 9}));
    auto pts = face_points(P, *st.failing_face);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(pts.front(), rv({14, -1, -1, 6, -1, -1}));
    EXPECT_FALSE(is_deeply_smooth(P));
}

TEST(Ewald, DeeplyMonotoneImpliesStrongAndStar)
{
    for (const auto& [name, P] : builtin_catalog())
        if (is_deeply_smooth(P) && is_monotone(P)) {
            EXPECT_TRUE(strong_ewald(P)) << name;
            EXPECT_TRUE(star_ewald(P)) << name;
        }
}

TEST(Ewald, WeakImpliesFs)
{
    std::vector<std::pair<std::string, HPolytope>> all = builtin_catalog();
    all.emplace_back("paffenholz", paffenholz());
    for (int n = 3; n <= 5; ++n)
        all.emplace_back("emin", emin_construction(n));
    for (const auto& [name, P] : all)
        if (weak_ewald(P))
            EXPECT_TRUE(fs_property(P)) << name;
}

TEST(Ewald, CubeNormalization)
{
    auto c = cube_normalization(simplex(3));
    EXPECT_EQ(c.vertex, rv({-1, -1, -1}));
    for (const auto& [name, P] : builtin_catalog()) {
        auto N = cube_normalization(P);
        EXPECT_EQ(ewald_set(N.image).size(), ewald_set(P).size()) << name;
        for (EwaldSet Sx = ewald_set(N.image); const auto& x : Sx.points())
            EXPECT_LE(max_norm(x), 1) << name;
    }
    EXPECT_THROW(cube_normalization(dilated_standard_simplex(2, 1)), Error);
}

TEST(Nill, TwoDimensionalBases)
{
    auto b = nill2d_basis(cube(2));
    ASSERT_TRUE(b);
    EXPECT_EQ(abs_int(det(IntMatrix::from_rows(*b))), 1);
    EXPECT_TRUE(nill2d_basis(monotone_pentagon()));
    EXPECT_FALSE(nill2d_basis(triangle_T(3)));
    std::mt19937 rng(23);
    for (const auto& P : fixtures::random_quasi_smooth_polygons(rng, 50)) {
        EwaldSet E = ewald_set(P);
        auto B = nill2d_basis(P, E);
        ASSERT_TRUE(B);
        EXPECT_EQ(abs_int(det(IntMatrix::from_rows(*B))), 1);
        for (const auto& x : *B)
            EXPECT_TRUE(E.contains(x));
    }
}

TEST(Nill, OriginNextToFaces)
{
    HPolytope S = simplex(3);
    FaceRef v{{0, 1, 2}, 3};
    EXPECT_TRUE(verify_origin_next_to(S, v));
    EXPECT_TRUE(verify_origin_next_to(cube(2), faces(cube(2), 2).front()));
    HPolytope D = apply_unimodular(dilated_standard_simplex(2, 3), IntMatrix::identity(2), {-1, -1});
    FaceRef origin_vertex;
    for (std::size_t i = 0; i < D.num_vertices(); ++i)
        if (D.vertices()[i] == rv({-1, -1}))
            origin_vertex = FaceRef{detail::bit_indices(D.vertex_facets()[i]), 2};
    EXPECT_TRUE(verify_origin_next_to(D, origin_vertex));
    EXPECT_THROW(verify_origin_next_to(S, FaceRef{{0, 1}, 1}), Error);
    for (const auto& [name, P] : builtin_catalog())
        if (P.dim() >= 2 && is_smooth(P))
            EXPECT_TRUE(nill_higher_dim_check(P).ok) << name;
}
