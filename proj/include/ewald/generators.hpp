// Named polytope families. Rows are emitted in a fixed order per family.
#pragma once

#include "bundles.hpp"

#include <functional>

namespace ewald {

namespace detail {

inline void require(bool ok, const std::string& msg)
{
    if (!ok)
        throw Error(msg);
}

inline IntVector unit(std::size_t n, std::size_t i, int s = 1)
{
    IntVector e(n);
    e[i] = s;
    return e;
}

inline IntVector ones(std::size_t n, int s = 1) { return IntVector(n, Int(s)); }

} // namespace detail

/// Monotone simplex: x_i >= -1, sum x_i <= 1.
inline HPolytope simplex(int n)
{
    detail::require(n >= 1, "simplex dimension must be at least 1");
    std::vector<IntVector> rows;
    for (int i = 0; i < n; ++i)
        rows.push_back(detail::unit(n, i, -1));
    rows.push_back(detail::ones(n));
    return HPolytope::from_facets(rows, std::vector<Int>(n + 1, Int(1)));
}

/// k delta_n: x_i >= 0, sum x_i <= k.
inline HPolytope dilated_standard_simplex(int n, int k)
{
    detail::require(n >= 1 && k >= 1, "dilated simplex needs n >= 1 and k >= 1");
    std::vector<IntVector> rows;
    std::vector<Int> offs;
    for (int i = 0; i < n; ++i) {
        rows.push_back(detail::unit(n, i, -1));
        offs.push_back(0);
    }
    rows.push_back(detail::ones(n));
    offs.push_back(k);
    return HPolytope::from_facets(rows, offs);
}

/// [-1,1]^n, rows x_1 <= 1, -x_1 <= 1, x_2 <= 1, ...
inline HPolytope cube(int n)
{
    detail::require(n >= 1, "cube dimension must be at least 1");
    std::vector<IntVector> rows;
    for (int i = 0; i < n; ++i) {
        rows.push_back(detail::unit(n, i, 1));
        rows.push_back(detail::unit(n, i, -1));
    }
    return HPolytope::from_facets(rows, std::vector<Int>(2 * n, Int(1)));
}

inline HPolytope segment() { return cube(1); }

/// DP_n: |x_i| <= 1 and |sum x_i| <= 1. DP_1 is the segment.
inline HPolytope del_pezzo(int n)
{
    detail::require(n >= 1, "del Pezzo dimension must be at least 1");
    if (n == 1)
        return segment();
    std::vector<IntVector> rows;
    for (int i = 0; i < n; ++i) {
        rows.push_back(detail::unit(n, i, 1));
        rows.push_back(detail::unit(n, i, -1));
    }
    rows.push_back(detail::ones(n, 1));
    rows.push_back(detail::ones(n, -1));
    return HPolytope::from_facets(rows, std::vector<Int>(rows.size(), Int(1)));
}

/// SSB(n,k): x_i >= -1 for all i; x_1 <= 1; k x_1 + x_2 + ... + x_n <= 1.
inline HPolytope ssb(int n, int k)
{
    detail::require(n >= 2, "SSB needs n >= 2");
    detail::require(k >= 0 && k <= n - 1, "SSB twist k must lie in [0, n-1]");
    std::vector<IntVector> rows;
    for (int i = 0; i < n; ++i)
        rows.push_back(detail::unit(n, i, -1));
    rows.push_back(detail::unit(n, 0, 1));
    IntVector last = detail::ones(n);
    last[0] = k;
    rows.push_back(last);
    return HPolytope::from_facets(rows, std::vector<Int>(n + 2, Int(1)));
}

/// The same polytope as a bundle over [-1,1] with fiber the (n-1)-simplex.
inline BundleSpec ssb_bundle_spec(int n, int k)
{
    detail::require(n >= 2 && k >= 0 && k <= n - 1, "SSB twist k must lie in [0, n-1]");
    HPolytope Q = simplex(n - 1);
    IntMatrix S(Q.num_facets(), 1);
    S(Q.num_facets() - 1, 0) = k;
    return BundleSpec{segment(), Q, S, {}};
}

/// Small fiber bundle over a monotone base B with fiber Delta_n at facet F:
/// u_i . x <= 1; -y_j <= 1; sum y_j + n u_F . x <= 1. The last row is F'.
inline HPolytope small_fiber_bundle(const HPolytope& B, int facet, int n)
{
    detail::require(n >= 1, "fiber dimension must be at least 1");
    if (!is_monotone(B))
        throw Error("small fiber bundle requires a monotone base");
    detail::require(facet >= 0 && static_cast<std::size_t>(facet) < B.num_facets(), "facet index out of range");
    const std::size_t k = B.dim(), d = k + n;
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < B.num_facets(); ++i) {
        IntVector r = B.normal(i);
        r.resize(d);
        rows.push_back(std::move(r));
    }
    for (int j = 0; j < n; ++j)
        rows.push_back(detail::unit(d, k + j, -1));
    IntVector last(d);
    for (std::size_t i = 0; i < k; ++i)
        last[i] = Int(n) * B.normal(facet)[i];
    for (int j = 0; j < n; ++j)
        last[k + j] = 1;
    rows.push_back(std::move(last));
    return HPolytope::from_facets(rows, std::vector<Int>(rows.size(), Int(1)));
}

inline BundleSpec small_fiber_bundle_spec(const HPolytope& B, int facet, int n)
{
    HPolytope Q = simplex(n);
    IntMatrix S(Q.num_facets(), B.dim());
    for (std::size_t i = 0; i < B.dim(); ++i)
        S(Q.num_facets() - 1, i) = Int(n) * B.normal(facet)[i];
    return BundleSpec{B, Q, S, {}};
}

/// Fiber dimensions of the iterated small fiber bundles over [-1,1] giving the
/// bounds 3 9^k, 59 9^(k-1), 13 9^k in dimension n.
inline std::vector<int> emin_fiber_sequence(int n)
{
    detail::require(n >= 3, "excluded case: n must be at least 3");
    std::vector<int> seq;
    int r = n % 3;
    int threes = r == 1 ? (n - 1) / 3 : r == 2 ? (n - 5) / 3 : (n - 3) / 3;
    seq.assign(threes, 3);
    if (r == 2) {
        seq.push_back(2);
        seq.push_back(2);
    } else if (r == 0) {
        seq.push_back(2);
    }
    return seq;
}

/// Iterated small fiber bundle over [-1,1], each step at the previous F'.
inline HPolytope emin_construction(int n)
{
    HPolytope P = segment();
    for (int f : emin_fiber_sequence(n))
        P = small_fiber_bundle(P, static_cast<int>(P.num_facets()) - 1, f);
    return P;
}

/// The 6-dimensional example with rows -I then A, all offsets 1.
inline HPolytope paffenholz()
{
    std::vector<IntVector> rows;
    for (int i = 0; i < 6; ++i)
        rows.push_back(detail::unit(6, i, -1));
    rows.push_back({-1, 0, 0, 1, 0, 0});
    rows.push_back({-1, 0, 1, 2, 0, 0});
    rows.push_back({-1, 1, 1, 3, 1, 0});
    rows.push_back({1, 0, 0, -2, 0, 1});
    return HPolytope::from_facets(rows, std::vector<Int>(10, Int(1)));
}

/// T_a = conv{(1,0), (0,1), (-a,-a)}.
inline HPolytope triangle_T(int a)
{
    detail::require(a > 0, "T_a requires a >= 1");
    VPolytope V{2, {{1, 0}, {0, 1}, {Rational(-a), Rational(-a)}}};
    return facet_description(V);
}

inline HPolytope monotone_triangle() { return simplex(2); }

inline HPolytope monotone_trapezoid()
{
    return HPolytope::from_facets({{-1, 0}, {0, -1}, {1, 0}, {1, 1}}, {1, 1, 1, 1});
}

inline HPolytope monotone_square() { return cube(2); }

inline HPolytope monotone_pentagon()
{
    return HPolytope::from_facets({{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}}, {1, 1, 1, 1, 1});
}

inline HPolytope monotone_hexagon() { return del_pezzo(2); }

inline std::vector<std::pair<std::string, HPolytope>> monotone_polygons()
{
    return {{"triangle", monotone_triangle()},
            {"trapezoid", monotone_trapezoid()},
            {"square", monotone_square()},
            {"pentagon", monotone_pentagon()},
            {"hexagon", monotone_hexagon()}};
}

/// Smooth tetrahedron of size 3 with its four vertices cut at distance one.
inline HPolytope blown_up_tetrahedron()
{
    return HPolytope::from_facets({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {1, 1, 1}, {-1, -1, -1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                                  {0, 0, 0, 3, -1, 2, 2, 2});
}

struct FamilyInfo {
    std::string name;
    std::string params;
    std::string description;
};

inline const std::vector<FamilyInfo>& family_list()
{
    static const std::vector<FamilyInfo> list = {
        {"simplex", "n", "monotone simplex x_i >= -1, sum x_i <= 1"},
        {"kdelta", "n k", "dilated standard simplex x_i >= 0, sum x_i <= k"},
        {"cube", "n", "[-1,1]^n"},
        {"segment", "", "[-1,1]"},
        {"delpezzo", "n", "|x_i| <= 1, |sum x_i| <= 1"},
        {"ssb", "n k", "simplex-segment bundle with twist k"},
        {"small-bundle", "n", "small fiber bundle with fiber Delta_n over [-1,1]"},
        {"emin", "n", "iterated small fiber bundle with few Ewald points"},
        {"paffenholz", "", "6-dimensional strong but not star Ewald polytope"},
        {"T", "a", "triangle conv{(1,0),(0,1),(-a,-a)}"},
        {"triangle", "", "monotone triangle"},
        {"trapezoid", "", "monotone trapezoid"},
        {"square", "", "monotone square"},
        {"pentagon", "", "monotone pentagon"},
        {"hexagon", "", "monotone hexagon"},
        {"tetra-blowup", "", "size-3 tetrahedron with vertices cut"},
    };
    return list;
}

/// Builds a family member from its name and integer parameters.
inline HPolytope generate(const std::string& family, const std::vector<int>& args)
{
    auto arg = [&](std::size_t i) {
        if (i >= args.size())
            throw Error("family " + family + " needs more parameters");
        return args[i];
    };
    auto none = [&] {
        if (!args.empty())
            throw Error("family " + family + " takes no parameters");
    };
    if (family == "simplex")
        return simplex(arg(0));
    if (family == "kdelta")
        return dilated_standard_simplex(arg(0), arg(1));
    if (family == "cube")
        return cube(arg(0));
    if (family == "segment")
        return none(), segment();
    if (family == "delpezzo")
        return del_pezzo(arg(0));
    if (family == "ssb")
        return ssb(arg(0), arg(1));
    if (family == "small-bundle")
        return small_fiber_bundle(segment(), 0, arg(0));
    if (family == "emin")
        return emin_construction(arg(0));
    if (family == "paffenholz")
        return none(), paffenholz();
    if (family == "T")
        return triangle_T(arg(0));
    if (family == "triangle")
        return none(), monotone_triangle();
    if (family == "trapezoid")
        return none(), monotone_trapezoid();
    if (family == "square")
        return none(), monotone_square();
    if (family == "pentagon")
        return none(), monotone_pentagon();
    if (family == "hexagon")
        return none(), monotone_hexagon();
    if (family == "tetra-blowup")
        return none(), blown_up_tetrahedron();
    throw Error("unknown family " + family);
}

/// Catalog of fixed builtin members used by batch checks and the property suites.
inline std::vector<std::pair<std::string, HPolytope>> builtin_catalog()
{
    std::vector<std::pair<std::string, HPolytope>> out = monotone_polygons();
    out.emplace_back("segment", segment());
    for (int n = 3; n <= 4; ++n) {
        out.emplace_back("simplex-" + std::to_string(n), simplex(n));
        out.emplace_back("cube-" + std::to_string(n), cube(n));
    }
    out.emplace_back("delpezzo-4", del_pezzo(4));
    for (int k = 0; k <= 2; ++k)
        out.emplace_back("ssb-3-" + std::to_string(k), ssb(3, k));
    out.emplace_back("small-bundle-2", small_fiber_bundle(segment(), 0, 2));
    return out;
}

} // namespace ewald
