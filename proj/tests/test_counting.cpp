#include <ewald/counting.hpp>

#include <gtest/gtest.h>

using namespace ewald;

namespace {

// Coefficient of x^k in (1+x+x^2)^n by the closed sum over the number of x^2 factors.
Int trinomial_oracle(int n, int k)
{
    Int total = 0;
    for (int j = 0; 2 * j <= k; ++j) {
        int ones = k - 2 * j;
        if (j + ones > n)
            continue;
        Int c = 1;
        // n! / (j! ones! (n-j-ones)!)
        for (int i = 1; i <= n; ++i)
            c *= i;
        for (int i = 1; i <= j; ++i)
            c /= i;
        for (int i = 1; i <= ones; ++i)
            c /= i;
        for (int i = 1; i <= n - j - ones; ++i)
            c /= i;
        total += c;
    }
    return total;
}

} // namespace

TEST(Counting, TrinomialMatchesClosedSum)
{
    for (int n = 0; n <= 20; ++n)
        for (int k = -1; k <= 2 * n + 1; ++k)
            EXPECT_EQ(trinomial(n, k), trinomial_oracle(n, k)) << n << " " << k;
    EXPECT_THROW(trinomial(-1, 0), Error);
}

TEST(Counting, SimplexCounts)
{
    const int expect[] = {3, 7, 19, 51, 141, 393, 1107, 3139, 8953};
    for (int n = 1; n <= 9; ++n)
        EXPECT_EQ(ewald_count_simplex(n), expect[n - 1]);
    for (int n = 1; n <= 5; ++n)
        EXPECT_EQ(Int(ewald_set(simplex(n)).size()), ewald_count_simplex(n));
    EXPECT_THROW(ewald_count_simplex(0), Error);
}

TEST(Counting, SsbCounts)
{
    EXPECT_EQ(ewald_count_ssb(3, 2), 13);
    EXPECT_EQ(ewald_count_ssb(5, 1), 141);
    EXPECT_EQ(ewald_count_ssb(9, 8), 3157);
    for (int n = 2; n <= 5; ++n)
        for (int k = 0; k < n; ++k)
            EXPECT_EQ(Int(ewald_set(ssb(n, k)).size()), ewald_count_ssb(n, k)) << n << " " << k;
    EXPECT_THROW(ewald_count_ssb(3, 3), Error);
    EXPECT_THROW(ewald_count_ssb(1, 0), Error);
}

TEST(Counting, EminBound)
{
    const int expect[] = {13, 27, 59, 117, 243};
    for (int n = 3; n <= 7; ++n)
        EXPECT_EQ(emin_upper_bound(n), expect[n - 3]);
    EXPECT_EQ(emin_upper_bound(12), 9477);
    EXPECT_EQ(emin_upper_bound(31), Int("10460353203"));
    EXPECT_THROW(emin_upper_bound(2), Error);
}

TEST(Counting, EminConstructionsAttainTheBound)
{
    for (int n = 3; n <= 6; ++n) {
        HPolytope P = emin_construction(n);
        EXPECT_EQ(P.dim(), static_cast<std::size_t>(n));
        EXPECT_TRUE(is_monotone(P));
        EXPECT_EQ(Int(ewald_set(P).size()), emin_upper_bound(n)) << n;
    }
}

TEST(Counting, FacetSplits)
{
    auto s = facet_ewald_split(segment(), 0);
    EXPECT_EQ(s, (FacetEwaldSplit{1, 1, 1}));
    for (int n = 2; n <= 5; ++n)
        for (int f = 0; f <= n; ++f)
            EXPECT_EQ(facet_ewald_split(simplex(n), f), simplex_split(n)) << n << " " << f;
    EXPECT_EQ(simplex_split(3).e_zero, 7);
    EXPECT_EQ(simplex_split(3).e_plus, 6);
    EXPECT_THROW(facet_ewald_split(dilated_standard_simplex(2, 1), 0), Error);
}

TEST(Counting, SmallBundleSplitRecursion)
{
    auto two = small_bundle_split_recursion_check(segment(), 0, 2);
    EXPECT_TRUE(two.ok());
    EXPECT_EQ(two.measured.total(), 13);
    auto three = small_bundle_split_recursion_check(segment(), 0, 3);
    EXPECT_TRUE(three.ok());
    EXPECT_EQ(three.measured.e_plus, 9);
    EXPECT_EQ(three.measured.e_zero, 9);
    HPolytope B4 = small_fiber_bundle(segment(), 0, 3);
    auto six = small_bundle_split_recursion_check(B4, static_cast<int>(B4.num_facets()) - 1, 2);
    EXPECT_TRUE(six.ok());
    EXPECT_EQ(six.measured.total(), 117);
    EXPECT_EQ(Int(ewald_set(small_fiber_bundle(B4, static_cast<int>(B4.num_facets()) - 1, 2)).size()), 117);
}

TEST(Counting, SsbPatterns)
{
    for (int n = 2; n <= 7; ++n)
        for (int k = 0; k < n; ++k)
            EXPECT_TRUE(ssb_patterns_check(n, k).all()) << n << " " << k;
}

TEST(Counting, SsbVolumeTieOnlyInDimensionTwo)
{
    EXPECT_FALSE(ssb_patterns_check(2, 0).volume_strict);
    for (int n = 3; n <= 6; ++n)
        for (int k = 0; k < n - 1; ++k)
            EXPECT_TRUE(ssb_patterns_check(n, k).volume_strict) << n << " " << k;
}
