// Closed-form Ewald counts and the checks that compare them with enumeration.
#pragma once

#include "generators.hpp"

#include <mutex>

namespace ewald {

/// T(n,k) = [x^k](1+x+x^2)^n, memoized by rows.
class TrinomialTable {
public:
    Int operator()(int n, int k)
    {
        if (n < 0)
            throw Error("trinomial row must be nonnegative");
        if (k < 0 || k > 2 * n)
            return 0;
        std::lock_guard<std::mutex> lock(mu_);
        while (static_cast<int>(rows_.size()) <= n) {
            if (rows_.empty()) {
                rows_.push_back({1});
                continue;
            }
            const auto& prev = rows_.back();
            std::vector<Int> next(prev.size() + 2);
            for (std::size_t i = 0; i < prev.size(); ++i)
                for (std::size_t d = 0; d < 3; ++d)
                    next[i + d] += prev[i];
            rows_.push_back(std::move(next));
        }
        return rows_[n][k];
    }

private:
    std::mutex mu_;
    std::vector<std::vector<Int>> rows_;
};

inline TrinomialTable& trinomial_table()
{
    static TrinomialTable t;
    return t;
}

inline Int trinomial(int n, int k) { return trinomial_table()(n, k); }

inline Int ewald_count_simplex(int n)
{
    if (n < 1)
        throw Error("simplex dimension must be at least 1");
    return trinomial(n + 1, n + 1);
}

inline Int ewald_count_ssb(int n, int k)
{
    if (n < 2 || k < 0 || k > n - 1)
        throw Error("SSB parameters out of range");
    return trinomial(n, n) + 2 * trinomial(n, n - k);
}

inline Int emin_upper_bound(int n)
{
    if (n < 3)
        throw Error("excluded case: the bound is stated for n >= 3");
    Int nine = 9;
    switch (n % 3) {
    case 1:
        return 3 * boost::multiprecision::pow(nine, (n - 1) / 3);
    case 2:
        return 59 * boost::multiprecision::pow(nine, (n - 5) / 3);
    default:
        return 13 * boost::multiprecision::pow(nine, (n - 3) / 3);
    }
}

struct FacetEwaldSplit {
    Int e_plus, e_zero, e_minus;
    Int total() const { return e_plus + e_zero + e_minus; }
    bool operator==(const FacetEwaldSplit&) const = default;
};

inline FacetEwaldSplit facet_ewald_split(const HPolytope& P, int facet, const EwaldSet& E)
{
    if (!is_monotone(P))
        throw Error("facet split requires a monotone polytope");
    if (facet < 0 || static_cast<std::size_t>(facet) >= P.num_facets())
        throw Error("facet index out of range");
    FacetEwaldSplit s;
    for (const auto& x : E.points()) {
        Int v = dot(P.normal(facet), x);
        if (v == 1)
            ++s.e_plus;
        else if (v == 0)
            ++s.e_zero;
        else if (v == -1)
            ++s.e_minus;
    }
    return s;
}

inline FacetEwaldSplit facet_ewald_split(const HPolytope& P, int facet)
{
    return facet_ewald_split(P, facet, ewald_set(P));
}

/// Split of Delta_n at any facet: E_0 = |E(Delta_{n-1})|, E_+ = (|E(Delta_n)| - E_0) / 2.
inline FacetEwaldSplit simplex_split(int n)
{
    Int zero = n == 1 ? Int(1) : ewald_count_simplex(n - 1);
    Int plus = (ewald_count_simplex(n) - zero) / 2;
    return {plus, zero, plus};
}

/// Split of the small fiber bundle at F' predicted from the split of the base.
inline FacetEwaldSplit small_bundle_split_prediction(const FacetEwaldSplit& base, int n)
{
    FacetEwaldSplit d = simplex_split(n);
    Int plus = Int(n) * base.e_plus + d.e_plus * base.e_zero;
    Int zero = 2 * base.e_plus + d.e_zero * base.e_zero;
    return {plus, zero, plus};
}

struct SplitRecursionCheck {
    FacetEwaldSplit predicted, measured;
    bool ok() const { return predicted == measured; }
};

inline SplitRecursionCheck small_bundle_split_recursion_check(const HPolytope& B, int facet, int n)
{
    HPolytope P = small_fiber_bundle(B, facet, n);
    auto base = facet_ewald_split(B, facet);
    return {small_bundle_split_prediction(base, n), facet_ewald_split(P, static_cast<int>(P.num_facets()) - 1)};
}

struct SsbPatterns {
    bool zero_twist = true;    // |E(SSB(n,0))| = 3 |E(Delta_{n-1})|
    bool unit_twist = true;    // |E(SSB(n,1))| = |E(Delta_n)|
    bool max_twist = true;     // |E(SSB(n,n-1))| = |E(Delta_{n-1})| + 2n
    bool decreasing = true;    // in k
    bool volume_increasing = true;  // weakly; SSB(2,0) and SSB(2,1) both have area 4
    bool volume_strict = true;
    bool ratio_bounds = true;  // 1 < |E(SSB)| / |E(Delta_{n-1})| <= 3
    bool all() const { return zero_twist && unit_twist && max_twist && decreasing && volume_increasing && ratio_bounds; }
};

/// Checks the numbered patterns for SSB(n,k), comparing with the neighbouring twist where needed.
inline SsbPatterns ssb_patterns_check(int n, int k)
{
    if (n < 2 || k < 0 || k > n - 1)
        throw Error("SSB parameters out of range");
    SsbPatterns r;
    Int e = ewald_count_ssb(n, k);
    Int base = ewald_count_simplex(n - 1);
    if (k == 0)
        r.zero_twist = e == 3 * base;
    if (k == 1)
        r.unit_twist = e == ewald_count_simplex(n);
    if (k == n - 1)
        r.max_twist = e == base + 2 * n;
    if (k + 1 <= n - 1) {
        r.decreasing = ewald_count_ssb(n, k + 1) < e;
        Rational v0 = volume(ssb(n, k)), v1 = volume(ssb(n, k + 1));
        r.volume_increasing = v1 >= v0;
        r.volume_strict = v1 > v0;
    }
    r.ratio_bounds = e > base && e <= 3 * base;
    return r;
}

} // namespace ewald
