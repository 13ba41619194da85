// Incremental double description: extreme rays of a pointed polyhedral cone
// {y : a_i . y >= 0} with exact integer arithmetic.
#pragma once

#include "lattice.hpp"

#include <boost/dynamic_bitset.hpp>

namespace ewald {

struct ConeRay {
    IntVector ray;
    boost::dynamic_bitset<> zero;  ///< constraints tight on the ray
};

/// Extreme rays of the cone {y in R^d : a . y >= 0 for every row a}.
/// Throws when the cone is not pointed (rank of the rows below d).
inline std::vector<IntVector> extreme_rays(const std::vector<IntVector>& rows, std::size_t d)
{
    const std::size_t m = rows.size();
    // greedy choice of d independent rows for the initial simplicial cone
    std::vector<std::size_t> basis;
    std::vector<IntVector> acc;
    for (std::size_t i = 0; i < m && basis.size() < d; ++i) {
        acc.push_back(rows[i]);
        if (rank(acc) == acc.size())
            basis.push_back(i);
        else
            acc.pop_back();
    }
    if (basis.size() < d)
        throw Error("cone is not pointed");

    IntMatrix B = IntMatrix::from_rows(acc, d);
    std::vector<ConeRay> rays;
    for (std::size_t j = 0; j < d; ++j) {
        RatVector e(d);
        e[j] = 1;
        auto sol = solve_rational(B, e);
        ConeRay cr{primitive_direction(*sol), boost::dynamic_bitset<>(m)};
        for (std::size_t k = 0; k < d; ++k)
            if (k != j)
                cr.zero.set(basis[k]);
        rays.push_back(std::move(cr));
    }

    std::vector<bool> used(m, false);
    for (auto b : basis)
        used[b] = true;

    for (std::size_t h = 0; h < m; ++h) {
        if (used[h])
            continue;
        std::vector<Int> val(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            val[r] = dot(rows[h], rays[r].ray);
            if (val[r] > 0)
                pos.push_back(r);
            else if (val[r] < 0)
                neg.push_back(r);
        }
        std::vector<ConeRay> next;
        next.reserve(rays.size());
        if (!neg.empty()) {
            for (auto p : pos)
                for (auto q : neg) {
                    boost::dynamic_bitset<> common = rays[p].zero & rays[q].zero;
                    if (common.count() + 2 < d)
                        continue;
                    bool adjacent = true;
                    for (std::size_t t = 0; t < rays.size() && adjacent; ++t)
                        if (t != p && t != q && common.is_subset_of(rays[t].zero))
                            adjacent = false;
                    if (!adjacent)
                        continue;
                    IntVector nr(d);
                    for (std::size_t k = 0; k < d; ++k)
                        nr[k] = val[p] * rays[q].ray[k] - val[q] * rays[p].ray[k];
                    ConeRay cr{primitive_part(nr), common};
                    cr.zero.set(h);
                    next.push_back(std::move(cr));
                }
        }
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (val[r] < 0)
                continue;
            if (val[r] == 0)
                rays[r].zero.set(h);
            next.push_back(std::move(rays[r]));
        }
        rays = std::move(next);
    }

    std::vector<IntVector> out;
    out.reserve(rays.size());
    for (auto& r : rays)
        out.push_back(std::move(r.ray));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace ewald
