// Displacements: P_b for integer offset vectors b, first displacements of
// faces, the deep-smoothness characterizations, and the bounded neatness search.
#pragma once

#include "classify.hpp"

#include <functional>

namespace ewald {

using Displacement = IntVector;

/// P_b = {A x <= c + b} with validity flags; not reduced in place.
struct DisplacedSystem {
    IntMatrix normals;
    RatVector offsets;
    bool feasible = false;
    bool full_dimensional = false;
    bool irredundant = false;
    bool normally_isomorphic = false;  // to the undisplaced polytope, over the same rows
    std::optional<HPolytope> polytope;  // reduced polytope when full-dimensional
};

inline DisplacedSystem displace(const HPolytope& P, const Displacement& b)
{
    if (b.size() != P.num_facets())
        throw Error("displacement length does not match facet count");
    DisplacedSystem d;
    d.normals = P.normals();
    d.offsets = P.offsets();
    for (std::size_t j = 0; j < b.size(); ++j)
        d.offsets[j] += Rational(b[j]);
    try {
        std::vector<int> src;
        HPolytope Q = HPolytope::from_inequalities(d.normals, d.offsets, nullptr, &src);
        d.feasible = d.full_dimensional = true;
        d.irredundant = src.size() == P.num_facets();
        d.normally_isomorphic = d.irredundant && normal_fan_signature(Q) == normal_fan_signature(P);
        d.polytope = std::move(Q);
    } catch (const GeometryError& e) {
        d.feasible = e.kind() == GeometryError::Kind::not_full_dimensional;
    }
    return d;
}

struct FirstDisplacement {
    enum class Status { ok, vanishes, degenerate };
    FaceRef face;
    Status status = Status::vanishes;
    // ok: full-dimensional in the chart of the face's affine span;
    // degenerate: full-dimensional in the chart of its own affine hull.
    std::optional<ChartSlice> slice;
};

/// P cap {u_i . x = b_i - 1 for the facets i of f}.
inline FirstDisplacement try_first_displacement(const HPolytope& P, const FaceRef& f)
{
    if (!is_face(P, f))
        throw Error("invalid face " + to_string(f));
    FirstDisplacement out;
    out.face = f;
    std::vector<IntVector> U;
    RatVector r;
    for (int i : f.tight_facets) {
        U.push_back(P.normal(i));
        r.push_back(P.offset(i) - 1);
    }
    auto ch = make_chart(IntMatrix::from_rows(U, P.dim()), r);
    if (!ch)
        return out;
    try {
        out.slice = restrict_to_chart(*ch, P.normals(), P.offsets(), f.tight_facets);
        out.status = FirstDisplacement::Status::ok;
    } catch (const GeometryError& e) {
        if (e.kind() == GeometryError::Kind::empty)
            return out;
        if (e.kind() != GeometryError::Kind::not_full_dimensional)
            throw;
        out.slice = affine_hull_slice(P.normals(), P.offsets(), U, r);
        out.status = FirstDisplacement::Status::degenerate;
    }
    return out;
}

/// First displacement of a face; throws when it is empty.
inline FirstDisplacement first_displacement(const HPolytope& P, const FaceRef& f)
{
    auto d = try_first_displacement(P, f);
    if (d.status == FirstDisplacement::Status::vanishes)
        throw Error("displacement vanishes");
    return d;
}

/// All proper faces of a simple polytope, by increasing codimension.
inline std::vector<FaceRef> proper_faces(const HPolytope& P)
{
    std::vector<FaceRef> out;
    for (int k = 1; k <= static_cast<int>(P.dim()); ++k)
        for (auto& f : faces(P, k))
            out.push_back(std::move(f));
    return out;
}

struct DeepCharacterizations {
    bool corners = false;                   // corner parallelepipeds contained
    bool displacements_isomorphic = false;  // every face's first displacement normally isomorphic to it
    bool ut_free = false;                   // P and every first displacement UT-free
    bool agree() const { return corners == displacements_isomorphic && corners == ut_free; }
};

inline DeepCharacterizations deeply_smooth_characterizations(const HPolytope& P)
{
    if (!P.is_lattice() || !is_smooth(P))
        throw Error("deep smoothness requires a smooth lattice polytope");
    DeepCharacterizations r;
    r.corners = is_deeply_smooth(P).ok;
    r.displacements_isomorphic = true;
    r.ut_free = ut_free_general(P).ok;
    for (const auto& f : proper_faces(P)) {
        auto d = try_first_displacement(P, f);
        if (d.status != FirstDisplacement::Status::ok) {
            r.displacements_isomorphic = false;
        } else if (r.displacements_isomorphic) {
            auto F = face_in_chart(P, f.tight_facets);
            if (!normally_isomorphic(d.slice->polytope, F.polytope))
                r.displacements_isomorphic = false;
        }
        if (r.ut_free && d.slice && !ut_free_general(d.slice->polytope))
            r.ut_free = false;
        if (!r.displacements_isomorphic && !r.ut_free)
            break;
    }
    return r;
}

namespace detail {

// Fixed-width inequality system used by the inner loops of the neatness search.
struct SmallSystem {
    std::size_t n = 0;
    std::vector<long long> A;  // row-major m x n
    std::size_t m = 0;
};

inline bool fits(const Int& x, long long bound = (1LL << 40)) { return x < bound && x > -bound; }

// Lattice point of {A x <= c} inside [lo, hi], depth-first with partial-sum pruning.
inline bool find_lattice_point_ll(const SmallSystem& S, const std::vector<long long>& c, const std::vector<long long>& lo,
                                  const std::vector<long long>& hi, std::vector<long long>& x)
{
    const std::size_t n = S.n, m = S.m;
    for (std::size_t i = 0; i < n; ++i)
        if (lo[i] > hi[i])
            return false;
    if (n == 0) {
        for (std::size_t j = 0; j < m; ++j)
            if (c[j] < 0)
                return false;
        return true;
    }
    std::vector<long long> tail(m * (n + 1), 0);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = n; i-- > 0;) {
            long long a = S.A[j * n + i];
            tail[j * (n + 1) + i] = tail[j * (n + 1) + i + 1] + (a >= 0 ? a * lo[i] : a * hi[i]);
        }
    std::vector<long long> partial(m, 0);
    x.assign(n, 0);
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == n)
            return true;
        for (long long v = lo[i]; v <= hi[i]; ++v) {
            bool ok = true;
            for (std::size_t j = 0; j < m; ++j) {
                partial[j] += S.A[j * n + i] * v;
                if (partial[j] + tail[j * (n + 1) + i + 1] > c[j])
                    ok = false;
            }
            if (ok) {
                x[i] = v;
                if (self(self, i + 1))
                    return true;
            }
            for (std::size_t j = 0; j < m; ++j)
                partial[j] -= S.A[j * n + i] * v;
        }
        return false;
    };
    return rec(rec, 0);
}

} // namespace detail

/// Decides whether P_b is normally isomorphic to a simple P by the vertex
/// (type cone) criterion: each vertex moves to the solution of its shifted
/// tight system, which must stay strictly inside the other inequalities.
class FanPreservationTest {
public:
    explicit FanPreservationTest(const HPolytope& P) : P_(&P)
    {
        if (!P.is_simple())
            throw Error("face lattice requires simple polytope");
        const std::size_t n = P.dim(), m = P.num_facets();
        small_ = true;
        for (std::size_t v = 0; v < P.num_vertices(); ++v) {
            Entry e;
            e.tight = detail::bit_indices(P.vertex_facets()[v]);
            IntMatrix AT(n, n);
            for (std::size_t i = 0; i < n; ++i)
                AT.set_row(i, P.normal(e.tight[i]));
            // rows of A_T^{-1}: solve A_T^T w = a_j for each other facet j
            IntMatrix ATt = AT.transpose();
            for (std::size_t j = 0; j < m; ++j) {
                if (P.vertex_facets()[v].test(j))
                    continue;
                auto w = solve_rational(ATt, to_rat_vector(P.normal(j)));
                Rational slack = P.offset(j) - dot(P.normal(j), P.vertices()[v]);
                RatVector all = *w;
                all.push_back(slack);
                Int den;
                IntVector num = clear_denominators(all, &den);
                Row row{static_cast<int>(j), IntVector(num.begin(), num.end() - 1), num.back(), den};
                for (const auto& x : num)
                    small_ = small_ && detail::fits(x, 1LL << 30);
                small_ = small_ && detail::fits(den, 1LL << 30);
                e.rows.push_back(std::move(row));
            }
            entries_.push_back(std::move(e));
        }
        if (small_)
            for (auto& e : entries_)
                for (auto& r : e.rows) {
                    r.wl.clear();
                    for (const auto& x : r.w)
                        r.wl.push_back(to_ll(x));
                    r.slackl = to_ll(r.slack);
                    r.denl = to_ll(r.den);
                }
    }

    /// Valid for any b; `sign` = -1 tests -b.
    bool preserves(const std::vector<long long>& b, int sign = 1) const
    {
        if (small_) {
            for (const auto& e : entries_)
                for (const auto& r : e.rows) {
                    long long s = r.slackl + r.denl * sign * b[r.j];
                    for (std::size_t i = 0; i < r.wl.size(); ++i)
                        s -= r.wl[i] * sign * b[e.tight[i]];
                    if (s <= 0)
                        return false;
                }
            return true;
        }
        for (const auto& e : entries_)
            for (const auto& r : e.rows) {
                Int s = r.slack + r.den * sign * b[r.j];
                for (std::size_t i = 0; i < r.w.size(); ++i)
                    s -= r.w[i] * sign * b[e.tight[i]];
                if (s <= 0)
                    return false;
            }
        return true;
    }

    bool preserves(const Displacement& b) const
    {
        std::vector<long long> bl;
        for (const auto& x : b) {
            if (!detail::fits(x, 1LL << 20))
                return displace(*P_, b).normally_isomorphic;
            bl.push_back(to_ll(x));
        }
        return preserves(bl);
    }

private:
    struct Row {
        int j;
        IntVector w;  // den * a_j A_T^{-1}
        Int slack;    // den * (c_j - a_j v)
        Int den;
        std::vector<long long> wl;
        long long slackl = 0, denl = 1;
    };
    struct Entry {
        std::vector<int> tight;
        std::vector<Row> rows;
    };
    const HPolytope* P_;
    std::vector<Entry> entries_;
    bool small_ = false;
};

/// Enumerates, in lexicographic order, every b in [-R, R]^m with P_b normally
/// isomorphic to P. The callback returns false to stop early.
inline void for_each_normally_isomorphic_displacement(const HPolytope& P, int radius,
                                                      const std::function<bool(const Displacement&)>& fn)
{
    if (radius < 0)
        throw Error("radius must be nonnegative");
    const std::size_t m = P.num_facets();
    std::vector<long long> b(m, -radius);
    std::optional<FanPreservationTest> fast;
    if (P.is_simple())
        fast.emplace(P);
    for (;;) {
        bool ok = fast ? fast->preserves(b) : false;
        Displacement bi(b.begin(), b.end());
        if (!fast)
            ok = displace(P, bi).normally_isomorphic;
        if (ok && !fn(bi))
            return;
        std::size_t i = m;
        while (i > 0 && b[i - 1] == radius) {
            b[i - 1] = -radius;
            --i;
        }
        if (i == 0)
            return;
        ++b[i - 1];
    }
}

inline std::vector<Displacement> normally_isomorphic_displacements(const HPolytope& P, int radius)
{
    std::vector<Displacement> out;
    for_each_normally_isomorphic_displacement(P, radius, [&](const Displacement& b) {
        out.push_back(b);
        return true;
    });
    return out;
}

/// Lattice point x with x in P_b and -x in P_{-b}, if any.
inline std::optional<LatticePoint> symmetric_point(const HPolytope& P, const Displacement& b)
{
    const std::size_t n = P.dim(), m = P.num_facets();
    // A x <= c + b and -A x <= c - b
    std::vector<IntVector> rows;
    RatVector offs;
    for (std::size_t j = 0; j < m; ++j) {
        rows.push_back(P.normal(j));
        offs.push_back(P.offset(j) + Rational(b[j]));
    }
    for (std::size_t j = 0; j < m; ++j) {
        rows.push_back(negated(P.normal(j)));
        offs.push_back(P.offset(j) - Rational(b[j]));
    }
    IntMatrix A = IntMatrix::from_rows(rows, n);
    // box from the displaced polytope's vertices
    auto d = displace(P, b);
    if (!d.feasible)
        return std::nullopt;
    std::vector<RatVector> verts;
    if (d.polytope) {
        verts = d.polytope->vertices();
    } else {
        for (const auto& r : enumerate_vertices(d.normals, d.offsets))
            verts.push_back(r.point);
    }
    auto [lo, hi] = integer_bounding_box(verts, n);

    bool small = true;
    detail::SmallSystem S{n, {}, 2 * m};
    std::vector<long long> c, lol, hil;
    for (const auto& r : rows)
        for (const auto& x : r) {
            small = small && detail::fits(x);
            if (small)
                S.A.push_back(to_ll(x));
        }
    for (const auto& o : offs) {
        Int f = floor(o);
        small = small && detail::fits(f);
        if (small)
            c.push_back(to_ll(f));
    }
    for (std::size_t i = 0; i < n && small; ++i) {
        small = detail::fits(lo[i]) && detail::fits(hi[i]);
        if (small) {
            lol.push_back(to_ll(lo[i]));
            hil.push_back(to_ll(hi[i]));
        }
    }
    if (small) {
        std::vector<long long> x;
        if (!detail::find_lattice_point_ll(S, c, lol, hil, x))
            return std::nullopt;
        return LatticePoint(x.begin(), x.end());
    }
    auto pts = lattice_points_in_box(A, offs, lo, hi);
    if (pts.empty())
        return std::nullopt;
    return pts.front();
}

struct NeatVerdict {
    enum class Status { neat_up_to_radius, counterexample };
    Status status = Status::neat_up_to_radius;
    int radius = 0;
    std::optional<Displacement> witness_b;
    std::optional<LatticePoint> witness_x;
    std::size_t displacements_checked = 0;

    bool neat_so_far() const { return status == Status::neat_up_to_radius; }
};

/// Bounded neatness search: every b with |b|_inf <= radius such that P_b and
/// P_{-b} are normally isomorphic to P must admit x in P_b with -x in P_{-b}.
/// Only a counterexample is conclusive.
inline NeatVerdict is_neat(const HPolytope& P, int radius)
{
    if (radius < 0)
        throw Error("radius must be nonnegative");
    if (!P.is_lattice() || !is_smooth(P))
        throw Error("neatness check requires a smooth lattice polytope");
    NeatVerdict out;
    out.radius = radius;
    FanPreservationTest fast(P);
    for_each_normally_isomorphic_displacement(P, radius, [&](const Displacement& b) {
        std::vector<long long> bl;
        for (const auto& x : b)
            bl.push_back(to_ll(x));
        if (!fast.preserves(bl, -1))
            return true;
        ++out.displacements_checked;
        auto x = symmetric_point(P, b);
        if (x)
            return true;
        out.status = NeatVerdict::Status::counterexample;
        out.witness_b = b;
        return false;
    });
    return out;
}

} // namespace ewald
