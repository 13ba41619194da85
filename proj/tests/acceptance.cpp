// One line per acceptance criterion: PASS, FAIL or SKIPPED, with a short detail.
#include "support.hpp"

#include <ewald/cli.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>

using namespace ewald;

namespace {

struct Outcome {
    enum { pass, fail, skipped } status;
    std::string detail;
};

Outcome verdict(bool ok, std::string detail) { return {ok ? Outcome::pass : Outcome::fail, std::move(detail)}; }

std::string s(const Int& x) { return x.str(); }

// The SSB value table as printed, rows n = 2..9, columns k = 0..n-1.
const std::vector<std::vector<long>> kSsbTable{
    {9, 7},
    {21, 19, 13},
    {57, 51, 39, 27},
    {153, 141, 111, 81, 61},
    {423, 393, 321, 241, 183, 153},
    {1179, 1107, 925, 715, 547, 449, 407},
    {3321, 3139, 2675, 2115, 1639, 1331, 1179, 1123},
    {9417, 8953, 7747, 6247, 4903, 3967, 3451, 3229, 3157},
};

// Recorded minima of |E| over monotone polytopes, dimensions 3..7.
const std::map<int, long> kRecordedMinima{{3, 13}, {4, 27}, {5, 59}, {6, 117}, {7, 243}};

Outcome simplex_counts()
{
    const long expect[] = {3, 7, 19, 51, 141, 393, 1107, 3139, 8953};
    std::string got;
    bool ok = true;
    for (int n = 1; n <= 9; ++n) {
        Int c = ewald_count_simplex(n);
        got += (n > 1 ? "," : "") + s(c);
        ok = ok && c == expect[n - 1];
    }
    for (int n = 1; n <= 6; ++n)
        ok = ok && Int(ewald_set(simplex(n)).size()) == ewald_count_simplex(n);
    return verdict(ok, "counts " + got + "; enumeration agrees for n <= 6");
}

Outcome ssb_table()
{
    bool ok = true;
    std::string bad;
    for (int n = 2; n <= 9; ++n)
        for (int k = 0; k < n; ++k) {
            Int f = ewald_count_ssb(n, k);
            if (f != kSsbTable[n - 2][k]) {
                ok = false;
                bad += " formula(" + std::to_string(n) + "," + std::to_string(k) + ")=" + s(f);
            }
            if (n <= 6 && Int(ewald_set(ssb(n, k)).size()) != f) {
                ok = false;
                bad += " enum(" + std::to_string(n) + "," + std::to_string(k) + ")";
            }
        }
    return verdict(ok, ok ? "36 entries match; (5,2)=" + s(ewald_count_ssb(5, 2)) + ", (8,4)=" + s(ewald_count_ssb(8, 4)) +
                                "; enumeration agrees for n <= 6"
                          : "mismatch:" + bad);
}

Outcome emin()
{
    bool ok = true;
    std::string got;
    for (int n = 3; n <= 7; ++n) {
        HPolytope P = emin_construction(n);
        auto N = cube_normalization(P);
        Int e = Int(ewald_set(N.image).size());
        got += (n > 3 ? "," : "") + s(e);
        ok = ok && is_monotone(P) && P.dim() == static_cast<std::size_t>(n) && e == emin_upper_bound(n) &&
             e == kRecordedMinima.at(n);
    }
    return verdict(ok, "|E| for dims 3..7: " + got);
}

Outcome polygons()
{
    std::map<std::size_t, int> hist;
    bool ok = true;
    std::optional<EwaldSet> shared;
    for (const auto& [name, P] : monotone_polygons()) {
        EwaldSet E = ewald_set(P);
        ++hist[E.size()];
        ok = ok && weak_ewald(P, E) && strong_ewald(P, E) && star_ewald(P, E);
        if (name == "square")
            continue;
        if (!shared)
            shared = E;
        ok = ok && *shared == E;
    }
    ok = ok && hist == std::map<std::size_t, int>{{7, 4}, {9, 1}};
    return verdict(ok, "histogram {7:" + std::to_string(hist[7]) + ", 9:" + std::to_string(hist[9]) +
                           "}; the four non-square polygons share one 7-point set");
}

Outcome paffenholz_example()
{
    std::istringstream none;
    std::ostringstream gen_out, err;
    cli_main({"gen", "paffenholz"}, none, gen_out, err);
    HPolytope P = parse_polytope(gen_out.str()).polytope;
    EwaldSet E = ewald_set(P);
    bool strong = strong_ewald(P, E).ok;
    auto st = star_ewald(P, E);
    bool ok = is_monotone(P) && strong && !st.ok && st.failing_face;
    std::string detail = "monotone, strong " + std::string(strong ? "true" : "false") + ", star " +
                         (st.ok ? "true" : "false");
    if (st.failing_face) {
        // positions in the printed facet order, counted from 1
        std::string pos;
        for (int j : st.failing_face->tight_facets)
            pos += (pos.empty() ? "" : ",") + std::to_string(j + 1);
        ok = ok && pos == "2,3,5,6,9,10";
        auto v = face_points(P, *st.failing_face);
        detail += "; failing vertex tight at facets {" + pos + "}, recomputed coordinates " + to_string(v.front()) +
                  " (printed (-4,1,1,-2,1,1) is the sign-flipped solution of the same tight system)";
    }
    return verdict(ok, detail);
}

Outcome cube_extremality()
{
    std::vector<std::pair<std::string, HPolytope>> all;
    for (int n = 1; n <= 6; ++n) {
        all.emplace_back("simplex-" + std::to_string(n), simplex(n));
        all.emplace_back("cube-" + std::to_string(n), cube(n));
    }
    for (int n : {2, 4, 6})
        all.emplace_back("delpezzo-" + std::to_string(n), del_pezzo(n));
    for (int n = 2; n <= 6; ++n)
        for (int k = 0; k < n; ++k)
            all.emplace_back("ssb-" + std::to_string(n) + "-" + std::to_string(k), ssb(n, k));
    for (int n = 3; n <= 6; ++n)
        all.emplace_back("emin-" + std::to_string(n), emin_construction(n));
    for (const auto& [name, P] : monotone_polygons())
        all.emplace_back(name, P);
    all.emplace_back("small-bundle-2", small_fiber_bundle(segment(), 0, 2));
    all.emplace_back("paffenholz", paffenholz());
    bool ok = true;
    std::string bad;
    for (const auto& [name, P] : all) {
        auto N = cube_normalization(P);
        EwaldSet E = ewald_set(N.image);
        for (const auto& x : E.points())
            if (max_norm(x) > 1) {
                ok = false;
                bad += " " + name;
                break;
            }
        std::size_t full = static_cast<std::size_t>(std::pow(3, P.dim()));
        bool is_cube = N.image.same_facets(cube(static_cast<int>(P.dim())));
        if ((E.size() == full) != is_cube) {
            ok = false;
            bad += " " + name + "(size)";
        }
    }
    return verdict(ok, ok ? std::to_string(all.size()) + " monotone builtins, E inside {-1,0,1}^n, 3^n only for cubes"
                          : "violations:" + bad);
}

Outcome property_suites()
{
    std::vector<std::string> failures;
    auto need = [&](bool ok, const std::string& what) {
        if (!ok)
            failures.push_back(what);
    };
    auto cat = builtin_catalog();

    for (const auto& [name, P] : cat) {
        EwaldSet E = ewald_set(P);
        for (const auto& x : E.points())
            if (!E.contains(negated(x))) {
                need(false, "negation " + name);
                break;
            }
    }

    std::size_t pairs = 0;
    for (const auto& [a, P] : cat)
        for (const auto& [b, Q] : cat) {
            if (P.dim() + Q.dim() > 6)
                continue;
            ++pairs;
            HPolytope R = product(P, Q);
            EwaldSet EP = ewald_set(P), EQ = ewald_set(Q), ER = ewald_set(R);
            bool same = ER.size() == EP.size() * EQ.size();
            for (const auto& x : EP.points())
                for (const auto& y : EQ.points()) {
                    LatticePoint z = x;
                    z.insert(z.end(), y.begin(), y.end());
                    same = same && ER.contains(z);
                }
            need(same, "product set " + a + " x " + b);
            need(weak_ewald(R, ER).ok == (weak_ewald(P, EP).ok && weak_ewald(Q, EQ).ok), "weak product " + a + " x " + b);
            need(strong_ewald(R, ER).ok == (strong_ewald(P, EP).ok && strong_ewald(Q, EQ).ok),
                 "strong product " + a + " x " + b);
            need(star_ewald(R, ER).ok == (star_ewald(P, EP).ok && star_ewald(Q, EQ).ok), "star product " + a + " x " + b);
        }

    std::mt19937 rng(2024);
    for (int i = 0; i < 60; ++i) {
        HPolytope P = fixtures::random_smooth_lattice(rng, 2 + i % 3);
        need(deeply_smooth_characterizations(P).agree(), "deep characterizations #" + std::to_string(i));
    }

    for (const auto& [name, P] : cat) {
        if (!is_monotone(P))
            continue;
        if (is_deeply_smooth(P))
            need(strong_ewald(P).ok && star_ewald(P).ok, "deeply monotone " + name);
        if (P.dim() >= 2 && is_ut_free(P))
            for (std::size_t j = 0; j < P.num_facets(); ++j) {
                auto d = first_displacement(P, FaceRef{{static_cast<int>(j)}, 1});
                need(d.status == FirstDisplacement::Status::ok && is_reflexive(d.slice->polytope),
                     "first displacement reflexive " + name);
            }
        if (weak_ewald(P).ok)
            need(fs_property(P), "weak implies FS " + name);
    }

    auto specs = fixtures::random_bundle_specs(rng, 40);
    for (int n = 2; n <= 5; ++n)
        for (int k = 0; k < n; ++k)
            specs.push_back(ssb_bundle_spec(n, k));
    for (int n = 1; n <= 3; ++n)
        specs.push_back(small_fiber_bundle_spec(segment(), 0, n));
    for (const auto& sp : specs) {
        need(bundle_classification(sp).conjunction_holds(), "bundle classification");
        if (!sp.base.origin_in_interior() || !sp.fiber.origin_in_interior())
            continue;
        EwaldSet E = ewald_set(build_bundle(sp));
        for (EwaldSet Sy = ewald_set(sp.fiber); const auto& y : Sy.points())
            need(E.contains(fiber_inclusion(sp.base.dim(), y)), "fiber inclusion");
    }

    for (int n = 2; n <= 7; ++n)
        for (int k = 0; k < n; ++k)
            need(ssb_patterns_check(n, k).all(), "SSB patterns " + std::to_string(n) + "," + std::to_string(k));

    int oda = 0;
    for (const auto& [a, P] : cat)
        for (const auto& [b, Q] : cat) {
            if (oda >= 20 || P.dim() != Q.dim() || P.dim() > 3 || !normal_fan_refines(P, Q))
                continue;
            need(oda_instance_check(P, Q), "oda " + a + " + " + b);
            ++oda;
        }
    need(oda == 20, "oda pair count");

    for (int n = 1; n <= 4; ++n) {
        need(is_neat(simplex(n), 2).neat_so_far(), "neat simplex " + std::to_string(n));
        need(is_neat(cube(n), 2).neat_so_far(), "neat cube " + std::to_string(n));
    }
    for (const auto& [name, P] : monotone_polygons())
        need(is_neat(P, 2).neat_so_far(), "neat " + name);

    std::string detail = std::to_string(pairs) + " product pairs, " + std::to_string(specs.size()) + " bundles, " +
                         std::to_string(oda) + " oda pairs";
    if (!failures.empty()) {
        detail += "; failed:";
        for (std::size_t i = 0; i < failures.size() && i < 8; ++i)
            detail += " [" + failures[i] + "]";
    }
    return verdict(failures.empty(), detail);
}

Outcome probe_crosscheck()
{
    auto h = star_probe_crosscheck(monotone_hexagon(), 4, 3);
    auto c = star_probe_crosscheck(cube(3), 4, 3);
    bool ok = h.sampled > 0 && h.displaceable == h.sampled && c.sampled > 0 && c.displaceable == c.sampled;
    return verdict(ok, "hexagon " + std::to_string(h.displaceable) + "/" + std::to_string(h.sampled) + ", C_3 " +
                           std::to_string(c.displaceable) + "/" + std::to_string(c.sampled) + " displaceable");
}

Outcome nill()
{
    bool ok = true;
    for (int a = 1; a <= 5; ++a)
        ok = ok && ewald_set(triangle_T(a)).points() == std::vector<LatticePoint>{LatticePoint(2)};
    std::mt19937 rng(77);
    int good = 0;
    for (const auto& P : fixtures::random_quasi_smooth_polygons(rng, 50)) {
        EwaldSet E = ewald_set(P);
        auto B = nill2d_basis(P, E);
        if (B && abs_int(det(IntMatrix::from_rows(*B))) == 1 && E.contains((*B)[0]) && E.contains((*B)[1]))
            ++good;
    }
    ok = ok && good == 50;
    return verdict(ok, "E(T_a) = {0} for a = 1..5; " + std::to_string(good) + "/50 random quasi-smooth polygons get a basis");
}

Outcome database()
{
    const char* dir = std::getenv("EWALD_MONOTONE3_DIR");
    if (!dir || !*dir)
        return {Outcome::skipped, "set EWALD_MONOTONE3_DIR to a directory of the 18 monotone 3-polytopes"};
    auto stats = ingest_database(dir);
    auto it = stats.by_dim.find(3);
    if (it == stats.by_dim.end())
        return verdict(false, "no monotone 3-polytopes found in " + std::string(dir));
    const auto& st = it->second;
    std::map<int, int> expect{{13, 2}, {17, 9}, {19, 2}, {21, 4}, {27, 1}};
    bool ok = stats.errors.empty() && st.histogram == expect && st.counts == ClassCounts{18, 16, 16};
    std::string h;
    for (const auto& [e, n] : st.histogram)
        h += (h.empty() ? "" : ", ") + std::to_string(e) + ":" + std::to_string(n);
    return verdict(ok, "histogram {" + h + "}; counts " + std::to_string(st.counts.monotone) + "/" +
                           std::to_string(st.counts.ut_free) + "/" + std::to_string(st.counts.deeply_monotone));
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"simplex counts", simplex_counts},
        {"SSB value table", ssb_table},
        {"minimum-Ewald constructions", emin},
        {"dimension-2 catalog", polygons},
        {"Paffenholz example", paffenholz_example},
        {"cube extremality", cube_extremality},
        {"property suites", property_suites},
        {"probe cross-check", probe_crosscheck},
        {"Nill dimension 2", nill},
        {"dim-3 database (conditional)", database},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {Outcome::fail, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const char* tag = o.status == Outcome::pass ? "PASS" : o.status == Outcome::fail ? "FAIL" : "SKIPPED";
        if (o.status == Outcome::fail)
            ++failed;
        std::printf("criterion %zu %-7s %s (%.2fs): %s\n", i + 1, tag, criteria[i].first.c_str(), secs, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
