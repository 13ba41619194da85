// Per-polytope analysis reports and database ingestion.
#pragma once

#include "counting.hpp"
#include "io.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <thread>

namespace ewald {

using json = nlohmann::ordered_json;

struct AnalysisOptions {
    bool ewald = true;
    bool neat = true;
    int radius = 2;
    std::string radius_source = "default";
    // neatness is skipped when (2 radius + 1)^m exceeds this
    double neat_budget = 2e6;
    bool timing = false;
};

struct EwaldFlags {
    std::size_t size = 0;
    bool weak = false, strong = false;
    std::optional<bool> star;  // simple inputs only
    std::optional<bool> fs;  // monotone inputs only
    std::optional<std::vector<LatticePoint>> weak_basis;
    std::optional<int> strong_failing_facet;
    std::optional<FaceRef> star_failing_face;
    std::optional<RatVector> star_failing_point;  // when the face is a vertex
};

struct AnalysisReport {
    std::string name;
    std::size_t dim = 0, facets = 0, vertices = 0;
    ClassReport classes;
    std::optional<EwaldFlags> ewald;
    std::optional<std::string> ewald_skipped;
    std::optional<NeatVerdict> neat;
    std::optional<std::string> neat_skipped;
    AnalysisOptions options;
    std::vector<std::string> warnings;
    double seconds = 0;
};

namespace detail {

inline json int_json(const Int& x)
{
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return json(x.convert_to<long long>());
    return json(x.str());
}

inline json point_json(const IntVector& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(int_json(x));
    return a;
}

inline json point_json(const RatVector& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(boost::multiprecision::denominator(x) == 1 ? int_json(boost::multiprecision::numerator(x)) : json(x.str()));
    return a;
}

inline json face_json(const FaceRef& f)
{
    return json{{"facets", f.tight_facets}, {"codim", f.codim}};
}

} // namespace detail

inline AnalysisReport analyze(const HPolytope& P, const std::string& name, const AnalysisOptions& opt = {})
{
    auto t0 = std::chrono::steady_clock::now();
    AnalysisReport r;
    r.name = name;
    r.options = opt;
    r.dim = P.dim();
    r.facets = P.num_facets();
    r.vertices = P.num_vertices();
    r.classes = classify(P);
    if (opt.ewald) {
        if (!P.origin_in_interior()) {
            r.ewald_skipped = "origin is not in the interior";
        } else {
            EwaldSet E = ewald_set(P);
            EwaldFlags f;
            f.size = E.size();
            auto w = weak_ewald(P, E);
            f.weak = w.ok;
            f.weak_basis = w.basis;
            auto s = strong_ewald(P, E);
            f.strong = s.ok;
            f.strong_failing_facet = s.failing_facet;
            if (P.is_simple()) {
                auto st = star_ewald(P, E);
                f.star = st.ok;
                f.star_failing_face = st.failing_face;
                if (st.failing_face && st.failing_face->codim == static_cast<int>(P.dim()))
                    f.star_failing_point = face_points(P, *st.failing_face).front();
            }
            if (r.classes.monotone)
                f.fs = fs_property(P, E);
            r.ewald = f;
        }
    }
    if (opt.neat) {
        double work = std::pow(2.0 * opt.radius + 1, static_cast<double>(P.num_facets()));
        if (!r.classes.smooth || !r.classes.lattice)
            r.neat_skipped = "not a smooth lattice polytope";
        else if (work > opt.neat_budget)
            r.neat_skipped = "search space too large for radius " + std::to_string(opt.radius);
        else
            r.neat = is_neat(P, opt.radius);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline json to_json(const AnalysisReport& r)
{
    json j;
    j["name"] = r.name;
    j["dim"] = r.dim;
    j["facets"] = r.facets;
    j["vertices"] = r.vertices;
    const auto& c = r.classes;
    json cls{{"simple", c.simple}, {"lattice", c.lattice}, {"smooth", c.smooth}, {"reflexive", c.reflexive},
             {"monotone", c.monotone}};
    cls["ut_free"] = c.ut_free ? json(*c.ut_free) : json(nullptr);
    cls["deeply_smooth"] = c.deeply_smooth ? json(*c.deeply_smooth) : json(nullptr);
    cls["deeply_monotone"] = c.deeply_monotone ? json(*c.deeply_monotone) : json(nullptr);
    cls["witnesses"] = c.witnesses;
    j["classes"] = cls;
    if (r.ewald) {
        const auto& e = *r.ewald;
        json ej{{"size", e.size}, {"weak", e.weak}, {"strong", e.strong}};
        ej["star"] = e.star ? json(*e.star) : json(nullptr);
        ej["fs"] = e.fs ? json(*e.fs) : json(nullptr);
        if (e.weak_basis) {
            json b = json::array();
            for (const auto& v : *e.weak_basis)
                b.push_back(detail::point_json(v));
            ej["weak_basis"] = b;
        }
        if (e.strong_failing_facet)
            ej["strong_failing_facet"] = *e.strong_failing_facet;
        if (e.star_failing_face)
            ej["star_failing_face"] = detail::face_json(*e.star_failing_face);
        if (e.star_failing_point)
            ej["star_failing_vertex"] = detail::point_json(*e.star_failing_point);
        j["ewald"] = ej;
    } else if (r.ewald_skipped) {
        j["ewald"] = json{{"skipped", *r.ewald_skipped}};
    }
    if (r.neat) {
        const auto& v = *r.neat;
        json nj{{"status", v.neat_so_far() ? "neat_up_to_radius" : "counterexample"},
                {"radius", v.radius},
                {"displacements_checked", v.displacements_checked}};
        if (v.witness_b)
            nj["witness_b"] = detail::point_json(*v.witness_b);
        j["neat"] = nj;
    } else if (r.neat_skipped) {
        j["neat"] = json{{"skipped", *r.neat_skipped}, {"radius", r.options.radius}};
    }
    j["settings"] = json{{"radius", r.options.radius}, {"radius_source", r.options.radius_source}};
    j["warnings"] = r.warnings;
    if (r.options.timing)
        j["timing_seconds"] = r.seconds;
    return j;
}

inline std::string to_text(const AnalysisReport& r)
{
    std::ostringstream os;
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    const auto& c = r.classes;
    os << (r.name.empty() ? std::string("(unnamed)") : r.name) << ": dim " << r.dim << ", " << r.facets << " facets, "
       << r.vertices << " vertices\n";
    os << "  simple " << yn(c.simple) << ", lattice " << yn(c.lattice) << ", smooth " << yn(c.smooth) << ", reflexive "
       << yn(c.reflexive) << ", monotone " << yn(c.monotone) << "\n";
    if (c.ut_free)
        os << "  UT-free " << yn(*c.ut_free);
    if (c.deeply_smooth)
        os << ", deeply smooth " << yn(*c.deeply_smooth) << ", deeply monotone " << yn(*c.deeply_monotone);
    if (c.ut_free || c.deeply_smooth)
        os << "\n";
    for (const auto& [k, v] : c.witnesses)
        os << "  not " << k << ": " << v << "\n";
    if (r.ewald) {
        const auto& e = *r.ewald;
        os << "  |E| = " << e.size << "; weak " << yn(e.weak) << ", strong " << yn(e.strong) << ", star " << (e.star ? yn(*e.star) : "n/a");
        if (e.fs)
            os << ", FS " << yn(*e.fs);
        os << "\n";
        if (e.strong_failing_facet)
            os << "  strong fails at facet " << *e.strong_failing_facet << "\n";
        if (e.star_failing_face) {
            os << "  star fails at face " << to_string(*e.star_failing_face);
            if (e.star_failing_point)
                os << " = vertex " << to_string(*e.star_failing_point);
            os << "\n";
        }
    } else if (r.ewald_skipped) {
        os << "  Ewald checks skipped: " << *r.ewald_skipped << "\n";
    }
    if (r.neat) {
        if (r.neat->neat_so_far())
            os << "  neat up to radius " << r.neat->radius << " (" << r.neat->displacements_checked
               << " displacements)\n";
        else
            os << "  not neat: b = " << to_string(*r.neat->witness_b) << "\n";
    } else if (r.neat_skipped) {
        os << "  neatness skipped: " << *r.neat_skipped << "\n";
    }
    os << "  radius " << r.options.radius << " (" << r.options.radius_source << ")\n";
    for (const auto& w : r.warnings)
        os << "  warning: " << w << "\n";
    return os.str();
}

// Published statistics for comparison with ingested databases.
inline const std::map<int, std::map<int, int>>& published_ewald_histograms()
{
    static const std::map<int, std::map<int, int>> h = {
        {2, {{7, 4}, {9, 1}}},
        {3, {{13, 2}, {17, 9}, {19, 2}, {21, 4}, {27, 1}}},
        {4, {{27, 2}, {31, 4}, {33, 14}, {35, 3}, {37, 6}, {39, 7}, {41, 27}, {43, 11}, {45, 18}, {49, 10}, {51, 15},
             {57, 2}, {63, 4}, {81, 1}}},
        {5, {{59, 3},  {61, 2},  {63, 3},  {65, 1},   {67, 7},   {69, 4},   {71, 1},   {73, 15},  {75, 13},
             {77, 6},  {79, 65}, {81, 4},  {83, 22},  {85, 25},  {87, 41},  {89, 8},   {91, 30},  {93, 46},
             {95, 35}, {97, 18}, {99, 87}, {101, 19}, {103, 79}, {105, 3},  {107, 41}, {109, 53}, {111, 33},
             {113, 13}, {117, 18}, {119, 36}, {121, 36}, {123, 27}, {129, 11}, {133, 8}, {135, 18}, {141, 3},
             {147, 10}, {153, 15}, {171, 2}, {189, 4}, {243, 1}}},
    };
    return h;
}

struct ClassCounts {
    int monotone = 0, ut_free = 0, deeply_monotone = 0;
    bool operator==(const ClassCounts&) const = default;
};

inline const std::map<int, ClassCounts>& published_class_counts()
{
    static const std::map<int, ClassCounts> c = {
        {3, {18, 16, 16}}, {4, {124, 74, 72}}, {5, {866, 336, 300}}, {6, {7622, 1699, 1352}}};
    return c;
}

struct DatabaseEntry {
    std::string file;
    AnalysisReport report;
};

struct DimensionStats {
    ClassCounts counts;
    std::map<int, int> histogram;  // |E| over monotone entries
    std::optional<int> minimum;
};

struct DatabaseStats {
    std::vector<DatabaseEntry> entries;
    std::vector<std::string> excluded;  // non-monotone entries
    std::vector<std::string> errors;    // unreadable files
    std::map<int, DimensionStats> by_dim;
};

/// Loads every regular file of the directory (sorted by name), analyses each
/// block with a pool of workers and aggregates monotone statistics per dimension.
inline DatabaseStats ingest_database(const std::string& dir, unsigned threads = 0, AnalysisOptions opt = {})
{
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        throw ParseError(ParseError::Code::io, 0, dir + " is not a directory");
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file())
            files.push_back(e.path().string());
    std::sort(files.begin(), files.end());

    DatabaseStats out;
    struct Job {
        std::string file, name;
        HPolytope P;
    };
    std::vector<Job> jobs;
    for (const auto& f : files) {
        try {
            auto blocks = parse_polytopes(read_text(f));
            for (std::size_t i = 0; i < blocks.size(); ++i) {
                std::string nm = blocks[i].name.empty()
                                     ? fs::path(f).filename().string() + (blocks.size() > 1 ? "#" + std::to_string(i) : "")
                                     : blocks[i].name;
                jobs.push_back({f, nm, std::move(blocks[i].polytope)});
            }
        } catch (const Error& e) {
            out.errors.push_back(f + ": " + e.what());
        }
    }

    opt.neat = false;
    std::vector<std::optional<AnalysisReport>> results(jobs.size());
    std::vector<std::string> failures(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
            try {
                results[i] = analyze(jobs[i].P, jobs[i].name, opt);
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<std::size_t>(jobs.size(), 1));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!results[i]) {
            out.errors.push_back(jobs[i].name + ": " + failures[i]);
            continue;
        }
        const auto& r = *results[i];
        out.entries.push_back({jobs[i].file, r});
        if (!r.classes.monotone) {
            out.excluded.push_back(r.name);
            continue;
        }
        auto& d = out.by_dim[static_cast<int>(r.dim)];
        ++d.counts.monotone;
        if (r.classes.ut_free.value_or(false))
            ++d.counts.ut_free;
        if (r.classes.deeply_monotone.value_or(false))
            ++d.counts.deeply_monotone;
        if (r.ewald) {
            int e = static_cast<int>(r.ewald->size);
            ++d.histogram[e];
            d.minimum = d.minimum ? std::min(*d.minimum, e) : e;
        }
    }
    return out;
}

/// Comparison of the ingested statistics with the published tables.
struct TableComparison {
    int dim = 0;
    std::optional<bool> histogram_matches;  // absent when nothing is published
    std::optional<bool> counts_match;
};

inline std::vector<TableComparison> compare_with_published(const DatabaseStats& s)
{
    std::vector<TableComparison> out;
    for (const auto& [d, st] : s.by_dim) {
        TableComparison c;
        c.dim = d;
        if (auto it = published_ewald_histograms().find(d); it != published_ewald_histograms().end())
            c.histogram_matches = it->second == st.histogram;
        if (auto it = published_class_counts().find(d); it != published_class_counts().end())
            c.counts_match = it->second == st.counts;
        out.push_back(c);
    }
    return out;
}

inline json to_json(const DatabaseStats& s)
{
    json j;
    json dims = json::object();
    auto cmp = compare_with_published(s);
    for (const auto& [d, st] : s.by_dim) {
        json h = json::object();
        for (const auto& [e, n] : st.histogram)
            h[std::to_string(e)] = n;
        json dj{{"monotone", st.counts.monotone},
                {"ut_free", st.counts.ut_free},
                {"deeply_monotone", st.counts.deeply_monotone},
                {"ewald_histogram", h}};
        dj["minimum"] = st.minimum ? json(*st.minimum) : json(nullptr);
        for (const auto& c : cmp)
            if (c.dim == d) {
                dj["histogram_matches_published"] = c.histogram_matches ? json(*c.histogram_matches) : json(nullptr);
                dj["counts_match_published"] = c.counts_match ? json(*c.counts_match) : json(nullptr);
            }
        dims[std::to_string(d)] = dj;
    }
    j["dimensions"] = dims;
    j["entries"] = s.entries.size();
    j["excluded_non_monotone"] = s.excluded;
    j["errors"] = s.errors;
    return j;
}

} // namespace ewald
