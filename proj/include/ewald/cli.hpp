// Command-line front end. Exit codes: 0 success, 1 a checked property fails,
// 2 input or usage error.
#pragma once

#include "probes.hpp"
#include "report.hpp"

#include <CLI11.hpp>

#include <cstdlib>

namespace ewald {

inline constexpr int kExitOk = 0;
inline constexpr int kExitProperty = 1;
inline constexpr int kExitInput = 2;
inline constexpr std::size_t kDimensionCap = 12;

namespace detail {

struct EnvDefault {
    int value;
    std::string source;
};

inline EnvDefault env_int(const char* var, int fallback)
{
    if (const char* s = std::getenv(var)) {
        try {
            std::size_t pos = 0;
            int v = std::stoi(s, &pos);
            if (pos == std::string(s).size())
                return {v, std::string("env ") + var};
        } catch (const std::exception&) {
        }
        throw ParseError(ParseError::Code::malformed_header, 0, std::string("bad value for ") + var + ": " + s);
    }
    return {fallback, "default"};
}

inline RatVector parse_point(const std::string& s)
{
    RatVector out;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, ',')) {
        tok.erase(0, tok.find_first_not_of(" \t"));
        tok.erase(tok.find_last_not_of(" \t") + 1);
        auto slash = tok.find('/');
        try {
            if (slash == std::string::npos) {
                out.emplace_back(detail::parse_integer(tok, 0));
            } else {
                Int num = detail::parse_integer(tok.substr(0, slash), 0);
                Int den = detail::parse_integer(tok.substr(slash + 1), 0);
                if (den == 0)
                    throw ParseError(ParseError::Code::malformed_row, 0, "zero denominator in point");
                out.emplace_back(Rational(num) / Rational(den));
            }
        } catch (const ParseError&) {
            throw ParseError(ParseError::Code::malformed_row, 0, "bad point coordinate '" + tok + "'");
        }
    }
    return out;
}

inline std::vector<int> parse_index_list(const std::string& s)
{
    std::vector<int> out;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, ',')) {
        Int v = detail::parse_integer(tok, 0);
        if (v < 0 || v > 100000)
            throw ParseError(ParseError::Code::malformed_row, 0, "bad facet index " + tok);
        out.push_back(v.convert_to<int>());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct Loaded {
    std::string name;
    HPolytope P;
    std::vector<std::string> warnings;
};

inline Loaded load_one(const std::string& path, std::istream& in, bool allow_large)
{
    auto p = parse_polytope(read_text(path, in));
    if (p.polytope.dim() > kDimensionCap && !allow_large)
        throw ParseError(ParseError::Code::malformed_header, p.line,
                         "dimension " + std::to_string(p.polytope.dim()) + " exceeds the cap of " +
                             std::to_string(kDimensionCap) + " (use --allow-large)");
    return {p.name.empty() ? (path == "-" ? std::string("stdin") : path) : p.name, std::move(p.polytope),
            std::move(p.warnings)};
}

inline void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> w;
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (w.size() <= i)
                w.push_back(0);
            w[i] = std::max(w[i], r[i].size());
        }
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            out << (i ? "  " : "") << std::string(w[i] - r[i].size(), ' ') << r[i];
        out << "\n";
    }
}

} // namespace detail

/// Runs the tool with the given arguments (without the program name).
inline int cli_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact Ewald-set analysis of lattice polytopes", "ewaldtool"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json_out = false, allow_large = false;
    app.add_flag("--json", json_out, "machine-readable output");
    app.add_flag("--allow-large", allow_large, "accept dimension above 12 (lattice scans grow like 3^n)");

    std::string file, file2, family, facets_arg, point_arg, dir;
    std::vector<int> gen_args;
    std::optional<int> radius_flag, bound_flag;
    int samples = 0;
    bool no_neat = false, timing = false;
    unsigned threads = 0;
    std::vector<int> count_args;
    std::string count_what;

    auto* check = app.add_subcommand("check", "classification, Ewald conditions and neatness");
    check->add_option("file", file, "polytope file or - for stdin")->required();
    check->add_option("--radius", radius_flag, "neatness search radius (default 2 or EWALD_RADIUS)");
    check->add_flag("--no-neat", no_neat, "skip the neatness search");
    check->add_flag("--timing", timing, "include wall time in the report");

    auto* ewald_cmd = app.add_subcommand("ewald", "list the Ewald set");
    ewald_cmd->add_option("file", file)->required();

    auto* gen = app.add_subcommand("gen", "emit a catalog polytope (gen list shows families)");
    gen->add_option("family", family)->required();
    gen->add_option("args", gen_args);

    auto* disp = app.add_subcommand("displace", "first displacement of a face");
    disp->add_option("file", file)->required();
    disp->add_option("--facets", facets_arg, "comma-separated 0-based facet indices")->required();

    auto* neat = app.add_subcommand("neat", "bounded neatness search");
    neat->add_option("file", file)->required();
    neat->add_option("--radius", radius_flag);

    auto* probe = app.add_subcommand("probe", "probe displaceability");
    probe->add_option("file", file)->required();
    probe->add_option("--point", point_arg, "interior point, e.g. 1/2,0");
    probe->add_option("--bound", bound_flag, "direction max-norm bound (default 3 or EWALD_PROBE_BOUND)");
    probe->add_option("--samples", samples, "sample denominator for the star cross-check");

    auto* count = app.add_subcommand("count", "closed-form counts: simplex n | ssb n k | emin n | tables");
    count->add_option("what", count_what)->required()->check(CLI::IsMember({"simplex", "ssb", "emin", "tables"}));
    count->add_option("args", count_args);

    auto* batch = app.add_subcommand("batch", "ingest a directory of polytope files");
    batch->add_option("dir", dir)->required();
    batch->add_option("--threads", threads);

    auto* oda = app.add_subcommand("oda", "lattice points of P+Q versus sums of lattice points");
    oda->add_option("file1", file)->required();
    oda->add_option("file2", file2)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInput;
    }

    try {
        auto radius = radius_flag ? detail::EnvDefault{*radius_flag, "flag"} : detail::env_int("EWALD_RADIUS", 2);
        auto bound = bound_flag ? detail::EnvDefault{*bound_flag, "flag"} : detail::env_int("EWALD_PROBE_BOUND", 3);
        if (radius.value < 0)
            throw ParseError(ParseError::Code::malformed_header, 0, "radius must be nonnegative");

        if (*check) {
            auto L = detail::load_one(file, in, allow_large);
            AnalysisOptions opt;
            opt.neat = !no_neat;
            opt.radius = radius.value;
            opt.radius_source = radius.source;
            opt.timing = timing;
            auto r = analyze(L.P, L.name, opt);
            r.warnings = L.warnings;
            if (json_out)
                out << to_json(r).dump(2) << "\n";
            else
                out << to_text(r);
            bool fail = (r.ewald && (!r.ewald->weak || !r.ewald->strong || !r.ewald->star.value_or(true))) ||
                        (r.neat && !r.neat->neat_so_far());
            return fail ? kExitProperty : kExitOk;
        }

        if (*ewald_cmd) {
            auto L = detail::load_one(file, in, allow_large);
            EwaldSet E = ewald_set(L.P);
            if (json_out) {
                json pts = json::array();
                for (const auto& p : E.points())
                    pts.push_back(detail::point_json(p));
                out << json{{"name", L.name}, {"size", E.size()}, {"points", pts}}.dump(2) << "\n";
            } else {
                out << "# |E| = " << E.size() << "\n";
                for (const auto& p : E.points())
                    out << to_string(p) << "\n";
            }
            return kExitOk;
        }

        if (*gen) {
            if (family == "list") {
                for (const auto& f : family_list())
                    out << f.name << (f.params.empty() ? "" : " " + f.params) << "  -- " << f.description << "\n";
                return kExitOk;
            }
            HPolytope P;
            try {
                P = generate(family, gen_args);
            } catch (const Error& e) {
                err << "error: " << e.what() << "\n";
                return kExitInput;
            }
            std::string name = family;
            for (int a : gen_args)
                name += " " + std::to_string(a);
            out << serialize(P, name);
            return kExitOk;
        }

        if (*disp) {
            auto L = detail::load_one(file, in, allow_large);
            auto idx = detail::parse_index_list(facets_arg);
            for (int j : idx)
                if (static_cast<std::size_t>(j) >= L.P.num_facets())
                    throw ParseError(ParseError::Code::malformed_row, 0, "facet index out of range");
            FaceRef f{idx, static_cast<int>(idx.size())};
            if (!is_face(L.P, f)) {
                err << "error: facets " << to_string(f) << " do not define a face\n";
                return kExitInput;
            }
            auto d = try_first_displacement(L.P, f);
            if (d.status == FirstDisplacement::Status::vanishes) {
                out << "first displacement of " << to_string(f) << " vanishes\n";
                return kExitProperty;
            }
            const auto& ch = d.slice->chart;
            out << "# first displacement of face " << to_string(f)
                << (d.status == FirstDisplacement::Status::degenerate ? " (lower-dimensional)" : "") << "\n";
            out << "# chart origin " << to_string(ch.origin) << "\n";
            for (const auto& b : ch.basis)
                out << "# chart basis " << to_string(b) << "\n";
            const auto& Q = d.slice->polytope;
            bool integral = std::all_of(Q.offsets().begin(), Q.offsets().end(), [](const Rational& x) { return is_integer(x); });
            if (integral) {
                out << serialize(Q);
            } else {
                out << "dim " << Q.dim() << "\n# rational offsets\n";
                for (std::size_t j = 0; j < Q.num_facets(); ++j)
                    out << "# " << to_string(Q.normal(j)) << " <= " << Q.offset(j) << "\n";
            }
            return kExitOk;
        }

        if (*neat) {
            auto L = detail::load_one(file, in, allow_large);
            auto v = is_neat(L.P, radius.value);
            if (json_out) {
                json j{{"name", L.name},
                       {"status", v.neat_so_far() ? "neat_up_to_radius" : "counterexample"},
                       {"radius", v.radius},
                       {"radius_source", radius.source},
                       {"displacements_checked", v.displacements_checked}};
                if (v.witness_b)
                    j["witness_b"] = detail::point_json(*v.witness_b);
                out << j.dump(2) << "\n";
            } else if (v.neat_so_far()) {
                out << "neat up to radius " << v.radius << " (" << radius.source << "), " << v.displacements_checked
                    << " displacements checked\n";
            } else {
                out << "counterexample at radius " << v.radius << ": b = " << to_string(*v.witness_b) << "\n";
            }
            return v.neat_so_far() ? kExitOk : kExitProperty;
        }

        if (*probe) {
            auto L = detail::load_one(file, in, allow_large);
            if (point_arg.empty() && samples <= 0)
                throw ParseError(ParseError::Code::malformed_header, 0, "probe needs --point or --samples");
            int status = kExitOk;
            json j{{"name", L.name}, {"bound", bound.value}, {"bound_source", bound.source}};
            if (!point_arg.empty()) {
                RatVector u = detail::parse_point(point_arg);
                if (u.size() != L.P.dim())
                    throw ParseError(ParseError::Code::dimension_mismatch, 0, "point has the wrong dimension");
                if (!L.P.contains_in_interior(u))
                    throw ParseError(ParseError::Code::malformed_row, 0, "point is not in the interior");
                auto p = displaceable_by_probe(L.P, u, bound.value);
                if (p) {
                    j["probe"] = json{{"facet", p->facet},
                                      {"direction", detail::point_json(p->direction)},
                                      {"initial_point", detail::point_json(p->initial_point)}};
                    if (!json_out)
                        out << "displaceable: facet " << p->facet << ", direction " << to_string(p->direction)
                            << ", initial point " << to_string(p->initial_point) << "\n";
                } else {
                    j["probe"] = nullptr;
                    if (!json_out)
                        out << "not found (bound " << bound.value << ")\n";
                    status = kExitProperty;
                }
            }
            if (samples > 0) {
                auto c = star_probe_crosscheck(L.P, samples, bound.value);
                json nf = json::array();
                for (const auto& u : c.not_found)
                    nf.push_back(detail::point_json(u));
                j["crosscheck"] = json{{"star", c.star},
                                       {"denominator", c.denominator},
                                       {"sampled", c.sampled},
                                       {"displaceable", c.displaceable},
                                       {"not_found", nf},
                                       {"consistent", c.consistent()}};
                if (!json_out) {
                    out << "star Ewald " << (c.star ? "yes" : "no") << "; " << c.displaceable << " of " << c.sampled
                        << " samples displaceable (denominator " << c.denominator << ", bound " << c.bound << ")\n";
                    for (const auto& u : c.not_found)
                        out << "  not found (bound " << c.bound << "): " << to_string(u) << "\n";
                }
                if (!c.consistent())
                    status = kExitProperty;
            }
            if (json_out)
                out << j.dump(2) << "\n";
            return status;
        }

        if (*count) {
            auto need = [&](std::size_t k) {
                if (count_args.size() != k)
                    throw ParseError(ParseError::Code::malformed_header, 0,
                                     "count " + count_what + " takes " + std::to_string(k) + " argument(s)");
            };
            auto emit = [&](const std::string& key, const Int& v) {
                if (json_out)
                    out << json{{key, v.str()}}.dump() << "\n";
                else
                    out << v << "\n";
            };
            try {
                if (count_what == "simplex") {
                    need(1);
                    emit("simplex", ewald_count_simplex(count_args[0]));
                } else if (count_what == "ssb") {
                    need(2);
                    emit("ssb", ewald_count_ssb(count_args[0], count_args[1]));
                } else if (count_what == "emin") {
                    need(1);
                    emit("emin", emin_upper_bound(count_args[0]));
                } else {
                    need(0);
                    json j;
                    std::vector<std::vector<std::string>> rows{{"n", "|E(simplex)|", "E_0", "E_+"}};
                    for (int n = 1; n <= 9; ++n) {
                        auto s = simplex_split(n);
                        rows.push_back({std::to_string(n), ewald_count_simplex(n).str(), s.e_zero.str(), s.e_plus.str()});
                        j["simplex"].push_back(json{{"n", n}, {"count", ewald_count_simplex(n).str()},
                                                    {"e_zero", s.e_zero.str()}, {"e_plus", s.e_plus.str()}});
                    }
                    std::vector<std::vector<std::string>> ssb_rows{{"n\\k"}};
                    for (int k = 0; k <= 8; ++k)
                        ssb_rows[0].push_back(std::to_string(k));
                    for (int n = 2; n <= 9; ++n) {
                        std::vector<std::string> r{std::to_string(n)};
                        json jr = json::array();
                        for (int k = 0; k < n; ++k) {
                            r.push_back(ewald_count_ssb(n, k).str());
                            jr.push_back(ewald_count_ssb(n, k).str());
                        }
                        ssb_rows.push_back(r);
                        j["ssb"].push_back(json{{"n", n}, {"counts", jr}});
                    }
                    std::vector<std::vector<std::string>> emin_rows{{"n", "bound"}};
                    for (int n = 3; n <= 32; ++n) {
                        emin_rows.push_back({std::to_string(n), emin_upper_bound(n).str()});
                        j["emin"].push_back(json{{"n", n}, {"bound", emin_upper_bound(n).str()}});
                    }
                    if (json_out) {
                        out << j.dump(2) << "\n";
                    } else {
                        detail::print_table(out, rows);
                        out << "\n";
                        detail::print_table(out, ssb_rows);
                        out << "\n";
                        detail::print_table(out, emin_rows);
                    }
                }
            } catch (const ParseError&) {
                throw;
            } catch (const Error& e) {
                err << "error: " << e.what() << "\n";
                return kExitInput;
            }
            return kExitOk;
        }

        if (*batch) {
            auto stats = ingest_database(dir, threads);
            auto cmp = compare_with_published(stats);
            bool mismatch = std::any_of(cmp.begin(), cmp.end(), [](const TableComparison& c) {
                return c.histogram_matches == false || c.counts_match == false;
            });
            if (json_out) {
                out << to_json(stats).dump(2) << "\n";
            } else {
                out << stats.entries.size() << " polytopes, " << stats.excluded.size() << " not monotone, "
                    << stats.errors.size() << " errors\n";
                for (const auto& [d, st] : stats.by_dim) {
                    out << "dim " << d << ": " << st.counts.monotone << " monotone, " << st.counts.ut_free
                        << " UT-free, " << st.counts.deeply_monotone << " deeply monotone";
                    if (st.minimum)
                        out << ", min |E| " << *st.minimum;
                    out << "\n  |E| histogram:";
                    for (const auto& [e, n] : st.histogram)
                        out << " " << e << ":" << n;
                    out << "\n";
                    for (const auto& c : cmp)
                        if (c.dim == d) {
                            if (c.histogram_matches)
                                out << "  histogram " << (*c.histogram_matches ? "matches" : "differs from")
                                    << " the published table\n";
                            if (c.counts_match)
                                out << "  class counts " << (*c.counts_match ? "match" : "differ from")
                                    << " the published table\n";
                        }
                }
                for (const auto& e : stats.errors)
                    out << "error: " << e << "\n";
            }
            if (!stats.errors.empty())
                return kExitInput;
            return mismatch ? kExitProperty : kExitOk;
        }

        if (*oda) {
            auto A = detail::load_one(file, in, allow_large);
            auto B = detail::load_one(file2, in, allow_large);
            bool ok = oda_instance_check(A.P, B.P);
            if (json_out)
                out << json{{"p", A.name}, {"q", B.name}, {"holds", ok}}.dump(2) << "\n";
            else
                out << (ok ? "holds" : "fails") << ": (P+Q) cap Z^n " << (ok ? "=" : "!=") << " (P cap Z^n) + (Q cap Z^n)\n";
            return ok ? kExitOk : kExitProperty;
        }
    } catch (const ParseError& e) {
        err << "input error [" << code_name(e.code()) << "]: " << e.what() << "\n";
        return kExitInput;
    } catch (const GeometryError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    err << app.help();
    return kExitInput;
}

inline int cli_main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return cli_main(args, std::cin, std::cout, std::cerr);
}

} // namespace ewald
