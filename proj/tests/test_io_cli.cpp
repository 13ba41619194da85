#include <ewald/cli.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace ewald;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args, const std::string& input = "")
{
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = cli_main(args, in, out, err);
    return {code, out.str(), err.str()};
}

ParseError::Code parse_code(const std::string& text)
{
    try {
        parse_polytope(text);
    } catch (const ParseError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no parse error for:\n" << text;
    return ParseError::Code::io;
}

} // namespace

TEST(Io, ParsesSquare)
{
    auto p = parse_polytope("dim 2\nfacets 4\n1 0 1\n-1 0 1\n0 1 1\n0 -1 1\n");
    EXPECT_TRUE(p.polytope.same_facets(cube(2)));
    EXPECT_TRUE(p.warnings.empty());
}

TEST(Io, DividesRowsByContentWithWarning)
{
    auto p = parse_polytope("# comment\nname halved\ndim 2\nfacets 4\n2 0 2\n-1 0 1\n0 1 1\n0 -1 1\n");
    EXPECT_EQ(p.name, "halved");
    EXPECT_TRUE(p.polytope.same_facets(cube(2)));
    ASSERT_EQ(p.warnings.size(), 1u);
    EXPECT_EQ(p.warnings[0], "line 5: row divided by 2");
}

TEST(Io, SerializeRoundTrip)
{
    for (const auto& [name, P] : builtin_catalog()) {
        std::string text = serialize(P, name);
        auto q = parse_polytope(text);
        EXPECT_EQ(q.name, name);
        EXPECT_TRUE(q.polytope.same_facets(P)) << name;
        EXPECT_EQ(serialize(q.polytope, q.name), text);
    }
    EXPECT_TRUE(parse_polytope(serialize(ssb(3, 2))).polytope.same_facets(ssb(3, 2)));
}

TEST(Io, VertexBlocksAndMultipleBlocks)
{
    auto p = parse_polytope("dim 2\nvertices 4\n-1 -1\n-1 1\n1 -1\n1 1\n");
    EXPECT_TRUE(p.polytope.same_facets(cube(2)));
    auto all = parse_polytopes("name a\ndim 1\nfacets 2\n1 1\n-1 1\ndim 1\nname b\nfacets 2\n1 2\n-1 1\n");
    ASSERT_EQ(all.size(), 2u);
    EXPECT_EQ(all[0].name, "a");
    EXPECT_EQ(all[1].name, "b");
}

TEST(Io, ErrorCodes)
{
    EXPECT_EQ(parse_code("dim 2\nfacets 2\n1 0 1\n"), ParseError::Code::missing_rows);
    EXPECT_EQ(parse_code("dim 2\nfacets 1\n1 0\n"), ParseError::Code::dimension_mismatch);
    EXPECT_EQ(parse_code("dim 2\nfacets 1\n1 x 1\n"), ParseError::Code::malformed_row);
    EXPECT_EQ(parse_code("dim 2\nfacets 1\n1 0.5 1\n"), ParseError::Code::non_integral);
    EXPECT_EQ(parse_code("dim 2\nfacets 1\n2 0 1\n"), ParseError::Code::non_integral);
    EXPECT_EQ(parse_code("facets 2\n"), ParseError::Code::malformed_header);
    EXPECT_EQ(parse_code("dim two\n"), ParseError::Code::malformed_row);
    EXPECT_EQ(parse_code("dim 2\nfacets 3\n1 0 1\n-1 0 1\n0 1 1\n"), ParseError::Code::unbounded);
    EXPECT_EQ(parse_code("dim 1\nfacets 2\n1 -1\n-1 -1\n"), ParseError::Code::empty);
    EXPECT_EQ(parse_code("dim 1\nfacets 2\n1 0\n-1 0\n"), ParseError::Code::not_full_dimensional);
    EXPECT_EQ(parse_code(""), ParseError::Code::no_polytope);
    EXPECT_EQ(parse_code("dim 2\nvertices 2\n0 0\n1 1\n"), ParseError::Code::not_full_dimensional);
    EXPECT_THROW(read_text("/nonexistent/file"), ParseError);
}

TEST(Cli, CountCommands)
{
    EXPECT_EQ(run({"count", "simplex", "9"}).out, "8953\n");
    EXPECT_EQ(run({"count", "emin", "7"}).out, "243\n");
    EXPECT_EQ(run({"count", "ssb", "8", "4"}).out, "1639\n");
    EXPECT_EQ(run({"count", "emin", "2"}).code, kExitInput);
    EXPECT_EQ(run({"count", "simplex"}).code, kExitInput);
    auto t = run({"count", "tables", "--json"});
    EXPECT_EQ(t.code, kExitOk);
    auto j = json::parse(t.out);
    EXPECT_EQ(j["simplex"][8]["count"], "8953");
}

TEST(Cli, GenPipesIntoCheck)
{
    auto g = run({"gen", "paffenholz"});
    ASSERT_EQ(g.code, kExitOk);
    auto c = run({"check", "-", "--json", "--no-neat"}, g.out);
    EXPECT_EQ(c.code, kExitProperty);
    auto j = json::parse(c.out);
    EXPECT_EQ(j["ewald"]["strong"], true);
    EXPECT_EQ(j["ewald"]["star"], false);
    EXPECT_EQ(j["ewald"]["star_failing_face"]["facets"], json({1, 2, 4, 5, 8, 9}));
    EXPECT_EQ(j["ewald"]["star_failing_vertex"], json({14, -1, -1, 6, -1, -1}));
    EXPECT_EQ(j["classes"]["monotone"], true);
}

TEST(Cli, CheckSucceedsOnSimplex)
{
    auto c = run({"check", "-"}, run({"gen", "simplex", "3"}).out);
    EXPECT_EQ(c.code, kExitOk);
    EXPECT_NE(c.out.find("|E| = 19"), std::string::npos);
    EXPECT_NE(c.out.find("neat up to radius 2"), std::string::npos);
}

TEST(Cli, RadiusFromEnvironmentIsReported)
{
    ::setenv("EWALD_RADIUS", "1", 1);
    auto c = run({"check", "-", "--json"}, run({"gen", "square"}).out);
    ::unsetenv("EWALD_RADIUS");
    auto j = json::parse(c.out);
    EXPECT_EQ(j["settings"]["radius"], 1);
    EXPECT_EQ(j["settings"]["radius_source"], "env EWALD_RADIUS");
    auto f = run({"neat", "-", "--radius", "1", "--json"}, run({"gen", "square"}).out);
    EXPECT_EQ(json::parse(f.out)["radius_source"], "flag");
}

TEST(Cli, InputErrorsExitTwo)
{
    EXPECT_EQ(run({"frobnicate"}).code, kExitInput);
    EXPECT_EQ(run({}).code, kExitInput);
    EXPECT_EQ(run({"check", "/nonexistent"}).code, kExitInput);
    auto bad = run({"check", "-"}, "dim 2\nfacets 2\n1 0 1\n");
    EXPECT_EQ(bad.code, kExitInput);
    EXPECT_NE(bad.err.find("missing_rows"), std::string::npos);
    EXPECT_EQ(run({"gen", "ssb", "3", "5"}).code, kExitInput);
    EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, DimensionCap)
{
    std::string big = run({"gen", "cube", "13"}).out;
    EXPECT_EQ(run({"ewald", "-"}, big).code, kExitInput);
}

TEST(Cli, EwaldDisplaceProbeOda)
{
    std::string hex = run({"gen", "hexagon"}).out;
    auto e = run({"ewald", "-"}, hex);
    EXPECT_EQ(e.code, kExitOk);
    EXPECT_NE(e.out.find("|E| = 7"), std::string::npos);
    auto d = run({"displace", "-", "--facets", "0"}, hex);
    EXPECT_EQ(d.code, kExitOk);
    EXPECT_NE(d.out.find("dim 1"), std::string::npos);
    std::string tri = run({"gen", "kdelta", "2", "1"}).out;
    EXPECT_EQ(run({"displace", "-", "--facets", "0,1"}, tri).code, kExitProperty);
    EXPECT_EQ(run({"displace", "-", "--facets", "0,1"}, hex).code, kExitInput);
    auto p = run({"probe", "-", "--point", "1/2,0"}, hex);
    EXPECT_EQ(p.code, kExitOk);
    EXPECT_NE(p.out.find("displaceable"), std::string::npos);
    EXPECT_EQ(run({"probe", "-", "--point", "0,0"}, hex).code, kExitProperty);
    EXPECT_EQ(run({"probe", "-", "--samples", "4", "--bound", "3"}, hex).code, kExitOk);

    auto dir = std::filesystem::temp_directory_path() / "ewald_cli_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "hex.txt") << hex;
    std::ofstream(dir / "tri.txt") << run({"gen", "triangle"}).out;
    auto o = run({"oda", (dir / "hex.txt").string(), (dir / "tri.txt").string()});
    EXPECT_EQ(o.code, kExitOk);
    std::filesystem::remove_all(dir);
}

TEST(Cli, BatchOnPolygonDatabase)
{
    auto b = run({"batch", EWALD_DATA_DIR "/polygons", "--json"});
    EXPECT_EQ(b.code, kExitOk);
    auto j = json::parse(b.out);
    EXPECT_EQ(j["dimensions"]["2"]["ewald_histogram"], json({{"7", 4}, {"9", 1}}));
}
