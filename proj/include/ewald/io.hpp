// Plain-text polytope files.
//
//   # comment
//   name <string>
//   dim n
//   facets m
//   a_1 ... a_n c        (m rows, meaning a . x <= c)
//
// A block may use `vertices k` followed by k rows of n integers instead of
// `facets m`. A file may hold several blocks; a `name` line names the block
// that follows it, or the current block when it has none yet.
#pragma once

#include "polytope.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace ewald {

class ParseError : public Error {
public:
    enum class Code {
        io,
        malformed_header,
        malformed_row,
        dimension_mismatch,
        non_integral,
        missing_rows,
        empty,
        unbounded,
        not_full_dimensional,
        no_polytope,
    };
    ParseError(Code c, int line, const std::string& msg)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), code_(c), line_(line)
    {
    }
    Code code() const { return code_; }
    int line() const { return line_; }

private:
    Code code_;
    int line_;
};

inline const char* code_name(ParseError::Code c)
{
    switch (c) {
    case ParseError::Code::io: return "io";
    case ParseError::Code::malformed_header: return "malformed_header";
    case ParseError::Code::malformed_row: return "malformed_row";
    case ParseError::Code::dimension_mismatch: return "dimension_mismatch";
    case ParseError::Code::non_integral: return "non_integral";
    case ParseError::Code::missing_rows: return "missing_rows";
    case ParseError::Code::empty: return "empty";
    case ParseError::Code::unbounded: return "unbounded";
    case ParseError::Code::not_full_dimensional: return "not_full_dimensional";
    case ParseError::Code::no_polytope: return "no_polytope";
    }
    return "unknown";
}

struct ParsedPolytope {
    std::string name;
    HPolytope polytope;
    std::vector<std::string> warnings;
    int line = 0;  // line of the `dim` header
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string t;
    while (in >> t)
        out.push_back(t);
    return out;
}

inline Int parse_integer(const std::string& tok, int line)
{
    std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i == tok.size())
        throw ParseError(ParseError::Code::malformed_row, line, "expected an integer, got '" + tok + "'");
    for (std::size_t k = i; k < tok.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(tok[k]))) {
            bool number_like = tok.find_first_not_of("+-0123456789/.eE") == std::string::npos;
            throw ParseError(number_like ? ParseError::Code::non_integral : ParseError::Code::malformed_row, line,
                             "expected an integer, got '" + tok + "'");
        }
    return Int(tok[0] == '+' ? tok.substr(1) : tok);
}

inline int parse_count(const std::vector<std::string>& t, const char* key, int line)
{
    if (t.size() != 2 || t[0] != key)
        throw ParseError(ParseError::Code::malformed_header, line, std::string("expected '") + key + " <count>'");
    Int v = parse_integer(t[1], line);
    if (v < 0 || v > 100000)
        throw ParseError(ParseError::Code::malformed_header, line, std::string("bad ") + key + " count");
    return v.convert_to<int>();
}

inline HPolytope build_checked(const IntMatrix& A, const RatVector& c, std::vector<std::string>& warnings, int line)
{
    try {
        return HPolytope::from_inequalities(A, c, &warnings);
    } catch (const GeometryError& e) {
        ParseError::Code code = ParseError::Code::malformed_row;
        switch (e.kind()) {
        case GeometryError::Kind::empty: code = ParseError::Code::empty; break;
        case GeometryError::Kind::unbounded: code = ParseError::Code::unbounded; break;
        case GeometryError::Kind::not_full_dimensional: code = ParseError::Code::not_full_dimensional; break;
        default: break;
        }
        throw ParseError(code, line, e.what());
    }
}

} // namespace detail

/// Parses every block of a file.
inline std::vector<ParsedPolytope> parse_polytopes(const std::string& text)
{
    std::vector<ParsedPolytope> out;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::string pending_name;

    struct Block {
        int dim = -1, rows = -1, line = 0;
        bool vertex_block = false;
        std::string name;
        std::vector<std::vector<Int>> data;
        std::vector<std::string> warnings;
    };
    std::optional<Block> cur;

    auto finish = [&]() {
        if (!cur)
            return;
        Block& b = *cur;
        if (b.rows < 0)
            throw ParseError(ParseError::Code::malformed_header, b.line, "block has no 'facets' or 'vertices' line");
        if (static_cast<int>(b.data.size()) != b.rows)
            throw ParseError(ParseError::Code::missing_rows, b.line,
                             "expected " + std::to_string(b.rows) + " rows, found " + std::to_string(b.data.size()));
        ParsedPolytope p;
        p.name = b.name;
        p.line = b.line;
        p.warnings = b.warnings;
        const std::size_t n = b.dim;
        if (b.vertex_block) {
            VPolytope V{n, {}};
            for (const auto& r : b.data)
                V.vertices.emplace_back(r.begin(), r.end());
            try {
                p.polytope = facet_description(V);
            } catch (const Error& e) {
                throw ParseError(ParseError::Code::not_full_dimensional, b.line, e.what());
            }
        } else {
            std::vector<IntVector> rows;
            RatVector offs;
            for (const auto& r : b.data) {
                rows.emplace_back(r.begin(), r.begin() + n);
                offs.emplace_back(r[n]);
            }
            p.polytope = detail::build_checked(IntMatrix::from_rows(rows, n), offs, p.warnings, b.line);
        }
        out.push_back(std::move(p));
        cur.reset();
    };

    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        auto t = detail::split_ws(line);
        if (t.empty())
            continue;
        if (t[0] == "name") {
            auto p = line.find("name");
            std::string nm = line.substr(p + 4);
            nm.erase(0, nm.find_first_not_of(" \t"));
            nm.erase(nm.find_last_not_of(" \t\r") + 1);
            if (cur && cur->name.empty() && static_cast<int>(cur->data.size()) != cur->rows)
                cur->name = nm;
            else
                pending_name = nm;
            continue;
        }
        if (t[0] == "dim") {
            finish();
            cur.emplace();
            cur->line = lineno;
            cur->dim = detail::parse_count(t, "dim", lineno);
            if (cur->dim < 1)
                throw ParseError(ParseError::Code::malformed_header, lineno, "dimension must be positive");
            cur->name = pending_name;
            pending_name.clear();
            continue;
        }
        if (!cur)
            throw ParseError(ParseError::Code::malformed_header, lineno, "expected 'dim <n>'");
        if (t[0] == "facets" || t[0] == "vertices") {
            if (cur->rows >= 0)
                throw ParseError(ParseError::Code::malformed_header, lineno, "duplicate row count");
            cur->vertex_block = t[0] == "vertices";
            cur->rows = detail::parse_count(t, t[0].c_str(), lineno);
            continue;
        }
        if (cur->rows < 0)
            throw ParseError(ParseError::Code::malformed_header, lineno, "expected 'facets <m>' or 'vertices <k>'");
        if (static_cast<int>(cur->data.size()) == cur->rows)
            throw ParseError(ParseError::Code::malformed_row, lineno, "more rows than announced");
        const std::size_t width = cur->dim + (cur->vertex_block ? 0 : 1);
        if (t.size() != width)
            throw ParseError(ParseError::Code::dimension_mismatch, lineno,
                             "expected " + std::to_string(width) + " entries, found " + std::to_string(t.size()));
        std::vector<Int> row;
        for (const auto& tok : t)
            row.push_back(detail::parse_integer(tok, lineno));
        if (!cur->vertex_block) {
            IntVector a(row.begin(), row.begin() + cur->dim);
            Int g = content(a);
            if (g > 1) {
                if (row.back() % g != 0)
                    throw ParseError(ParseError::Code::non_integral, lineno,
                                     "normal has content " + g.str() + " that does not divide the offset");
                for (auto& x : row)
                    x /= g;
                cur->warnings.push_back("line " + std::to_string(lineno) + ": row divided by " + g.str());
            }
        }
        cur->data.push_back(std::move(row));
    }
    finish();
    return out;
}

/// Parses text that must hold exactly one polytope.
inline ParsedPolytope parse_polytope(const std::string& text)
{
    auto all = parse_polytopes(text);
    if (all.size() != 1)
        throw ParseError(ParseError::Code::no_polytope, 0,
                         "expected one polytope, found " + std::to_string(all.size()));
    return std::move(all.front());
}

/// Reads a file, or the given stream for "-".
inline std::string read_text(const std::string& path, std::istream& stdin_stream = std::cin)
{
    std::ostringstream ss;
    if (path == "-") {
        ss << stdin_stream.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f)
        throw ParseError(ParseError::Code::io, 0, "cannot open " + path);
    ss << f.rdbuf();
    return ss.str();
}

/// Canonical text form; offsets must be integral.
inline std::string serialize(const HPolytope& P, const std::string& name = "")
{
    std::ostringstream os;
    if (!name.empty())
        os << "name " << name << "\n";
    os << "dim " << P.dim() << "\nfacets " << P.num_facets() << "\n";
    for (std::size_t j = 0; j < P.num_facets(); ++j) {
        if (!is_integer(P.offset(j)))
            throw Error("cannot serialize a rational offset");
        for (const auto& a : P.normal(j))
            os << a << " ";
        os << P.offset(j) << "\n";
    }
    return os.str();
}

} // namespace ewald
