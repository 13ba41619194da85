// Ewald data of a few builtin polytopes, then the full report of a file if one is given.
#include <ewald/report.hpp>

#include <iostream>

using namespace ewald;

int main(int argc, char** argv)
{
    for (const auto& [name, P] : monotone_polygons()) {
        EwaldSet E = ewald_set(P);
        std::cout << name << ": |E| = " << E.size() << ", strong " << strong_ewald(P, E).ok << ", star "
                  << star_ewald(P, E).ok << "\n";
    }

    HPolytope P6 = paffenholz();
    auto st = star_ewald(P6);
    std::cout << "paffenholz: star fails at " << to_string(*st.failing_face) << " = "
              << to_string(face_points(P6, *st.failing_face).front()) << "\n";

    if (argc > 1) {
        auto parsed = parse_polytope(read_text(argv[1]));
        std::cout << to_text(analyze(parsed.polytope, parsed.name));
    }
}
