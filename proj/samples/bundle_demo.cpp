// Builds simplex-segment bundles and iterated small fiber bundles and compares
// enumerated Ewald counts with the closed forms.
#include <ewald/counting.hpp>

#include <iostream>

using namespace ewald;

int main()
{
    for (int n = 2; n <= 5; ++n)
        for (int k = 0; k < n; ++k) {
            HPolytope S = build_bundle(ssb_bundle_spec(n, k));
            std::cout << "SSB(" << n << "," << k << "): enumerated " << ewald_set(S).size() << ", formula "
                      << ewald_count_ssb(n, k) << "\n";
        }

    for (int n = 3; n <= 7; ++n) {
        HPolytope P = emin_construction(n);
        std::cout << "dim " << n << " fibers";
        for (int f : emin_fiber_sequence(n))
            std::cout << " " << f;
        std::cout << ": |E| = " << ewald_set(P).size() << " (bound " << emin_upper_bound(n) << ")\n";
    }

    HPolytope B = small_fiber_bundle(segment(), 0, 3);
    auto r = small_bundle_split_recursion_check(B, static_cast<int>(B.num_facets()) - 1, 2);
    std::cout << "split recursion at F': predicted " << r.predicted.e_plus << "/" << r.predicted.e_zero << ", measured "
              << r.measured.e_plus << "/" << r.measured.e_zero << "\n";
}
