// Branching tour: compact restriction with exact dimension bookkeeping, then
// the signed discrete analogue on the lattice.

#include <iostream>

#include "upq/upq.hpp"

int main() {
    using namespace upq;

    // Compact case: restrict the rank-3 highest weight (3,1,0) one rank down.
    const std::vector<long long> lambda{3, 1, 0};
    std::cout << "compact weight (3,1,0): dimension " << weyl_dimension(lambda) << "\n";
    unsigned long long total = 0;
    for (const auto& mu : weyl_branching(lambda)) {
        std::cout << "  branch (" << mu[0] << "," << mu[1] << ")  dimension "
                  << weyl_dimension(mu) << "\n";
        total += weyl_dimension(mu);
    }
    std::cout << "  branch dimensions sum to " << total << "\n\n";

    // Signed case: a rank-3 parameter of signature (2,1) branches to rank-2
    // parameters of signature (2,0) on the half-integer lattice.
    const auto big = HarishChandraParameter::from_values({1.0, 0.0, -1.0}, {+1, -1, +1});
    std::cout << "signed parameter " << hc_to_json(big).dump() << ", window [-3, 3]:\n";
    for (const auto& b : ggp_discrete_branching(big, ValueWindow(-3.0, 3.0)))
        std::cout << "  " << hc_to_json(b).dump() << "\n";

    // The holomorphic family stays holomorphic under branching.
    const auto holo = HarishChandraParameter::from_values({2.0, 1.0, -1.0}, {+1, +1, -1});
    std::cout << "\nholomorphic parameter " << hc_to_json(holo).dump() << ", window [-3, 3]:\n";
    for (const auto& b : ggp_discrete_branching(holo, ValueWindow(-3.0, 3.0)))
        std::cout << "  " << hc_to_json(b).dump()
                  << (is_holomorphic_pattern(b.spectrum) ? "  (holomorphic)" : "") << "\n";
    return 0;
}
