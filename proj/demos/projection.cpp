// Projection tour: random conjugation experiments against the interlacing
// check, then an inverse search for a prescribed projection.

#include <iostream>

#include "upq/upq.hpp"

int main() {
    using namespace upq;

    // Conjugate the diagonal model of (2,1)/(+,-) by 500 random group
    // elements, delete the corner, test each projected spectrum.
    const SignedSpectrum big({2.0, 1.0}, {+1, -1});
    const ProjectionReport r = sample_projection_experiment(big, 500, 0.5, /*seed=*/7);
    std::cout << "big (2,1)/(+,-), 500 trials at scale 0.5:\n"
              << "  elliptic " << r.elliptic << ", non-elliptic " << r.non_elliptic
              << ", near-degenerate " << r.near_degenerate << "\n"
              << "  interlacing pass " << r.interlacing_pass << ", fail " << r.interlacing_fail
              << "\n\n";

    // Hermitian control: classical interlacing under corner deletion.
    const ProjectionReport c = cauchy_matrix_experiment({3.0, 1.0, 0.0}, 500, /*seed=*/7);
    std::cout << "Hermitian (3,1,0), 500 rotations:\n"
              << "  interlacing pass " << c.interlacing_pass << ", fail " << c.interlacing_fail
              << "\n\n";

    // Inverse problem: realize the projected spectrum (3)/(+) from (2,1)/(+,-).
    SearchConfig cfg;
    cfg.seed = 7;
    const SignedSpectrum target({3.0}, {+1});
    const SearchResult s = find_preimage(big, target, cfg);
    std::cout << "search for projection (3)/(+): " << to_string(s.status) << ", objective "
              << s.objective << " after " << s.evaluations << " evaluations\n";
    if (s.status == SearchStatus::found) {
        const SearchWitness w = replay_witness(big, s);
        std::cout << "  recovered spectrum " << spectrum_to_json(w.spectrum).dump()
                  << ", interlaces: " << (check_ggp(big, w.spectrum) ? "yes" : "no") << "\n";
    }

    // An unreachable target (value between the big values must carry a minus).
    const SignedSpectrum bad({1.5}, {+1});
    const SearchResult sb = find_preimage(big, bad, cfg);
    std::cout << "search for projection (1.5)/(+): " << to_string(sb.status)
              << ", best objective " << sb.objective << "\n";
    return 0;
}
