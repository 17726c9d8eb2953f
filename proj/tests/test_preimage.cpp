// Preimage-search tests: the coordinate chart on u(p,q), the objective, the
// Nelder-Mead driver, and soundness of returned witnesses.

#include <catch2/catch_amalgamated.hpp>

#include "upq/json_io.hpp"
#include "upq/preimage.hpp"

using namespace upq;

namespace {

// Recompute the objective directly from a recovered spectrum.
double direct_distance(const SignedSpectrum& got, const SignedSpectrum& target) {
    double d = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        const double dv = got.values()[i] - target.values()[i];
        d += dv * dv;
        if (got.signs()[i] != target.signs()[i]) d += 1.0;
    }
    return d;
}

}  // namespace

TEST_CASE("coordinates on the algebra") {
    SECTION("dimension count is the square of the rank") {
        REQUIRE(coordinate_count(IndefiniteForm(1, 1)) == 4);
        REQUIRE(coordinate_count(IndefiniteForm(2, 1)) == 9);
        REQUIRE(coordinate_count(IndefiniteForm(2, 2)) == 16);
    }
    SECTION("the u(1,1) chart is diag(ia, id) plus one B entry") {
        const Matrix x = element_from_coords(IndefiniteForm(1, 1), {1.5, -0.5, 0.25, 0.75});
        REQUIRE(x(0, 0) == Complex(0, 1.5));
        REQUIRE(x(1, 1) == Complex(0, -0.5));
        REQUIRE(x(0, 1) == Complex(0.25, 0.75));
        REQUIRE(x(1, 0) == Complex(0.25, -0.75));
    }
    SECTION("skew blocks negate the conjugate across the diagonal") {
        std::vector<double> theta(9, 0.0);
        theta[2] = 0.5;  // A upper (0,1) real part
        theta[3] = 0.25; // A upper (0,1) imaginary part
        const Matrix x = element_from_coords(IndefiniteForm(2, 1), theta);
        REQUIRE(x(0, 1) == Complex(0.5, 0.25));
        REQUIRE(x(1, 0) == Complex(-0.5, 0.25));
    }
    SECTION("every chart point is exactly pseudo-skew") {
        RandomStream rng(5);
        const IndefiniteForm f(2, 2);
        for (int rep = 0; rep < 50; ++rep) {
            std::vector<double> theta(coordinate_count(f));
            for (double& t : theta) t = 2.0 * rng.gaussian();
            REQUIRE(pseudo_skew_residual(f, element_from_coords(f, theta)) == 0.0);
        }
    }
    SECTION("wrong coordinate counts are rejected") {
        REQUIRE_THROWS_AS(element_from_coords(IndefiniteForm(1, 1), {1, 2, 3}), LengthMismatch);
    }
}

TEST_CASE("objective") {
    const SignedSpectrum target({3}, {+1});
    auto elliptic = [](SignedSpectrum s) {
        return EllipticityReport{Ellipticity::elliptic_regular, std::move(s), 0.0, 1.0, 1.0};
    };

    SECTION("an exact hit scores zero") {
        REQUIRE(spectrum_distance(elliptic(SignedSpectrum({3}, {+1})), target) == 0.0);
    }
    SECTION("value offsets score their square") {
        REQUIRE(spectrum_distance(elliptic(SignedSpectrum({3.5}, {+1})), target) ==
                Catch::Approx(0.25));
    }
    SECTION("each wrong sign costs one full unit") {
        REQUIRE(spectrum_distance(elliptic(SignedSpectrum({3}, {-1})), target) ==
                Catch::Approx(1.0));
    }
    SECTION("leaving the elliptic regime costs at least the 1e3 penalty") {
        const EllipticityReport bad{Ellipticity::non_elliptic, std::nullopt, 0.7, 0.0, 0.0};
        REQUIRE(spectrum_distance(bad, target) >= 1e3);
    }
    SECTION("size mismatches are structural errors") {
        REQUIRE_THROWS_AS(spectrum_distance(elliptic(SignedSpectrum({3, 1}, {+1, +1})), target),
                          LengthMismatch);
    }
}

TEST_CASE("preimage search") {
    const SignedSpectrum big({2, 1}, {+1, -1});
    SearchConfig cfg;
    cfg.restarts = 8;
    cfg.max_iters = 2000;
    cfg.seed = 1;

    SECTION("the plain truncation is found at the zero start") {
        const auto r = find_preimage(big, SignedSpectrum({2}, {+1}), cfg);
        REQUIRE(r.status == SearchStatus::found);
        REQUIRE(r.found_restart == 0);
        REQUIRE(r.objective < 1e-6);
    }
    SECTION("a strictly larger member of the branching set is found") {
        const SignedSpectrum target({3}, {+1});
        const auto r = find_preimage(big, target, cfg);
        REQUIRE(r.status == SearchStatus::found);
        REQUIRE(r.objective < 1e-6);

        // Soundness: replay the witness and re-check everything independently.
        const SearchWitness w = replay_witness(big, r);
        REQUIRE(w.spectrum.signs() == target.signs());
        REQUIRE(std::abs(w.spectrum.values()[0] - 3.0) < 1e-3);
        REQUIRE(check_ggp(big, w.spectrum));
        REQUIRE(direct_distance(w.spectrum, target) == Catch::Approx(r.objective).margin(1e-9));
        REQUIRE(pseudo_skew_residual(IndefiniteForm(1, 1), w.conjugated) < 1e-10);
        REQUIRE(pseudo_skew_residual(IndefiniteForm(1, 0), w.projected) < 1e-10);
    }
    SECTION("identical configurations reproduce the result bit for bit") {
        const SignedSpectrum target({3}, {+1});
        const auto a = find_preimage(big, target, cfg);
        const auto b = find_preimage(big, target, cfg);
        REQUIRE(search_result_to_json(a) == search_result_to_json(b));
    }
}

TEST_CASE("unreachable targets come back NOT_FOUND") {
    const SignedSpectrum big({2, 1}, {+1, -1});
    SearchConfig cfg;
    cfg.restarts = 4;
    cfg.max_iters = 800;
    cfg.seed = 2;

    SECTION("values below the reachable ray stall at the squared gap") {
        // Projections of this orbit live on [2, inf) with a plus sign, so the
        // best the search can do against 1.5 is (2 - 1.5)^2 = 0.25.
        const auto r = find_preimage(big, SignedSpectrum({1.5}, {+1}), cfg);
        REQUIRE(r.status == SearchStatus::not_found);
        REQUIRE(r.found_restart == -1);
        REQUIRE(r.restarts_used == cfg.restarts);
        REQUIRE(r.objective >= 0.2);
        REQUIRE(r.objective < 1.0);  // it does reach the boundary region
    }
    SECTION("a point in the wrong sign chamber stays at least its gap away") {
        // For big (4,2,1)/(-,+,-) the box 2 <= eta_2 < eta_1 <= 4 only admits
        // signs (-,+); the flipped assignment is unreachable and the closest
        // reachable points sit over one unit of objective away.
        const SignedSpectrum wide({4, 2, 1}, {-1, +1, -1});
        SearchConfig c = cfg;
        c.restarts = 3;
        c.max_iters = 600;
        const auto r = find_preimage(wide, SignedSpectrum({3, 2.5}, {+1, -1}), c);
        REQUIRE(r.status == SearchStatus::not_found);
        REQUIRE(r.objective >= 0.9);
    }
}

TEST_CASE("search input validation") {
    const SignedSpectrum big({2, 1}, {+1, -1});
    const SignedSpectrum target({3}, {+1});

    SECTION("configuration bounds") {
        SearchConfig c;
        c.max_iters = 0;
        REQUIRE_THROWS_AS(find_preimage(big, target, c), ConfigInvalid);
        c = SearchConfig{};
        c.restarts = 0;
        REQUIRE_THROWS_AS(find_preimage(big, target, c), ConfigInvalid);
        c = SearchConfig{};
        c.objective_tol = 0.0;
        REQUIRE_THROWS_AS(find_preimage(big, target, c), ConfigInvalid);
        c = SearchConfig{};
        c.step = -0.25;
        REQUIRE_THROWS_AS(find_preimage(big, target, c), ConfigInvalid);
    }
    SECTION("signatures must drop exactly one minus") {
        REQUIRE_THROWS_AS(find_preimage(big, SignedSpectrum({3, 1}, {+1, -1})),
                          SignatureMismatch);
        REQUIRE_THROWS_AS(find_preimage(big, SignedSpectrum({3}, {-1})), SignatureMismatch);
        REQUIRE_THROWS_AS(find_preimage(SignedSpectrum({2, 1}, {+1, +1}), SignedSpectrum({3}, {+1})),
                          SignatureMismatch);
    }
    SECTION("non-regular inputs are rejected") {
        REQUIRE_THROWS_AS(find_preimage(SignedSpectrum({1, 1}, {+1, -1}), target), NonRegular);
        REQUIRE_THROWS_AS(find_preimage(big, SignedSpectrum({2, 2}, {+1, +1})), NonRegular);
    }
}

TEST_CASE("witness replay rejects degenerate coordinates") {
    // This big spectrum is (barely) regular, but its plain truncation carries
    // a 1e-13 gap, so replaying theta = 0 must refuse to produce a witness.
    const SignedSpectrum big({3.0 + 1e-13, 3.0, 0.0}, {+1, -1, -1});
    SearchResult fake;
    fake.theta.assign(coordinate_count(IndefiniteForm(1, 2)), 0.0);
    REQUIRE_THROWS_AS(replay_witness(big, fake), NonRegular);
}
