#pragma once

// Inverse problem: find a group conjugation whose corner projection hits a
// prescribed small spectrum.
//
// Given a big regular spectrum (signature (p,q)) and a target signed spectrum
// of signature (p,q-1), search over Y in u(p,q) — parametrised by its n^2
// free real coordinates — for g = exp(Y) such that deleting the last row and
// column of g X0 g^{-1} (X0 the diagonal model) yields the target.  The
// objective is
//
//     sum_i (value_i - target_i)^2  +  #{sign mismatches}
//
// on regular elliptic projections, and a large penalty plus smooth
// diagnostics otherwise, minimised by Nelder-Mead with random restarts.  The
// first restart always starts at Y = 0, so targets equal to the plain
// truncation are found immediately.  Everything is deterministic in
// (config.seed); restart r draws its start point from the stream (seed, r).
//
// A target is reported FOUND only when the best objective drops below
// config.objective_tol; by construction the witness then carries a genuine
// projection whose recovered spectrum sits within sqrt(objective_tol) of the
// target in every value with exactly matching signs.  Unreachable targets
// stall at the squared distance from the target to the reachable set (>= 1
// when a sign is wrong), restarts included, and come back NOT_FOUND.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "upq/matrix_lab.hpp"

namespace upq {

// ───────────────────────── coordinates on u(p,q) ──────────────────────────

// Number of free real coordinates of u(p,q): p^2 + q^2 + 2pq = (p+q)^2.
inline int coordinate_count(const IndefiniteForm& form) { return form.rank() * form.rank(); }

// Build the element from coordinates, in the fixed layout: diag(A) imaginary
// parts (p), upper triangle of A row-major as (re, im) pairs, then the same
// for D, then B row-major as (re, im) pairs.
inline Matrix element_from_coords(const IndefiniteForm& form, const std::vector<double>& theta) {
    if (static_cast<int>(theta.size()) != coordinate_count(form))
        throw LengthMismatch("element_from_coords: expected " +
                             std::to_string(coordinate_count(form)) + " coordinates, got " +
                             std::to_string(theta.size()));
    const int n = form.rank();
    Matrix X = Matrix::Zero(n, n);
    std::size_t at = 0;
    auto next = [&] { return theta[at++]; };
    auto fill_skew_block = [&](int base, int m) {
        for (int j = 0; j < m; ++j) X(base + j, base + j) = Complex(0.0, next());
        for (int j = 0; j < m; ++j)
            for (int k = j + 1; k < m; ++k) {
                const double re = next(), im = next();
                X(base + j, base + k) = Complex(re, im);
                X(base + k, base + j) = Complex(-re, im);
            }
    };
    fill_skew_block(0, form.p);
    fill_skew_block(form.p, form.q);
    for (int j = 0; j < form.p; ++j)
        for (int k = 0; k < form.q; ++k) {
            const double re = next(), im = next();
            X(j, form.p + k) = Complex(re, im);
            X(form.p + k, j) = Complex(re, -im);
        }
    return X;
}

// ───────────────────────── objective ──────────────────────────────────────

// Distance from a classified projection to the target spectrum.  Regular
// elliptic reports score the squared value distance plus one unit per sign
// mismatch; anything else scores a fixed penalty softened by diagnostics so
// the search can slide back toward the elliptic regime.
inline double spectrum_distance(const EllipticityReport& report, const SignedSpectrum& target) {
    if (report.verdict != Ellipticity::elliptic_regular) {
        const double gap_term = std::max(0.0, 1.0 - report.min_gap);
        const double def_term = std::max(0.0, 1.0 - report.min_definiteness);
        return 1e3 + report.max_re + gap_term + def_term;
    }
    const SignedSpectrum& got = *report.spectrum;
    if (got.size() != target.size())
        throw LengthMismatch("spectrum_distance: spectrum sizes differ");
    double d = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        const double dv = got.values()[i] - target.values()[i];
        d += dv * dv;
        if (got.signs()[i] != target.signs()[i]) d += 1.0;
    }
    return d;
}

// ───────────────────────── search configuration ───────────────────────────

struct SearchConfig {
    int max_iters = 5000;         // Nelder-Mead iterations per restart
    int restarts = 20;            // restart 0 starts at theta = 0
    double objective_tol = 1e-6;  // FOUND threshold on the objective
    double step = 0.5;            // simplex edge and restart spread
    std::uint64_t seed = 0;

    void validate() const {
        if (max_iters < 1) throw ConfigInvalid("SearchConfig: max_iters must be >= 1");
        if (restarts < 1) throw ConfigInvalid("SearchConfig: restarts must be >= 1");
        if (!(objective_tol > 0.0)) throw ConfigInvalid("SearchConfig: objective_tol must be > 0");
        if (!(step > 0.0)) throw ConfigInvalid("SearchConfig: step must be > 0");
    }
};

enum class SearchStatus : unsigned char { found, not_found };

inline std::string to_string(SearchStatus s) {
    return s == SearchStatus::found ? "FOUND" : "NOT_FOUND";
}

struct SearchWitness {
    std::vector<double> theta;  // coordinates of the algebra element Y
    Matrix conjugated;          // exp(Y) X0 exp(-Y)
    Matrix projected;           // its corner
    SignedSpectrum spectrum;    // recovered projected spectrum
};

struct SearchResult {
    SearchStatus status = SearchStatus::not_found;
    double objective = std::numeric_limits<double>::infinity();
    std::uint64_t evaluations = 0;  // objective evaluations, all restarts
    std::uint64_t iterations = 0;   // Nelder-Mead iterations, all restarts
    int restarts_used = 0;
    int found_restart = -1;  // restart index that hit the target, -1 if none
    std::vector<double> theta;  // best coordinates seen
};

// ───────────────────────── Nelder-Mead ────────────────────────────────────

namespace detail {

// Standard Nelder-Mead (reflection 1, expansion 2, contractions 1/2, shrink
// 1/2) on an externally supplied objective.  Stops when the best value drops
// below target_f, when the simplex collapses, or after max_iters iterations.
template <typename F>
void nelder_mead(F&& f, std::vector<double> x0, double step, int max_iters, double target_f,
                 double& best_f, std::vector<double>& best_x, std::uint64_t& evaluations,
                 std::uint64_t& iterations) {
    const std::size_t dim = x0.size();
    std::vector<std::vector<double>> pts(dim + 1, x0);
    for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += step;
    std::vector<double> fv(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) {
        fv[i] = f(pts[i]);
        ++evaluations;
    }

    std::vector<std::size_t> order(dim + 1);
    auto record_best = [&] {
        const auto it = std::min_element(fv.begin(), fv.end());
        if (*it < best_f) {
            best_f = *it;
            best_x = pts[static_cast<std::size_t>(it - fv.begin())];
        }
    };
    record_best();

    for (int iter = 0; iter < max_iters && best_f >= target_f; ++iter) {
        ++iterations;
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t lo = order.front(), hi = order.back(), second_hi = order[dim - 1];

        // Collapse test: no meaningful spread left in values or vertices.
        double vertex_spread = 0.0;
        for (std::size_t i = 0; i <= dim; ++i)
            for (std::size_t k = 0; k < dim; ++k)
                vertex_spread = std::max(vertex_spread, std::abs(pts[i][k] - pts[lo][k]));
        if (fv[hi] - fv[lo] <= 1e-14 * (1.0 + std::abs(fv[lo])) && vertex_spread <= 1e-10)
            break;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i)
            if (i != hi)
                for (std::size_t k = 0; k < dim; ++k) centroid[k] += pts[i][k];
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto at = [&](double coef) {  // centroid + coef * (centroid - worst)
            std::vector<double> x(dim);
            for (std::size_t k = 0; k < dim; ++k)
                x[k] = centroid[k] + coef * (centroid[k] - pts[hi][k]);
            return x;
        };
        auto accept = [&](std::vector<double> x, double val) {
            pts[hi] = std::move(x);
            fv[hi] = val;
        };

        std::vector<double> xr = at(1.0);
        const double fr = (++evaluations, f(xr));
        if (fr < fv[lo]) {
            std::vector<double> xe = at(2.0);
            const double fe = (++evaluations, f(xe));
            if (fe < fr) accept(std::move(xe), fe);
            else accept(std::move(xr), fr);
        } else if (fr < fv[second_hi]) {
            accept(std::move(xr), fr);
        } else {
            const bool outside = fr < fv[hi];
            std::vector<double> xc = at(outside ? 0.5 : -0.5);
            const double fc = (++evaluations, f(xc));
            if (fc < (outside ? fr : fv[hi])) {
                accept(std::move(xc), fc);
            } else {
                // Shrink every vertex toward the best one.
                for (std::size_t i = 0; i <= dim; ++i) {
                    if (i == lo) continue;
                    for (std::size_t k = 0; k < dim; ++k)
                        pts[i][k] = pts[lo][k] + 0.5 * (pts[i][k] - pts[lo][k]);
                    fv[i] = f(pts[i]);
                    ++evaluations;
                }
            }
        }
        record_best();
    }
}

}  // namespace detail

// ───────────────────────── the search ─────────────────────────────────────

inline SearchResult find_preimage(const SignedSpectrum& big, const SignedSpectrum& target,
                                  const SearchConfig& cfg = {}) {
    cfg.validate();
    big.require_regular(kDefaultTol, "find_preimage: big");
    target.require_regular(kDefaultTol, "find_preimage: target");
    const Signature b = big.signature(), t = target.signature();
    if (b.q < 1 || t.p != b.p || t.q != b.q - 1)
        throw SignatureMismatch("find_preimage: target signature (" + std::to_string(t.p) + "," +
                                std::to_string(t.q) + ") is not (" + std::to_string(b.p) + "," +
                                std::to_string(b.q - 1) + ")");

    const PseudoSkewElement model = diagonal_model(big);
    const IndefiniteForm& form = model.form;
    const int dim = coordinate_count(form);

    auto objective = [&](const std::vector<double>& theta) -> double {
        const Matrix y = element_from_coords(form, theta);
        // Keep exp(Y) finite: beyond this norm the search has left any
        // useful regime, so push back with a growing penalty.
        const double ninf = y.cwiseAbs().rowwise().sum().maxCoeff();
        if (ninf > 50.0) return 1e6 + ninf;
        try {
            const PseudoSkewElement conj = conjugate(expm(y), model);
            return spectrum_distance(signed_spectrum_of(project_corner(conj)), target);
        } catch (const FormViolation&) {
            return 1e6;  // exp(Y) lost form precision: out of regime
        } catch (const EigensolverFailure&) {
            return 1e6;
        }
    };

    SearchResult result;
    for (int r = 0; r < cfg.restarts; ++r) {
        std::vector<double> start(dim, 0.0);
        if (r > 0) {
            RandomStream rng(cfg.seed, static_cast<std::uint64_t>(r));
            for (double& x : start) x = cfg.step * rng.gaussian();
        }
        double best_f = std::numeric_limits<double>::infinity();
        std::vector<double> best_x = start;
        detail::nelder_mead(objective, std::move(start), cfg.step, cfg.max_iters,
                            cfg.objective_tol, best_f, best_x, result.evaluations,
                            result.iterations);
        result.restarts_used = r + 1;
        if (best_f < result.objective) {
            result.objective = best_f;
            result.theta = best_x;
        }
        if (result.objective < cfg.objective_tol) {
            result.status = SearchStatus::found;
            result.found_restart = r;
            break;
        }
    }
    return result;
}

// Rebuild the matrices behind a search result's coordinates.  For FOUND
// results the recovered spectrum is regular elliptic by construction (the
// objective is below any penalty), so this always yields a witness usable
// for independent re-checking.
inline SearchWitness replay_witness(const SignedSpectrum& big, const SearchResult& result) {
    const PseudoSkewElement model = diagonal_model(big);
    const Matrix y = element_from_coords(model.form, result.theta);
    const PseudoSkewElement conj = conjugate(expm(y), model);
    const PseudoSkewElement proj = project_corner(conj);
    const EllipticityReport rep = signed_spectrum_of(proj);
    if (!rep.spectrum)
        throw NonRegular("replay_witness: coordinates do not yield a regular elliptic projection");
    return SearchWitness{result.theta, conj.entries, proj.entries, *rep.spectrum};
}

}  // namespace upq
