#pragma once

// Matrix-level verification of the signed interlacing relation.
//
// The ambient objects are elements X of the Lie algebra u(p,q): complex
// (p+q)x(p+q) matrices with  X^* J + J X = 0  for the indefinite form
// J = diag(I_p, -I_q).  In block form X = [[A, B], [B^*, D]] with A, D
// skew-Hermitian.  A *regular elliptic* element is conjugate (within the
// pseudo-unitary group, g^* J g = J) to a diagonal model
//     diag(i a_1, ..., i a_p, i b_1, ..., i b_q)
// with all a's and b's distinct; its signed spectrum records the descending
// eigenvalue list of -iX together with the sign of the J-form on each
// eigenline (+ on the a-slots, - on the b-slots).
//
// Deleting the last row and column (one negative slot) sends u(p,q) to
// u(p,q-1).  The experiments here conjugate a diagonal model by random group
// elements g = exp(Y), project the corner, recover the projected signed
// spectrum numerically, and test it against check_ggp — the matrix-side
// ground truth for the combinatorics in spectra.hpp.  The Hermitian analogue
// (corner deletion of U diag(lambda) U^*) does the same for check_cauchy.
//
// Numerical conventions: the matrix exponential is scaling-and-squaring with
// a truncated Taylor series (accurate to ~1e-12 for the norms used here);
// eigenpairs come from Eigen's dense solvers; every classification threshold
// is relative to s = max(1, ||X||_max).  All randomness flows through an
// explicit mt19937_64 stream, re-seeded per trial from (seed, trial), so any
// single trial of an experiment can be replayed in isolation.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "upq/enumeration.hpp"
#include "upq/errors.hpp"
#include "upq/spectra.hpp"

namespace upq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Residual allowed for membership in u(p,q) (relative, max-norm).
inline constexpr double kStructuralTol = 1e-10;
// Residual allowed on g^* J g = J for group elements (absolute, max-norm).
inline constexpr double kFormTol = 1e-8;

// ───────────────────────── the indefinite form ────────────────────────────

struct IndefiniteForm {
    int p;
    int q;

    IndefiniteForm(int p_, int q_) : p(p_), q(q_) {
        if (p < 0 || q < 0 || p + q < 1)
            throw SignatureMismatch("IndefiniteForm: signature (" + std::to_string(p) + "," +
                                    std::to_string(q) + ") is invalid");
    }

    int rank() const { return p + q; }
    Signature signature() const { return Signature{p, q}; }

    // Diagonal of J: p ones followed by q minus-ones.
    Eigen::VectorXd j_diagonal() const {
        Eigen::VectorXd j(rank());
        j.head(p).setOnes();
        j.tail(q).setConstant(-1.0);
        return j;
    }

    // The form after deleting the last (negative) slot.
    IndefiniteForm corner() const {
        if (q < 1)
            throw SignatureMismatch("IndefiniteForm::corner: no negative slot to delete");
        return IndefiniteForm(p, q - 1);
    }

    friend bool operator==(IndefiniteForm, IndefiniteForm) = default;
};

// Max-norm residual of X^* J + J X, relative to max(1, ||X||_max).
inline double pseudo_skew_residual(const IndefiniteForm& form, const Matrix& X) {
    if (X.rows() != form.rank() || X.cols() != form.rank())
        throw LengthMismatch("pseudo_skew_residual: matrix is " + std::to_string(X.rows()) + "x" +
                             std::to_string(X.cols()) + " but the form has rank " +
                             std::to_string(form.rank()));
    const Eigen::VectorXd j = form.j_diagonal();
    const Matrix r = X.adjoint() * j.asDiagonal() + j.asDiagonal() * X;
    const double scale = std::max(1.0, X.cwiseAbs().maxCoeff());
    return r.cwiseAbs().maxCoeff() / scale;
}

// An element of u(p,q): the matrix plus the form it is skew for.  Use
// make_pseudo_skew to construct with validation.
struct PseudoSkewElement {
    IndefiniteForm form;
    Matrix entries;
};

inline PseudoSkewElement make_pseudo_skew(const IndefiniteForm& form, Matrix X) {
    if (X.rows() != form.rank() || X.cols() != form.rank())
        throw LengthMismatch("make_pseudo_skew: matrix is " + std::to_string(X.rows()) + "x" +
                             std::to_string(X.cols()) + ", form has rank " +
                             std::to_string(form.rank()));
    if (!X.allFinite()) throw EigensolverFailure("make_pseudo_skew: non-finite entries");
    const double r = pseudo_skew_residual(form, X);
    if (r > kStructuralTol)
        throw FormViolation("make_pseudo_skew: structural residual " + std::to_string(r) +
                            " exceeds " + std::to_string(kStructuralTol));
    return PseudoSkewElement{form, std::move(X)};
}

// The diagonal model of a regular signed spectrum: +-signed values fill the
// first p slots in descending order, --signed values the last q slots in
// descending order, each multiplied by i.
inline PseudoSkewElement diagonal_model(const SignedSpectrum& s) {
    s.require_regular(0.0, "diagonal_model");
    const Signature sig = s.signature();
    const IndefiniteForm form(sig.p, sig.q);
    Matrix X = Matrix::Zero(form.rank(), form.rank());
    int pos = 0, neg = sig.p;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const int slot = s.signs()[k] > 0 ? pos++ : neg++;
        X(slot, slot) = Complex(0.0, s.values()[k]);
    }
    return PseudoSkewElement{form, std::move(X)};
}

// ───────────────────────── random streams ─────────────────────────────────

// Deterministic random source: mt19937_64 plus a Box-Muller gaussian with a
// cached spare.  Experiments derive one stream per trial from (seed, trial)
// so individual trials replay without re-running their predecessors.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : RandomStream(seed, 0) {}

    RandomStream(std::uint64_t seed, std::uint64_t trial) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(trial),
                          static_cast<std::uint32_t>(trial >> 32)};
        eng_.seed(seq);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1]: keeps the log finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Complex complex_gaussian(double sd) { return Complex(sd * gaussian(), sd * gaussian()); }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Random element of u(p,q): every free real coordinate i.i.d. N(0, sd^2)
// with sd = scale / (p+q), so that ||X|| grows like `scale`, not like
// scale * sqrt(p+q).  Draw order (fixed for reproducibility): diagonal of A,
// upper triangle of A row-major, diagonal of D, upper triangle of D, then B
// row-major.
inline Matrix random_pseudo_skew(const IndefiniteForm& form, double scale, RandomStream& rng) {
    if (scale < 0.0) throw ConfigInvalid("random_pseudo_skew: scale must be >= 0");
    const int n = form.rank();
    const double sd = scale / static_cast<double>(n);
    Matrix X = Matrix::Zero(n, n);
    auto fill_skew_block = [&](int base, int m) {
        for (int j = 0; j < m; ++j) X(base + j, base + j) = Complex(0.0, sd * rng.gaussian());
        for (int j = 0; j < m; ++j)
            for (int k = j + 1; k < m; ++k) {
                const Complex z = rng.complex_gaussian(sd);
                X(base + j, base + k) = z;
                X(base + k, base + j) = -std::conj(z);
            }
    };
    fill_skew_block(0, form.p);
    fill_skew_block(form.p, form.q);
    for (int j = 0; j < form.p; ++j)
        for (int k = 0; k < form.q; ++k) {
            const Complex z = rng.complex_gaussian(sd);
            X(j, form.p + k) = z;
            X(form.p + k, j) = std::conj(z);
        }
    return X;
}

// ───────────────────────── matrix exponential ─────────────────────────────

// exp(X) by scaling-and-squaring: halve until the infinity norm is <= 0.5,
// run the Taylor series to machine-precision stagnation, square back up.
inline Matrix expm(const Matrix& X) {
    if (!X.allFinite()) throw EigensolverFailure("expm: non-finite input");
    const int n = static_cast<int>(X.rows());
    if (n != X.cols()) throw LengthMismatch("expm: matrix must be square");
    const double nrm = X.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    const Matrix T = X / std::pow(2.0, squarings);

    Matrix sum = Matrix::Identity(n, n);
    Matrix term = Matrix::Identity(n, n);
    for (int k = 1; k <= 40; ++k) {
        term = (term * T) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() <= 1e-18 * sum.cwiseAbs().maxCoeff()) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    if (!sum.allFinite()) throw EigensolverFailure("expm: overflow during squaring");
    return sum;
}

// Random pseudo-unitary group element exp(Y) for a random Y in u(p,q).
// scale = 0 gives the identity.
inline Matrix random_pseudo_unitary(const IndefiniteForm& form, double scale,
                                    std::uint64_t seed) {
    RandomStream rng(seed);
    return expm(random_pseudo_skew(form, scale, rng));
}

// Max-norm residual of g^* J g - J.
inline double form_residual(const IndefiniteForm& form, const Matrix& g) {
    const Eigen::VectorXd j = form.j_diagonal();
    const Matrix r = g.adjoint() * j.asDiagonal() * g - Matrix(j.cast<Complex>().asDiagonal());
    return r.cwiseAbs().maxCoeff();
}

// g X g^{-1} for a pseudo-unitary g; rejects g that fail g^* J g = J within
// form_tol, and validates that the result is again pseudo-skew.
inline PseudoSkewElement conjugate(const Matrix& g, const PseudoSkewElement& X,
                                   double form_tol = kFormTol) {
    if (g.rows() != X.form.rank() || g.cols() != X.form.rank())
        throw LengthMismatch("conjugate: g has wrong dimensions");
    const double r = form_residual(X.form, g);
    if (r > form_tol)
        throw FormViolation("conjugate: form residual " + std::to_string(r) + " exceeds " +
                            std::to_string(form_tol));
    const Matrix gi = g.partialPivLu().inverse();
    return make_pseudo_skew(X.form, g * X.entries * gi);
}

// Delete the last row and column: u(p,q) -> u(p,q-1).  Exact (no residual
// can appear: principal corners of pseudo-skew matrices are pseudo-skew).
inline PseudoSkewElement project_corner(const PseudoSkewElement& X) {
    if (X.form.rank() < 2) throw RankTooSmall("project_corner: rank must be >= 2");
    const IndefiniteForm small = X.form.corner();  // throws if q = 0
    const int m = small.rank();
    return PseudoSkewElement{small, X.entries.topLeftCorner(m, m)};
}

// ───────────────────────── spectral classification ────────────────────────

enum class Ellipticity : unsigned char { elliptic_regular, non_elliptic, near_degenerate };

inline std::string to_string(Ellipticity e) {
    switch (e) {
        case Ellipticity::elliptic_regular: return "ELLIPTIC_REGULAR";
        case Ellipticity::non_elliptic: return "NON_ELLIPTIC";
        case Ellipticity::near_degenerate: return "NEAR_DEGENERATE";
    }
    return "?";
}

struct EllipticityReport {
    Ellipticity verdict;
    // Present iff verdict == elliptic_regular.
    std::optional<SignedSpectrum> spectrum;
    // Diagnostics (valid whenever the eigensolve succeeded):
    double max_re = 0.0;            // largest |Re(eigenvalue)|
    double min_gap = 0.0;           // smallest gap between sorted Im parts
    double min_definiteness = 0.0;  // smallest |v^* J v| over unit eigenvectors
};

// Dense complex eigenpairs with convergence and finiteness checks.
inline std::pair<Eigen::VectorXcd, Matrix> complex_eigenpairs(const Matrix& X) {
    Eigen::ComplexEigenSolver<Matrix> solver(X, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw EigensolverFailure("complex_eigenpairs: solver did not converge");
    if (!solver.eigenvalues().allFinite() || !solver.eigenvectors().allFinite())
        throw EigensolverFailure("complex_eigenpairs: non-finite eigenpairs");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

// Classify an element and, if regular elliptic, recover its signed spectrum:
// eigenvalues must be purely imaginary (|Re| <= tol*s), pairwise separated
// (gap > tol*s), and every eigenline must be J-definite (|v^* J v| > tol*s),
// with p plus-signs and q minus-signs; s = max(1, ||X||_max).
inline EllipticityReport signed_spectrum_of(const PseudoSkewElement& X,
                                            double tol = kDefaultTol) {
    const auto [vals, vecs] = complex_eigenpairs(X.entries);
    const double s = std::max(1.0, X.entries.cwiseAbs().maxCoeff());
    const Eigen::VectorXd j = X.form.j_diagonal();
    const int n = X.form.rank();

    EllipticityReport report{Ellipticity::elliptic_regular, std::nullopt, 0.0, 0.0, 0.0};

    struct Line {
        double value;
        double definiteness;  // v^* J v, exactly real by construction
    };
    std::vector<Line> lines;
    lines.reserve(n);
    for (int k = 0; k < n; ++k) {
        report.max_re = std::max(report.max_re, std::abs(vals(k).real()));
        double d = 0.0;
        for (int i = 0; i < n; ++i) d += j(i) * std::norm(vecs(i, k));
        lines.push_back(Line{vals(k).imag(), d});
    }
    std::sort(lines.begin(), lines.end(),
              [](const Line& a, const Line& b) { return a.value > b.value; });

    report.min_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k + 1 < n; ++k)
        report.min_gap = std::min(report.min_gap, lines[k].value - lines[k + 1].value);
    report.min_definiteness = std::numeric_limits<double>::infinity();
    for (const Line& l : lines)
        report.min_definiteness = std::min(report.min_definiteness, std::abs(l.definiteness));

    if (report.max_re > tol * s) {
        report.verdict = Ellipticity::non_elliptic;
        return report;
    }
    if (report.min_gap <= tol * s || report.min_definiteness <= tol * s) {
        report.verdict = Ellipticity::near_degenerate;
        return report;
    }
    std::vector<double> values(n);
    std::vector<int> signs(n);
    Signature sig;
    for (int k = 0; k < n; ++k) {
        values[k] = lines[k].value;
        signs[k] = lines[k].definiteness > 0.0 ? +1 : -1;
        (signs[k] > 0 ? sig.p : sig.q)++;
    }
    if (sig != X.form.signature()) {
        // Eigenline signs disagree with the form's signature: numerically
        // possible only in a near-null regime, so classify accordingly.
        report.verdict = Ellipticity::near_degenerate;
        return report;
    }
    report.spectrum.emplace(std::move(values), std::move(signs));
    return report;
}

// ───────────────────────── experiments ────────────────────────────────────

// One failed (or otherwise retained) trial, replayable via (seed, trial).
struct TrialWitness {
    std::uint64_t trial;
    Matrix conjugated;       // g X0 g^{-1} in the big algebra
    Matrix projected;        // its corner
    SignedSpectrum spectrum; // the recovered projected spectrum
};

struct ProjectionReport {
    std::uint64_t trials = 0;
    std::uint64_t elliptic = 0;
    std::uint64_t non_elliptic = 0;
    std::uint64_t near_degenerate = 0;
    std::uint64_t interlacing_pass = 0;
    std::uint64_t interlacing_fail = 0;
    std::uint64_t seed = 0;
    double scale = 0.0;
    double tol = 0.0;
    // Distinct recovered spectra with multiplicities, ascending by
    // (values, signs); values optionally rounded to a lattice first.
    std::vector<std::pair<SignedSpectrum, std::uint64_t>> histogram;
    // Witnesses for every interlacing failure.
    std::vector<TrialWitness> failures;
};

namespace detail {

inline double round_to_lattice(double v, Lattice l) {
    if (l == Lattice::integer) return static_cast<double>(std::llround(v));
    return static_cast<double>(std::llround(v - 0.5)) + 0.5;
}

using HistogramMap = std::map<std::pair<std::vector<double>, std::vector<int>>, std::uint64_t>;

inline void histogram_insert(HistogramMap& h, const SignedSpectrum& s,
                             const std::optional<Lattice>& round_to) {
    std::vector<double> vals = s.values();
    if (round_to)
        for (double& v : vals) v = round_to_lattice(v, *round_to);
    h[{std::move(vals), s.signs()}]++;
}

inline void histogram_flush(const HistogramMap& h, ProjectionReport& report) {
    report.histogram.reserve(h.size());
    for (const auto& [key, count] : h)
        report.histogram.emplace_back(SignedSpectrum(key.first, key.second), count);
}

}  // namespace detail

// Conjugate big's diagonal model by `trials` random group elements, project
// the corner, classify, and test every regular elliptic projection against
// check_ggp.  Counts always satisfy
//     trials = elliptic + non_elliptic + near_degenerate,
//     elliptic = interlacing_pass + interlacing_fail.
inline ProjectionReport sample_projection_experiment(
    const SignedSpectrum& big, std::uint64_t trials, double scale, std::uint64_t seed,
    double tol = kDefaultTol, std::optional<Lattice> round_to = std::nullopt) {
    if (trials < 1) throw ConfigInvalid("sample_projection_experiment: trials must be >= 1");
    big.require_regular(tol, "sample_projection_experiment: big");
    const PseudoSkewElement model = diagonal_model(big);
    if (model.form.q < 1)
        throw SignatureMismatch("sample_projection_experiment: big needs q >= 1");

    ProjectionReport report;
    report.trials = trials;
    report.seed = seed;
    report.scale = scale;
    report.tol = tol;
    detail::HistogramMap hist;

    for (std::uint64_t t = 0; t < trials; ++t) {
        RandomStream rng(seed, t);
        const Matrix g = expm(random_pseudo_skew(model.form, scale, rng));
        const PseudoSkewElement conj = conjugate(g, model);
        const PseudoSkewElement proj = project_corner(conj);
        const EllipticityReport cls = signed_spectrum_of(proj, tol);
        switch (cls.verdict) {
            case Ellipticity::non_elliptic: report.non_elliptic++; continue;
            case Ellipticity::near_degenerate: report.near_degenerate++; continue;
            case Ellipticity::elliptic_regular: break;
        }
        report.elliptic++;
        const SignedSpectrum& small = *cls.spectrum;
        detail::histogram_insert(hist, small, round_to);
        // The classification gap threshold tol*s (s >= 1) implies regularity
        // at tol, and the sign counts were checked against (p, q-1), so the
        // interlacing preconditions hold by construction here.
        if (check_ggp(big, small, tol)) {
            report.interlacing_pass++;
        } else {
            report.interlacing_fail++;
            report.failures.push_back(TrialWitness{t, conj.entries, proj.entries, small});
        }
    }
    detail::histogram_flush(hist, report);
    return report;
}

// Hermitian control experiment: rotate diag(lambda) by random unitaries,
// delete the corner, and test the classical interlacing chain.  Every trial
// is elliptic (Hermitian spectra are real), so trials = elliptic and
// elliptic = interlacing_pass + interlacing_fail.
inline ProjectionReport cauchy_matrix_experiment(const std::vector<double>& lambda,
                                                 std::uint64_t trials, std::uint64_t seed,
                                                 double tol = 1e-8) {
    if (trials < 1) throw ConfigInvalid("cauchy_matrix_experiment: trials must be >= 1");
    if (lambda.size() < 2)
        throw LengthMismatch("cauchy_matrix_experiment: lambda needs at least two entries");
    for (std::size_t i = 0; i + 1 < lambda.size(); ++i)
        if (lambda[i] < lambda[i + 1])
            throw NotDescending("cauchy_matrix_experiment: lambda must be weakly descending");

    const int n = static_cast<int>(lambda.size());
    const IndefiniteForm compact(n, 0);
    Eigen::VectorXd lam(n);
    for (int i = 0; i < n; ++i) lam(i) = lambda[i];

    ProjectionReport report;
    report.trials = trials;
    report.seed = seed;
    report.scale = 1.0;
    report.tol = tol;
    detail::HistogramMap hist;

    for (std::uint64_t t = 0; t < trials; ++t) {
        RandomStream rng(seed, t);
        const Matrix u = expm(random_pseudo_skew(compact, 1.0, rng));
        Matrix h = u * lam.cast<Complex>().asDiagonal() * u.adjoint();
        h = (h + Matrix(h.adjoint())) / 2.0;  // kill rounding skew
        const Matrix corner = h.topLeftCorner(n - 1, n - 1);
        Eigen::SelfAdjointEigenSolver<Matrix> solver(corner);
        if (solver.info() != Eigen::Success)
            throw EigensolverFailure("cauchy_matrix_experiment: corner eigensolve failed");
        std::vector<double> mu(n - 1);
        for (int i = 0; i < n - 1; ++i) mu[i] = solver.eigenvalues()(n - 2 - i);  // descending
        report.elliptic++;
        const SignedSpectrum mu_spec(mu, std::vector<int>(n - 1, +1));
        detail::histogram_insert(hist, mu_spec, std::nullopt);
        if (check_cauchy(lambda, mu, tol)) {
            report.interlacing_pass++;
        } else {
            report.interlacing_fail++;
            report.failures.push_back(TrialWitness{t, h, corner, mu_spec});
        }
    }
    detail::histogram_flush(hist, report);
    return report;
}

}  // namespace upq
