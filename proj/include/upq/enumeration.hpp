#pragma once

// Discrete enumeration on top of the signed interlacing relation.
//
// For branching purposes the interesting small spectra do not range over all
// reals: discrete-series parameters of the rank-n indefinite unitary group
// live on a fixed lattice — distinct *integers* when n is odd and distinct
// *half-integers* (odd multiples of 1/2) when n is even — so restricting a
// big representation amounts to enumerating lattice points of the small
// lattice, inside a finite window, that interlace the big spectrum.  Note the
// two lattices never intersect: a big value and a small value can tie only
// through floating-point projection, never exactly, which is why exact
// equality handling here can be purely combinatorial.
//
// Enumeration is pattern-guided: first list every merged *sign pattern*
// consistent with the eight-pair rule (enumerate_sign_patterns), then fill
// each pattern's small slots with lattice values obeying the descent bounds
// read off from the neighbouring big values.  All lattice arithmetic uses
// doubled integers (2x the value), making parity checks and ties exact.
//
// The compact counterpart: for weakly descending integer highest weights,
// restriction is multiplicity free with weights interlacing classically
// (weyl_branching), and weyl_dimension gives the exact polynomial dimension
//     dim(lambda) = prod_{i<j} (lambda_i - lambda_j + j - i) / (j - i),
// so that dim(lambda) = sum over branches of dim(mu) — an exact conservation
// law the tests use as an oracle.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "upq/errors.hpp"
#include "upq/spectra.hpp"

namespace upq {

// ───────────────────────── lattices and windows ──────────────────────────

enum class Lattice : unsigned char {
    integer,       // ..., -1, 0, 1, ...        (doubled values even)
    half_integer,  // ..., -3/2, -1/2, 1/2, ... (doubled values odd)
};

inline std::string lattice_to_string(Lattice l) {
    return l == Lattice::integer ? "Z" : "Z+1/2";
}

inline Lattice lattice_from_string(std::string_view s) {
    if (s == "Z") return Lattice::integer;
    if (s == "Z+1/2") return Lattice::half_integer;
    throw Error("lattice_from_string: expected \"Z\" or \"Z+1/2\", got \"" + std::string(s) + "\"");
}

// The lattice carrying rank-n discrete parameters: integers for odd n,
// half-integers for even n.
inline Lattice lattice_for_rank(int n) {
    if (n < 1) throw RankTooSmall("lattice_for_rank: rank must be >= 1");
    return (n % 2 == 1) ? Lattice::integer : Lattice::half_integer;
}

inline bool doubled_on_lattice(long long doubled, Lattice l) {
    const bool odd = (doubled % 2 != 0);
    return (l == Lattice::half_integer) == odd;
}

// Exact doubled representation of a lattice value; throws if v is not an
// exact lattice point (2v must be integral and of the right parity).
inline long long to_doubled(double v, Lattice l) {
    const double twice = 2.0 * v;
    if (!std::isfinite(twice) || std::nearbyint(twice) != twice ||
        std::abs(twice) > 9.0e15)
        throw LatticeViolation("to_doubled: " + std::to_string(v) + " is not a lattice point");
    const long long d = static_cast<long long>(twice);
    if (!doubled_on_lattice(d, l))
        throw LatticeViolation("to_doubled: " + std::to_string(v) + " has wrong parity for " +
                               lattice_to_string(l));
    return d;
}

inline double from_doubled(long long d) { return static_cast<double>(d) / 2.0; }

// Closed search window [lo, hi] on the value axis.
struct ValueWindow {
    double lo;
    double hi;

    ValueWindow(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw ConfigInvalid("ValueWindow: bounds must be finite");
        if (lo > hi)
            throw ConfigInvalid("ValueWindow: lo " + std::to_string(lo) + " exceeds hi " +
                                std::to_string(hi));
    }

    bool contains(double v) const { return lo <= v && v <= hi; }

    friend bool operator==(ValueWindow, ValueWindow) = default;
};

// Doubled lattice points inside the window, descending.  Empty when the
// window misses the lattice entirely.  Windows must stay inside the range
// where doubles represent lattice points exactly, and within a point-count
// cap that keeps downstream enumeration meaningful.
inline std::vector<long long> doubled_points_in(ValueWindow w, Lattice l) {
    if (2.0 * w.hi > 9.0e15 || 2.0 * w.lo < -9.0e15)
        throw ConfigInvalid("doubled_points_in: window exceeds the exact lattice range");
    // Largest doubled point <= 2*hi with the right parity, then walk down.
    long long hi = static_cast<long long>(std::floor(2.0 * w.hi));
    if (!doubled_on_lattice(hi, l)) --hi;
    long long lo = static_cast<long long>(std::ceil(2.0 * w.lo));
    if (!doubled_on_lattice(lo, l)) ++lo;
    constexpr long long kMaxPoints = 10'000'000;
    if (hi >= lo && (hi - lo) / 2 + 1 > kMaxPoints)
        throw ConfigInvalid("doubled_points_in: window spans more than " +
                            std::to_string(kMaxPoints) + " lattice points");
    std::vector<long long> out;
    for (long long d = hi; d >= lo; d -= 2) out.push_back(d);
    return out;
}

// ───────────────────────── merged sign patterns ──────────────────────────

// All merged sign patterns compatible with the eight-pair rule: sequences of
// 2(p+q)-1 symbols whose big-subsequence equals big_signs in order and which
// contain exactly p small-plus and q-1 small-minus symbols.  Requires at
// least one negative big sign (otherwise there is no distinguished slot to
// delete).  Patterns are produced in depth-first order, trying at each step
// the next big symbol, then a small plus, then a small minus.
inline std::vector<std::vector<Symbol>> enumerate_sign_patterns(
    const std::vector<int>& big_signs) {
    int p = 0, q = 0;
    for (int s : big_signs) {
        if (s != 1 && s != -1)
            throw Error("enumerate_sign_patterns: signs must be +1 or -1");
        (s > 0 ? p : q)++;
    }
    if (q < 1)
        throw SignatureMismatch("enumerate_sign_patterns: big signature needs q >= 1");

    std::vector<std::vector<Symbol>> out;
    std::vector<Symbol> prefix;
    prefix.reserve(big_signs.size() * 2 - 1);
    auto fits = [&](Symbol s) { return prefix.empty() || pair_allowed(prefix.back(), s); };
    auto dfs = [&](auto&& self, std::size_t i, int plus_left, int minus_left) -> void {
        if (i == big_signs.size() && plus_left == 0 && minus_left == 0) {
            out.push_back(prefix);
            return;
        }
        auto take = [&](Symbol s, auto&&... next) {
            if (!fits(s)) return;
            prefix.push_back(s);
            self(self, next...);
            prefix.pop_back();
        };
        if (i < big_signs.size())
            take(Symbol{big_signs[i], Group::big}, i + 1, plus_left, minus_left);
        if (plus_left > 0)
            take(Symbol{+1, Group::small}, i, plus_left - 1, minus_left);
        if (minus_left > 0)
            take(Symbol{-1, Group::small}, i, plus_left, minus_left - 1);
    };
    dfs(dfs, 0, p, q - 1);
    return out;
}

// A regular spectrum is "holomorphic" when, reading values in descending
// order, every positive sign precedes every negative sign.
inline bool is_holomorphic_pattern(const SignedSpectrum& s) {
    s.require_regular(0.0, "is_holomorphic_pattern");
    const auto& signs = s.signs();
    for (std::size_t i = 0; i + 1 < signs.size(); ++i)
        if (signs[i] < signs[i + 1]) return false;
    return true;
}

// ───────────────────────── lattice enumeration ───────────────────────────

namespace detail {

// Key used to deduplicate and order enumerated spectra: ascending
// lexicographic on (doubled values, then signs).
using SpectrumKey = std::pair<std::vector<long long>, std::vector<int>>;

}  // namespace detail

// All small spectra with values on the given lattice inside the window that
// satisfy check_ggp against big.  Ties between a small lattice value and a
// big value are exact equalities here and may sit on either side, matching
// the tolerance semantics of check_ggp.  Results are ordered ascending
// lexicographically by (values, signs).
//
// Throws EmptyWindow when the window contains no lattice point at all.
inline std::vector<SignedSpectrum> enumerate_small_spectra(const SignedSpectrum& big,
                                                           Lattice lattice,
                                                           ValueWindow window) {
    big.require_regular(0.0, "enumerate_small_spectra: big");
    const auto points = doubled_points_in(window, lattice);  // descending
    if (points.empty())
        throw EmptyWindow("enumerate_small_spectra: window [" + std::to_string(window.lo) +
                          ", " + std::to_string(window.hi) + "] contains no point of " +
                          lattice_to_string(lattice));

    const auto patterns = enumerate_sign_patterns(big.signs());
    std::set<detail::SpectrumKey> found;

    // For one pattern, fill the small slots left to right.  Each small slot
    // is bounded above by the previous merged value and below by the value of
    // the next big symbol (ties inclusive); consecutive small values must
    // drop strictly (regularity of the small spectrum).
    for (const auto& pattern : patterns) {
        // lower_bound[k] for merged position k: value of the next big entry
        // at or after position k (-inf past the last big entry).
        const std::size_t m = pattern.size();
        std::vector<double> lower(m + 1, -std::numeric_limits<double>::infinity());
        {
            std::size_t bi = big.size();
            for (std::size_t k = m; k-- > 0;) {
                lower[k] = lower[k + 1];
                if (pattern[k].group == Group::big) lower[k] = big.values()[--bi];
            }
        }
        std::vector<long long> small_vals;
        std::vector<int> small_signs;
        // last_small is the most recent small value on the path: later small
        // values must drop strictly below it (regularity of the small
        // spectrum), even when big values sit in between, while ties against
        // big values are legal on both sides.
        auto dfs = [&](auto&& self, std::size_t k, std::size_t bi, double ub,
                       double last_small) -> void {
            if (k == m) {
                found.emplace(small_vals, small_signs);
                return;
            }
            if (pattern[k].group == Group::big) {
                // Big values are fixed; just verify weak descent.
                const double v = big.values()[bi];
                if (v <= ub) self(self, k + 1, bi + 1, v, last_small);
                return;
            }
            for (long long d : points) {  // descending lattice points
                const double v = from_doubled(d);
                if (v > ub || v >= last_small) continue;
                if (v < lower[k]) break;
                small_vals.push_back(d);
                small_signs.push_back(pattern[k].sign);
                self(self, k + 1, bi, v, v);
                small_vals.pop_back();
                small_signs.pop_back();
            }
        };
        const double inf = std::numeric_limits<double>::infinity();
        dfs(dfs, 0, 0, inf, inf);
    }

    std::vector<SignedSpectrum> out;
    out.reserve(found.size());
    for (const auto& [vals, signs] : found) {
        std::vector<double> v(vals.size());
        std::transform(vals.begin(), vals.end(), v.begin(), from_doubled);
        out.emplace_back(std::move(v), signs);
    }
    return out;
}

// ───────────────────────── discrete parameters ───────────────────────────

// A regular signed spectrum whose values lie on the parity lattice of its
// rank: integers when p+q is odd, half-integers when p+q is even.
struct HarishChandraParameter {
    SignedSpectrum spectrum;
    Lattice lattice;

    static HarishChandraParameter from_spectrum(SignedSpectrum s) {
        s.require_regular(0.0, "HarishChandraParameter");
        const Lattice l = lattice_for_rank(static_cast<int>(s.size()));
        for (double v : s.values()) (void)to_doubled(v, l);  // parity check
        return HarishChandraParameter{std::move(s), l};
    }

    static HarishChandraParameter from_values(std::vector<double> values,
                                              std::vector<int> signs) {
        return from_spectrum(SignedSpectrum(std::move(values), std::move(signs)));
    }

    friend bool operator==(const HarishChandraParameter&,
                           const HarishChandraParameter&) = default;
};

// Discrete branching through the signed interlacing relation: all rank-(n-1)
// parameters inside the window whose spectra interlace the big parameter's
// spectrum.  The small lattice is forced by parity (it is always the other
// lattice), so big and small values never tie exactly.
inline std::vector<HarishChandraParameter> ggp_discrete_branching(
    const HarishChandraParameter& big, ValueWindow window) {
    if (big.spectrum.size() < 2)
        throw RankTooSmall("ggp_discrete_branching: rank must be >= 2");
    const Lattice small_lattice = lattice_for_rank(static_cast<int>(big.spectrum.size()) - 1);
    auto spectra = enumerate_small_spectra(big.spectrum, small_lattice, window);
    std::vector<HarishChandraParameter> out;
    out.reserve(spectra.size());
    for (auto& s : spectra) out.push_back(HarishChandraParameter::from_spectrum(std::move(s)));
    return out;
}

// ───────────────────────── compact branching ─────────────────────────────

namespace detail {

inline void require_weakly_descending(const std::vector<long long>& v, const char* who) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] < v[i + 1])
            throw NotDescending(std::string(who) + ": weights must be weakly descending");
}

}  // namespace detail

// Restriction of the irreducible compact highest weight lambda (length n) to
// rank n-1: multiplicity free, with the branch weights mu exactly those
// satisfying lambda_i >= mu_i >= lambda_{i+1}.  Emitted in descending
// lexicographic order.
inline std::vector<std::vector<long long>> weyl_branching(const std::vector<long long>& lambda) {
    if (lambda.size() < 2)
        throw LengthMismatch("weyl_branching: need at least two weight entries");
    detail::require_weakly_descending(lambda, "weyl_branching");
    const std::size_t m = lambda.size() - 1;
    std::vector<std::vector<long long>> out;
    std::vector<long long> mu(m);
    auto dfs = [&](auto&& self, std::size_t i) -> void {
        if (i == m) {
            out.push_back(mu);
            return;
        }
        for (long long v = lambda[i]; v >= lambda[i + 1]; --v) {
            mu[i] = v;
            self(self, i + 1);
        }
    };
    dfs(dfs, 0);
    return out;
}

// Exact dimension of the irreducible compact representation with highest
// weight lambda:  prod_{i<j} (lambda_i - lambda_j + j - i) / (j - i).
// Computed in 128-bit integer arithmetic with running gcd reduction.
inline unsigned long long weyl_dimension(const std::vector<long long>& lambda) {
    if (lambda.empty()) throw LengthMismatch("weyl_dimension: empty weight");
    detail::require_weakly_descending(lambda, "weyl_dimension");
    using u128 = unsigned __int128;
    auto gcd128 = [](u128 a, u128 b) {
        while (b != 0) {
            const u128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    };
    u128 num = 1, den = 1;
    const std::size_t n = lambda.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            long long f = 0;
            if (__builtin_sub_overflow(lambda[i], lambda[j], &f) ||
                __builtin_add_overflow(f, static_cast<long long>(j - i), &f))
                throw Error("weyl_dimension: weight entries too far apart");
            constexpr u128 u128_max = ~u128{0};
            if (num > u128_max / static_cast<u128>(f) ||
                den > u128_max / static_cast<u128>(j - i))
                throw Error("weyl_dimension: intermediate product overflows 128 bits");
            num *= static_cast<u128>(f);
            den *= static_cast<u128>(j - i);
            const u128 g = gcd128(num, den);
            num /= g;
            den /= g;
        }
    }
    // The product over a full triangle is always integral.
    num /= den;
    if (num > static_cast<u128>(std::numeric_limits<unsigned long long>::max()))
        throw Error("weyl_dimension: result exceeds 64 bits");
    return static_cast<unsigned long long>(num);
}

}  // namespace upq
