#pragma once

// Signed spectra and interlacing checks.
//
// A *signed spectrum* models the invariant data of a regular elliptic element
// of the indefinite unitary Lie algebra u(p,q): a strictly descending list of
// real numbers (the eigenvalues of -i X) together with a sign for each, +1
// when the invariant Hermitian form is positive definite on the eigenline and
// -1 when it is negative definite.  The multiset of signs determines the
// signature: p positives, q negatives.
//
// Two such spectra — a "big" one of signature (p,q) and a "small" one of
// signature (p,q-1) — stand in the *signed interlacing relation* when the two
// value lists can be merged into one weakly descending sequence, preserving
// the internal order of each list, such that every adjacent pair of merged
// symbols is one of the eight allowed types below.  Writing +/- for big signs
// and (+)/(-) for small signs, the allowed adjacent ordered pairs are
//
//     (+)+   +(+)   -(-)   (-)-   +-   -+   (+)(-)   (-)(+)
//
// i.e. equal signs must alternate between the two spectra, and opposite signs
// must either stay inside one spectrum or sit on small symbols.  Compactly:
// a pair is allowed exactly when (same sign) XOR (same spectrum).
//
// This condition characterises which small spectra arise by deleting the last
// row and column (the distinguished negative slot) from matrices in the
// conjugation orbit of the big spectrum's diagonal model; the matrix side
// lives in matrix_lab.hpp.  Values produced by such projections can tie with
// big values only up to numerical resolution, so merges treat cross-spectrum
// ties within a caller tolerance as reorderable, while a near-tie *inside*
// one spectrum means the spectrum fails its regularity precondition.
//
// The classical unsigned counterpart (Hermitian corner deletion) is
// check_cauchy: lambda and mu interlace as
//     lambda_1 >= mu_1 >= lambda_2 >= ... >= mu_{n-1} >= lambda_n.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "upq/errors.hpp"

namespace upq {

// Default numerical tolerance for tie/regularity decisions on spectra that
// came out of floating-point eigensolves.
inline constexpr double kDefaultTol = 1e-9;

// ───────────────────────── symbols and the pair rule ─────────────────────

enum class Group : unsigned char { big, small };

struct Symbol {
    int sign;     // +1 or -1
    Group group;  // which spectrum the symbol belongs to

    friend constexpr bool operator==(Symbol, Symbol) = default;
};

// The eight-pair rule in closed form: an adjacent ordered pair of merged
// symbols is allowed iff (equal signs) XOR (same spectrum).  The relation is
// symmetric, so order within the pair does not matter.
constexpr bool pair_allowed(Symbol a, Symbol b) {
    return (a.sign == b.sign) != (a.group == b.group);
}

// Signature of a spectrum or form: p positive slots, q negative slots.
struct Signature {
    int p = 0;
    int q = 0;

    friend constexpr bool operator==(Signature, Signature) = default;
};

// ───────────────────────── signed spectra ────────────────────────────────

class SignedSpectrum {
public:
    // values must be finite and weakly descending; signs are +1/-1, one per
    // value; both lists non-empty and of equal length.
    SignedSpectrum(std::vector<double> values, std::vector<int> signs)
        : values_(std::move(values)), signs_(std::move(signs)) {
        if (values_.empty())
            throw LengthMismatch("SignedSpectrum: empty value list");
        if (values_.size() != signs_.size())
            throw LengthMismatch("SignedSpectrum: " + std::to_string(values_.size()) +
                                 " values vs " + std::to_string(signs_.size()) + " signs");
        for (double v : values_)
            if (!std::isfinite(v))
                throw Error("SignedSpectrum: non-finite value");
        for (std::size_t i = 0; i + 1 < values_.size(); ++i)
            if (values_[i] < values_[i + 1])
                throw NotDescending("SignedSpectrum: values must be weakly descending");
        for (int s : signs_)
            if (s != 1 && s != -1)
                throw Error("SignedSpectrum: signs must be +1 or -1, got " + std::to_string(s));
    }

    const std::vector<double>& values() const { return values_; }
    const std::vector<int>& signs() const { return signs_; }
    std::size_t size() const { return values_.size(); }

    Signature signature() const {
        Signature sig;
        for (int s : signs_) (s > 0 ? sig.p : sig.q)++;
        return sig;
    }

    // Smallest descent step between consecutive values (+inf when size 1).
    double min_gap() const {
        double g = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < values_.size(); ++i)
            g = std::min(g, values_[i] - values_[i + 1]);
        return g;
    }

    // Regular at tolerance tol: strictly descending, and no gap below tol.
    bool is_regular(double tol = 0.0) const {
        const double g = min_gap();
        return g > 0.0 && g >= tol;
    }

    void require_regular(double tol, const char* who) const {
        if (!is_regular(tol))
            throw NonRegular(std::string(who) + ": spectrum has a gap below tolerance (min gap " +
                             std::to_string(min_gap()) + ", tol " + std::to_string(tol) + ")");
    }

    // The spectrum's symbols, tagged as belonging to `g`.
    std::vector<Symbol> symbols(Group g) const {
        std::vector<Symbol> out;
        out.reserve(signs_.size());
        for (int s : signs_) out.push_back(Symbol{s, g});
        return out;
    }

    friend bool operator==(const SignedSpectrum&, const SignedSpectrum&) = default;

private:
    std::vector<double> values_;
    std::vector<int> signs_;
};

// ───────────────────────── pattern text form ─────────────────────────────
//
// ASCII on output: big symbols render as "+" / "-", small as "(+)" / "(-)".
// Input additionally accepts the circled forms U+2295 (+) and U+2296 (-) for
// small symbols, U+2212 as a big minus, and ignores spaces and commas.

inline std::string to_text(Symbol s) {
    if (s.group == Group::big) return s.sign > 0 ? "+" : "-";
    return s.sign > 0 ? "(+)" : "(-)";
}

inline std::string pattern_to_text(const std::vector<Symbol>& pattern) {
    std::string out;
    for (Symbol s : pattern) out += to_text(s);
    return out;
}

inline std::vector<Symbol> parse_pattern(std::string_view text) {
    std::vector<Symbol> out;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw Error("parse_pattern: " + why + " at byte " + std::to_string(i) +
                    " of \"" + std::string(text) + "\"");
    };
    while (i < text.size()) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (c == ' ' || c == ',' || c == '\t') {
            ++i;
        } else if (c == '+') {
            out.push_back(Symbol{+1, Group::big});
            ++i;
        } else if (c == '-') {
            out.push_back(Symbol{-1, Group::big});
            ++i;
        } else if (c == '(') {
            if (i + 2 >= text.size() || text[i + 2] != ')') fail("unterminated parenthesis");
            const char inner = text[i + 1];
            if (inner == '+') out.push_back(Symbol{+1, Group::small});
            else if (inner == '-') out.push_back(Symbol{-1, Group::small});
            else fail("expected (+) or (-)");
            i += 3;
        } else if (c == 0xE2 && i + 2 < text.size() &&
                   static_cast<unsigned char>(text[i + 1]) == 0x8A &&
                   static_cast<unsigned char>(text[i + 2]) == 0x95) {
            out.push_back(Symbol{+1, Group::small});  // circled plus
            i += 3;
        } else if (c == 0xE2 && i + 2 < text.size() &&
                   static_cast<unsigned char>(text[i + 1]) == 0x8A &&
                   static_cast<unsigned char>(text[i + 2]) == 0x96) {
            out.push_back(Symbol{-1, Group::small});  // circled minus
            i += 3;
        } else if (c == 0xE2 && i + 2 < text.size() &&
                   static_cast<unsigned char>(text[i + 1]) == 0x88 &&
                   static_cast<unsigned char>(text[i + 2]) == 0x92) {
            out.push_back(Symbol{-1, Group::big});  // typographic minus
            i += 3;
        } else {
            fail("unrecognized character");
        }
    }
    return out;
}

// ───────────────────────── merged sequences ──────────────────────────────

struct MergedEntry {
    double value;
    Symbol symbol;

    friend bool operator==(const MergedEntry&, const MergedEntry&) = default;
};

using MergedSequence = std::vector<MergedEntry>;

inline bool all_pairs_allowed(const MergedSequence& seq) {
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (!pair_allowed(seq[i].symbol, seq[i + 1].symbol)) return false;
    return true;
}

namespace detail {

// Preconditions shared by check_ggp and merge_candidates: small must have
// signature (p, q-1) relative to big's (p, q), and both spectra must be
// regular at the working tolerance.
inline void require_interlacing_inputs(const SignedSpectrum& big,
                                       const SignedSpectrum& small,
                                       double tol) {
    const Signature b = big.signature();
    const Signature s = small.signature();
    if (b.q < 1)
        throw SignatureMismatch("interlacing: big spectrum needs at least one negative sign");
    if (s.p != b.p || s.q != b.q - 1)
        throw SignatureMismatch("interlacing: small signature (" + std::to_string(s.p) + "," +
                                std::to_string(s.q) + ") is not (" + std::to_string(b.p) + "," +
                                std::to_string(b.q - 1) + ")");
    big.require_regular(tol, "interlacing: big");
    small.require_regular(tol, "interlacing: small");
}

// May `next` follow `prev` in a merge?  Weak descent always qualifies; an
// ascent below tol qualifies only across spectra (a reordered numerical tie).
inline bool merge_step_ok(const MergedEntry& prev, const MergedEntry& next, double tol) {
    if (next.value <= prev.value) return true;
    return prev.symbol.group != next.symbol.group && next.value - prev.value < tol;
}

// Depth-first search over interleavings.  `Emit` receives each complete
// merge and returns true to stop the search early.
template <typename Emit>
bool merge_dfs(const std::vector<MergedEntry>& big, const std::vector<MergedEntry>& small,
               double tol, bool require_pairs, MergedSequence& prefix, std::size_t i,
               std::size_t j, Emit&& emit) {
    if (i == big.size() && j == small.size()) return emit(prefix);
    auto try_take = [&](const MergedEntry& e, std::size_t& idx) {
        if (!prefix.empty()) {
            if (!merge_step_ok(prefix.back(), e, tol)) return false;
            if (require_pairs && !pair_allowed(prefix.back().symbol, e.symbol)) return false;
        }
        prefix.push_back(e);
        ++idx;
        const bool done = merge_dfs(big, small, tol, require_pairs, prefix, i, j,
                                    std::forward<Emit>(emit));
        --idx;
        prefix.pop_back();
        return done;
    };
    if (i < big.size() && try_take(big[i], i)) return true;
    if (j < small.size() && try_take(small[j], j)) return true;
    return false;
}

inline std::vector<MergedEntry> tag_entries(const SignedSpectrum& s, Group g) {
    std::vector<MergedEntry> out;
    out.reserve(s.size());
    for (std::size_t k = 0; k < s.size(); ++k)
        out.push_back(MergedEntry{s.values()[k], Symbol{s.signs()[k], g}});
    return out;
}

}  // namespace detail

// All weakly descending merges of the two spectra (cross-spectrum ties within
// tol may be ordered either way; the internal order of each spectrum is
// fixed).  Candidates are *not* filtered by the pair rule.  At each step the
// big entry is tried before the small one, which fixes the output order.
inline std::vector<MergedSequence> merge_candidates(const SignedSpectrum& big,
                                                    const SignedSpectrum& small,
                                                    double tol = kDefaultTol) {
    detail::require_interlacing_inputs(big, small, tol);
    const auto b = detail::tag_entries(big, Group::big);
    const auto s = detail::tag_entries(small, Group::small);
    std::vector<MergedSequence> out;
    MergedSequence prefix;
    prefix.reserve(b.size() + s.size());
    detail::merge_dfs(b, s, tol, /*require_pairs=*/false, prefix, 0, 0,
                      [&](const MergedSequence& m) {
                          out.push_back(m);
                          return false;  // keep enumerating
                      });
    return out;
}

// The signed interlacing relation: true iff some weakly descending merge has
// every adjacent symbol pair allowed.  Equivalent to scanning the output of
// merge_candidates with all_pairs_allowed, but prunes disallowed pairs during
// the search.
inline bool check_ggp(const SignedSpectrum& big, const SignedSpectrum& small,
                      double tol = kDefaultTol) {
    detail::require_interlacing_inputs(big, small, tol);
    const auto b = detail::tag_entries(big, Group::big);
    const auto s = detail::tag_entries(small, Group::small);
    MergedSequence prefix;
    prefix.reserve(b.size() + s.size());
    return detail::merge_dfs(b, s, tol, /*require_pairs=*/true, prefix, 0, 0,
                             [](const MergedSequence&) { return true; });
}

// ───────────────────────── classical interlacing ─────────────────────────

// Cauchy interlacing for Hermitian corner deletion: with lambda of length n
// and mu of length n-1, checks
//     lambda_1 >= mu_1 >= lambda_2 >= ... >= mu_{n-1} >= lambda_n
// with every inequality slackened by tol.  Both inputs must themselves be
// weakly descending (within tol).
inline bool check_cauchy(const std::vector<double>& lambda, const std::vector<double>& mu,
                         double tol = 0.0) {
    if (lambda.size() < 2)
        throw LengthMismatch("check_cauchy: lambda needs at least two entries");
    if (mu.size() + 1 != lambda.size())
        throw LengthMismatch("check_cauchy: expected " + std::to_string(lambda.size() - 1) +
                             " mu entries, got " + std::to_string(mu.size()));
    auto require_descending = [&](const std::vector<double>& v, const char* name) {
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            if (v[i + 1] > v[i] + tol)
                throw NotDescending(std::string("check_cauchy: ") + name +
                                    " is not weakly descending");
    };
    require_descending(lambda, "lambda");
    require_descending(mu, "mu");
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (mu[i] > lambda[i] + tol || lambda[i + 1] > mu[i] + tol) return false;
    return true;
}

}  // namespace upq
