// Acceptance gate.
//
// One criterion per line, each checked at its stated tolerance and runtime
// budget; prints [PASS]/[FAIL] with the elapsed time and exits 0 only if
// every criterion passes.  Kept free of any test framework so the gate can
// run standalone in CI pipelines.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "upq/json_io.hpp"
#include "upq/upq.hpp"

using namespace upq;

namespace {

int failures = 0;

void criterion(int num, const std::string& label, double budget_ms,
               const std::function<bool(std::string&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body(note);
    } catch (const std::exception& e) {
        ok = false;
        note = std::string("exception: ") + e.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (ms > budget_ms) {
        ok = false;
        if (!note.empty()) note += "; ";
        note += "over budget (" + std::to_string(static_cast<long long>(budget_ms)) + " ms)";
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << num << ". " << label << "  (" << std::fixed
              << std::setprecision(1) << ms << " ms)";
    if (!ok && !note.empty()) std::cout << "  -- " << note;
    std::cout << "\n";
    if (!ok) ++failures;
}

// ── helpers ─────────────────────────────────────────────────────────────────

// All weakly descending integer weights of the given rank with entries in
// [lo, hi], for the exhaustive conservation sweep.
void descending_weights(int rank, long long lo, long long hi, std::vector<long long>& prefix,
                        const std::function<void(const std::vector<long long>&)>& emit) {
    if (static_cast<int>(prefix.size()) == rank) {
        emit(prefix);
        return;
    }
    const long long top = prefix.empty() ? hi : prefix.back();
    for (long long v = top; v >= lo; --v) {
        prefix.push_back(v);
        descending_weights(rank, lo, hi, prefix, emit);
        prefix.pop_back();
    }
}

using Key = std::pair<std::vector<long long>, std::vector<int>>;

Key key_of(const SignedSpectrum& s, Lattice l) {
    std::vector<long long> doubled;
    for (double v : s.values()) doubled.push_back(to_doubled(v, l));
    return {std::move(doubled), s.signs()};
}

// Independent brute force for criterion 4: every candidate small spectrum on
// the lattice inside the window, filtered pointwise by check_ggp.
std::set<Key> brute_force_members(const SignedSpectrum& big, Lattice l, ValueWindow w) {
    const Signature sig = big.signature();
    const int m = sig.p + sig.q - 1;
    std::vector<long long> pts = doubled_points_in(w, l);  // descending
    std::set<Key> out;
    std::vector<long long> pick;
    std::function<void(std::size_t)> choose = [&](std::size_t from) {
        if (static_cast<int>(pick.size()) == m) {
            std::vector<double> values;
            for (long long d : pick) values.push_back(from_doubled(d));
            const int masks = 1 << m;
            for (int mask = 0; mask < masks; ++mask) {
                std::vector<int> signs;
                int plus = 0;
                for (int i = 0; i < m; ++i) {
                    const bool pos = mask & (1 << i);
                    signs.push_back(pos ? +1 : -1);
                    plus += pos ? 1 : 0;
                }
                if (plus != sig.p) continue;
                const SignedSpectrum cand(values, signs);
                if (check_ggp(big, cand)) out.insert(key_of(cand, l));
            }
            return;
        }
        for (std::size_t i = from; i < pts.size(); ++i) {
            pick.push_back(pts[i]);
            choose(i + 1);
            pick.pop_back();
        }
    };
    choose(0);
    return out;
}

SignedSpectrum random_big(RandomStream& rng, int p, int q, bool integral) {
    const int n = p + q;
    std::vector<int> signs;
    for (int i = 0; i < n; ++i) signs.push_back(i < p ? +1 : -1);
    for (std::size_t i = signs.size(); i > 1; --i)
        std::swap(signs[i - 1], signs[static_cast<std::size_t>(rng.uniform01() * i)]);
    std::vector<double> values;
    while (values.size() < static_cast<std::size_t>(n)) {
        double v = 8.0 * rng.uniform01() - 4.0;
        if (integral) v = std::nearbyint(v);
        const bool clash = std::any_of(values.begin(), values.end(), [&](double w) {
            return std::abs(w - v) < (integral ? 0.5 : 0.05);
        });
        if (!clash) values.push_back(v);
    }
    std::sort(values.rbegin(), values.rend());
    return SignedSpectrum(std::move(values), signs);
}

// The unique merged pattern of a holomorphic big sign list:
// (small+ big+)^p (big- small-)^(q-1) big-.
std::vector<Symbol> holomorphic_pattern(int p, int q) {
    std::vector<Symbol> out;
    for (int i = 0; i < p; ++i) {
        out.push_back(Symbol{+1, Group::small});
        out.push_back(Symbol{+1, Group::big});
    }
    for (int i = 0; i < q - 1; ++i) {
        out.push_back(Symbol{-1, Group::big});
        out.push_back(Symbol{-1, Group::small});
    }
    out.push_back(Symbol{-1, Group::big});
    return out;
}

// Criterion 6/9: the three forward experiments, JSON-serialized.
std::string run_forward_experiments(std::uint64_t& elliptic, std::uint64_t& fail,
                                    std::uint64_t& trials) {
    const std::vector<SignedSpectrum> bigs = {
        SignedSpectrum({2, 1}, {+1, -1}),
        SignedSpectrum({3, 1, 0}, {+1, +1, -1}),
        SignedSpectrum({4, 2, 1, -1}, {+1, -1, +1, -1}),
    };
    std::string json;
    for (const auto& big : bigs) {
        const ProjectionReport r = sample_projection_experiment(big, 1000, 0.5, 2026);
        elliptic += r.elliptic;
        fail += r.interlacing_fail;
        trials += r.trials;
        json += projection_report_to_json(r).dump() + "\n";
    }
    return json;
}

// Criterion 7/9: the constructive sweep.  For each big, every enumerated
// member in the window must be FOUND below the objective tolerance and every
// other valid-signature lattice candidate NOT_FOUND.
std::string run_backward_sweep(bool& ok, std::string& note) {
    const std::vector<SignedSpectrum> bigs = {SignedSpectrum({2, 1}, {+1, -1}),
                                              SignedSpectrum({3, 1, 0}, {+1, +1, -1})};
    std::string json;
    std::uint64_t search_index = 0;
    for (const auto& big : bigs) {
        const double lo = big.values().back() - 2.0, hi = big.values().front() + 2.0;
        const ValueWindow w(lo, hi);
        const auto members = enumerate_small_spectra(big, Lattice::integer, w);
        std::set<Key> member_keys;
        for (const auto& m : members) member_keys.insert(key_of(m, Lattice::integer));

        // All valid-signature candidates on the lattice in the window.
        const std::set<Key> all = [&] {
            std::set<Key> out;
            const Signature sig = big.signature();
            const int m = sig.p + sig.q - 1;
            const auto pts = doubled_points_in(w, Lattice::integer);
            std::vector<long long> pick;
            std::function<void(std::size_t)> choose = [&](std::size_t from) {
                if (static_cast<int>(pick.size()) == m) {
                    const int masks = 1 << m;
                    for (int mask = 0; mask < masks; ++mask) {
                        std::vector<int> signs;
                        int plus = 0;
                        for (int i = 0; i < m; ++i) {
                            const bool pos = mask & (1 << i);
                            signs.push_back(pos ? +1 : -1);
                            plus += pos ? 1 : 0;
                        }
                        if (plus == sig.p) out.insert({pick, signs});
                    }
                    return;
                }
                for (std::size_t i = from; i < pts.size(); ++i) {
                    pick.push_back(pts[i]);
                    choose(i + 1);
                    pick.pop_back();
                }
            };
            choose(0);
            return out;
        }();

        for (const Key& cand : all) {
            std::vector<double> values;
            for (long long d : cand.first) values.push_back(from_doubled(d));
            const SignedSpectrum target(values, cand.second);
            SearchConfig cfg;
            cfg.seed = 7000 + search_index++;
            const SearchResult r = find_preimage(big, target, cfg);
            json += search_result_to_json(r).dump() + "\n";
            const bool is_member = member_keys.count(cand) > 0;
            if (is_member && (r.status != SearchStatus::found || !(r.objective < 1e-6))) {
                ok = false;
                note = "member " + spectrum_to_json_exact(target).dump() + " not found";
            }
            if (!is_member && r.status != SearchStatus::not_found) {
                ok = false;
                note = "non-member " + spectrum_to_json_exact(target).dump() + " reported found";
            }
        }
    }
    return json;
}

}  // namespace

int main() {
    std::string json6, json7;  // retained for the determinism criterion

    criterion(1, "eight-pair fidelity: table and XOR law on all 16 ordered pairs", 1.0,
              [&](std::string&) {
                  const std::set<std::pair<std::string, std::string>> allowed = {
                      {"(+)", "+"}, {"+", "(+)"}, {"-", "(-)"}, {"(-)", "-"},
                      {"+", "-"},   {"-", "+"},   {"(+)", "(-)"}, {"(-)", "(+)"}};
                  const std::vector<Symbol> symbols = {Symbol{+1, Group::big},
                                                       Symbol{-1, Group::big},
                                                       Symbol{+1, Group::small},
                                                       Symbol{-1, Group::small}};
                  for (Symbol a : symbols)
                      for (Symbol b : symbols) {
                          const bool in_table = allowed.count({to_text(a), to_text(b)}) > 0;
                          const bool xor_law = (a.sign == b.sign) != (a.group == b.group);
                          if (pair_allowed(a, b) != in_table) return false;
                          if (pair_allowed(a, b) != xor_law) return false;
                      }
                  return true;
              });

    criterion(2, "classical interlacing: 1000 random Hermitian 5x5 corner projections at 1e-8",
              5000.0, [&](std::string& note) {
                  std::uint64_t pass = 0;
                  for (std::uint64_t k = 0; k < 10; ++k) {
                      RandomStream rng(1000 + k);
                      std::vector<double> lambda;
                      for (int i = 0; i < 5; ++i) lambda.push_back(10.0 * rng.uniform01() - 5.0);
                      std::sort(lambda.rbegin(), lambda.rend());
                      const ProjectionReport r = cauchy_matrix_experiment(lambda, 100, k, 1e-8);
                      pass += r.interlacing_pass;
                  }
                  if (pass != 1000) note = std::to_string(1000 - pass) + " projections failed";
                  return pass == 1000;
              });

    criterion(3, "Weyl conservation: exhaustive ranks 2-4, entries in [0,5], exact integers",
              10000.0, [&](std::string& note) {
                  bool ok = true;
                  for (int rank = 2; rank <= 4 && ok; ++rank) {
                      std::vector<long long> prefix;
                      descending_weights(rank, 0, 5, prefix, [&](const std::vector<long long>& l) {
                          unsigned long long sum = 0;
                          for (const auto& mu : weyl_branching(l)) sum += weyl_dimension(mu);
                          if (sum != weyl_dimension(l)) {
                              ok = false;
                              note = "conservation failed at rank " + std::to_string(rank);
                          }
                      });
                  }
                  return ok;
              });

    criterion(4, "enumeration oracle: 50 random bigs (p+q <= 4) equal brute-force filtering",
              30000.0, [&](std::string& note) {
                  RandomStream rng(4004);
                  const std::vector<std::pair<int, int>> sigs = {{1, 1}, {2, 1}, {1, 2},
                                                                 {2, 2}, {3, 1}, {1, 3}};
                  for (int rep = 0; rep < 50; ++rep) {
                      const auto [p, q] = sigs[rep % sigs.size()];
                      const SignedSpectrum big = random_big(rng, p, q, rep % 2 == 0);
                      const long long a = -6 + static_cast<long long>(rng.uniform01() * 9.0);
                      const long long width = 1 + static_cast<long long>(rng.uniform01() * 8.0);
                      const ValueWindow w(static_cast<double>(a), static_cast<double>(a + width));
                      const auto got = enumerate_small_spectra(big, Lattice::integer, w);
                      std::set<Key> got_keys;
                      for (const auto& s : got) got_keys.insert(key_of(s, Lattice::integer));
                      if (got_keys != brute_force_members(big, Lattice::integer, w)) {
                          note = "mismatch at rep " + std::to_string(rep);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(5, "holomorphic closure: unique pattern and holomorphic branches for p,q <= 3",
              1000.0, [&](std::string& note) {
                  for (int p = 1; p <= 3; ++p)
                      for (int q = 1; q <= 3; ++q) {
                          const int n = p + q;
                          std::vector<double> values;
                          std::vector<int> signs;
                          for (int i = 0; i < n; ++i) {
                              values.push_back(static_cast<double>(n - i));
                              signs.push_back(i < p ? +1 : -1);
                          }
                          const SignedSpectrum big(values, signs);
                          const auto patterns = enumerate_sign_patterns(big.signs());
                          if (patterns.size() != 1 || patterns[0] != holomorphic_pattern(p, q)) {
                              note = "pattern not unique at p=" + std::to_string(p) +
                                     " q=" + std::to_string(q);
                              return false;
                          }
                          const auto smalls = enumerate_small_spectra(
                              big, Lattice::integer, ValueWindow(-1.0, n + 1.0));
                          if (smalls.empty()) {
                              note = "no branches at p=" + std::to_string(p) +
                                     " q=" + std::to_string(q);
                              return false;
                          }
                          for (const auto& s : smalls)
                              if (!is_holomorphic_pattern(s)) {
                                  note = "non-holomorphic branch at p=" + std::to_string(p) +
                                         " q=" + std::to_string(q);
                                  return false;
                              }
                      }
                  return true;
              });

    criterion(6, "forward experiments: 3 bigs x 1000 trials, fail == 0 and elliptic >= 950/1000",
              60000.0, [&](std::string& note) {
                  std::uint64_t elliptic = 0, fail = 0, trials = 0;
                  json6 = run_forward_experiments(elliptic, fail, trials);
                  if (fail != 0) note = std::to_string(fail) + " interlacing failures";
                  // >= 950 of each 1000; the aggregate bound below is implied
                  // by the per-experiment bounds checked here via the minimum.
                  bool rate_ok = true;
                  std::size_t pos = 0;
                  for (int i = 0; i < 3; ++i) {
                      const std::size_t end = json6.find('\n', pos);
                      const Json r = Json::parse(json6.substr(pos, end - pos));
                      if (r.at("elliptic").get<std::uint64_t>() < 950) rate_ok = false;
                      pos = end + 1;
                  }
                  if (!rate_ok) note += std::string(note.empty() ? "" : "; ") + "elliptic < 950";
                  return fail == 0 && rate_ok && trials == 3000;
              });

    criterion(7,
              "constructive search: members FOUND below 1e-6, lattice non-members NOT_FOUND",
              300000.0, [&](std::string& note) {
                  bool ok = true;
                  json7 = run_backward_sweep(ok, note);
                  return ok;
              });

    criterion(8, "parity rule: branching emits the opposite lattice and rejects wrong input",
              1000.0, [&](std::string& note) {
                  const std::vector<std::pair<int, int>> sigs = {{1, 1}, {2, 1}, {2, 2}};
                  for (const auto& [p, q] : sigs) {
                      const int n = p + q;
                      const Lattice big_lat = lattice_for_rank(n);
                      const double offset = big_lat == Lattice::half_integer ? 0.5 : 0.0;
                      std::vector<double> values;
                      std::vector<int> signs;
                      for (int i = 0; i < n; ++i) {
                          values.push_back(static_cast<double>(n - i) + offset);
                          signs.push_back(i < p ? +1 : -1);
                      }
                      const auto big = HarishChandraParameter::from_values(values, signs);
                      const auto branches = ggp_discrete_branching(
                          big, ValueWindow(values.back() - 2.0, values.front() + 2.0));
                      if (branches.empty()) {
                          note = "no branches at (" + std::to_string(p) + "," + std::to_string(q) +
                                 ")";
                          return false;
                      }
                      const Lattice small_lat = lattice_for_rank(n - 1);
                      for (const auto& b : branches) {
                          if (b.lattice != small_lat) {
                              note = "wrong output lattice";
                              return false;
                          }
                          for (double v : b.spectrum.values()) to_doubled(v, small_lat);  // throws
                      }
                      // Wrong-parity inputs must be rejected at construction.
                      std::vector<double> off = values;
                      for (double& v : off) v += 0.5;
                      try {
                          HarishChandraParameter::from_values(off, signs);
                          note = "wrong-parity input accepted";
                          return false;
                      } catch (const LatticeViolation&) {
                      }
                  }
                  return true;
              });

    criterion(9, "determinism: repeated forward experiments and searches are byte-identical",
              360000.0, [&](std::string& note) {
                  std::uint64_t elliptic = 0, fail = 0, trials = 0;
                  const std::string again6 = run_forward_experiments(elliptic, fail, trials);
                  bool ok7 = true;
                  std::string sweep_note;
                  const std::string again7 = run_backward_sweep(ok7, sweep_note);
                  if (again6 != json6) note = "forward experiments differ";
                  if (again7 != json7)
                      note += std::string(note.empty() ? "" : "; ") + "searches differ";
                  return again6 == json6 && again7 == json7;
              });

    if (failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << failures << " criterion(s) failed\n";
    return 1;
}
