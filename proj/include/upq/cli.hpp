#pragma once

// Command-line front end.
//
// One subcommand per library entry point; see README.md for a tour.  Exit
// codes: 0 success (and affirmative verdicts), 1 negative verdict (relation
// fails / target not found / experiment saw interlacing failures), 2 usage
// or input error, 3 numeric failure (form residual or eigensolver).
//
// Output goes to stdout as human-readable text, or as a JSON document with
// --json; --out FILE redirects the payload to a file.

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "upq/json_io.hpp"

namespace upq {
namespace cli {

namespace detail {

inline double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw Error("expected a number, got \"" + s + "\"");
    }
    if (used != s.size()) throw Error("trailing characters in number \"" + s + "\"");
    return v;
}

inline std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = s.find(',', start);
        parts.push_back(s.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return parts;
}

inline std::vector<double> parse_csv_doubles(const std::string& s) {
    std::vector<double> out;
    for (const auto& part : split_csv(s)) out.push_back(parse_double(part));
    return out;
}

inline std::vector<long long> parse_csv_longs(const std::string& s) {
    std::vector<long long> out;
    for (const auto& part : split_csv(s)) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(part, &used);
        } catch (const std::exception&) {
            throw Error("expected an integer, got \"" + part + "\"");
        }
        if (used != part.size()) throw Error("trailing characters in integer \"" + part + "\"");
        out.push_back(v);
    }
    return out;
}

inline ValueWindow parse_window(const std::string& s) {
    const std::size_t colon = s.find(':', 1);  // offset 1: lo may start with '-'
    if (colon == std::string::npos)
        throw Error("expected a window of the form lo:hi, got \"" + s + "\"");
    return ValueWindow(parse_double(s.substr(0, colon)), parse_double(s.substr(colon + 1)));
}

inline SignedSpectrum parse_spectrum(const std::string& s) {
    return spectrum_from_json(Json::parse(s));
}

// Big sign lists arrive as bare pattern text like "+-+".
inline std::vector<int> parse_big_signs(const std::string& s) {
    std::vector<int> out;
    for (Symbol sym : parse_pattern(s)) {
        if (sym.group != Group::big)
            throw Error("big sign list must use only + and -, got \"" + s + "\"");
        out.push_back(sym.sign);
    }
    return out;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"signed interlacing of indefinite-unitary coadjoint projections"};
    app.name("upq");
    app.require_subcommand(1);

    int code = 0;  // semantic exit code set by the executed subcommand

    // Options shared by every subcommand (registered per-subcommand so they
    // may appear after the subcommand name).
    bool as_json = false;
    std::string out_path;
    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", as_json, "emit a JSON document instead of text");
        sub->add_option("--out", out_path, "write the output to FILE instead of stdout");
    };
    auto finish = [&](const Json& payload, const std::string& human) {
        const std::string text = as_json ? payload.dump(2) + "\n" : human;
        if (out_path.empty()) {
            out << text;
        } else {
            std::ofstream file(out_path);
            if (!file) throw Error("cannot open --out file \"" + out_path + "\"");
            file << text;
        }
    };

    // ── check-ggp ────────────────────────────────────────────────────────
    {
        auto* sub = app.add_subcommand("check-ggp",
                                       "test the signed interlacing relation between two spectra");
        auto big = std::make_shared<std::string>();
        auto small = std::make_shared<std::string>();
        auto tol = std::make_shared<double>(kDefaultTol);
        sub->add_option("--big", *big, "big spectrum, JSON")->required();
        sub->add_option("--small", *small, "small spectrum, JSON")->required();
        sub->add_option("--tol", *tol, "tie/regularity tolerance");
        add_common(sub);
        sub->callback([&, big, small, tol] {
            const bool ok = check_ggp(detail::parse_spectrum(*big),
                                      detail::parse_spectrum(*small), *tol);
            finish(Json{{"interlaces", ok}}, ok ? "true\n" : "false\n");
            code = ok ? 0 : 1;
        });
    }

    // ── check-cauchy ─────────────────────────────────────────────────────
    {
        auto* sub = app.add_subcommand("check-cauchy",
                                       "test classical interlacing of two descending lists");
        auto lambda = std::make_shared<std::string>();
        auto mu = std::make_shared<std::string>();
        auto tol = std::make_shared<double>(kDefaultTol);
        sub->add_option("--lambda", *lambda, "big list, comma separated")->required();
        sub->add_option("--mu", *mu, "small list, comma separated")->required();
        sub->add_option("--tol", *tol, "slack on every inequality");
        add_common(sub);
        sub->callback([&, lambda, mu, tol] {
            const bool ok = check_cauchy(detail::parse_csv_doubles(*lambda),
                                         detail::parse_csv_doubles(*mu), *tol);
            finish(Json{{"interlaces", ok}}, ok ? "true\n" : "false\n");
            code = ok ? 0 : 1;
        });
    }

    // ── patterns ─────────────────────────────────────────────────────────
    {
        auto* sub = app.add_subcommand("patterns",
                                       "enumerate merged sign patterns for a big sign list");
        auto signs = std::make_shared<std::string>();
        sub->add_option("--signs", *signs, "big signs as pattern text, e.g. \"+-+\"")->required();
        add_common(sub);
        sub->callback([&, signs] {
            const auto patterns = enumerate_sign_patterns(detail::parse_big_signs(*signs));
            Json arr = Json::array();
            std::string human;
            for (const auto& p : patterns) {
                const std::string text = pattern_to_text(p);
                arr.push_back(text);
                human += text + "\n";
            }
            finish(Json{{"patterns", std::move(arr)}}, human);
        });
    }

    // ── enumerate ────────────────────────────────────────────────────────
    {
        auto* sub = app.add_subcommand(
            "enumerate", "list lattice spectra in a window that interlace a big spectrum");
        auto big = std::make_shared<std::string>();
        auto lattice = std::make_shared<std::string>();
        auto window = std::make_shared<std::string>();
        sub->add_option("--big", *big, "big spectrum, JSON")->required();
        sub->add_option("--lattice", *lattice, "small lattice: Z or Z+1/2")->required();
        sub->add_option("--window", *window, "value window lo:hi")->required();
        add_common(sub);
        sub->callback([&, big, lattice, window] {
            const auto spectra =
                enumerate_small_spectra(detail::parse_spectrum(*big),
                                        lattice_from_string(*lattice),
                                        detail::parse_window(*window));
            Json arr = Json::array();
            std::string human;
            for (const auto& s : spectra) {
                Json j = spectrum_to_json_exact(s);
                human += j.dump() + "\n";
                arr.push_back(std::move(j));
            }
            finish(Json{{"spectra", std::move(arr)}}, human);
        });
    }

    // ── branch ───────────────────────────────────────────────────────────
    {
        auto* sub = app.add_subcommand(
            "branch", "discrete branching of a lattice parameter through signed interlacing");
        auto hc = std::make_shared<std::string>();
        auto window = std::make_shared<std::string>();
        sub->add_option("--hc", *hc, "big discrete parameter, JSON")->required();
        sub->add_option("--window", *window, "value window lo:hi")->required();
        add_common(sub);
        sub->callback([&, hc, window] {
            const auto branches = ggp_discrete_branching(hc_from_json(Json::parse(*hc)),
                                                         detail::parse_window(*window));
            Json arr = Json::array();
            std::string human;
            for (const auto& b : branches) {
                Json j = hc_to_json(b);
                human += j.dump() + "\n";
                arr.push_back(std::move(j));
            }
            finish(Json{{"parameters", std::move(arr)}}, human);
        });
    }

    // ── weyl ─────────────────────────────────────────────────────────────
    {
        auto* sub = app.add_subcommand("weyl", "compact branching of a highest weight");
        auto lambda = std::make_shared<std::string>();
        sub->add_option("--lambda", *lambda, "weight, comma separated integers")->required();
        add_common(sub);
        sub->callback([&, lambda] {
            const auto weights = weyl_branching(detail::parse_csv_longs(*lambda));
            Json arr = Json::array();
            std::string human;
            for (const auto& w : weights) {
                std::string line;
                for (std::size_t i = 0; i < w.size(); ++i)
                    line += (i ? "," : "") + std::to_string(w[i]);
                human += line + "\n";
                arr.push_back(w);
            }
            finish(Json{{"weights", std::move(arr)}}, human);
        });
    }

    // ── weyl-dim ─────────────────────────────────────────────────────────
    {
        auto* sub = app.add_subcommand("weyl-dim", "exact dimension of a highest weight");
        auto lambda = std::make_shared<std::string>();
        sub->add_option("--lambda", *lambda, "weight, comma separated integers")->required();
        add_common(sub);
        sub->callback([&, lambda] {
            const auto dim = weyl_dimension(detail::parse_csv_longs(*lambda));
            finish(Json{{"dimension", dim}}, std::to_string(dim) + "\n");
        });
    }

    // ── holomorphic ──────────────────────────────────────────────────────
    {
        auto* sub = app.add_subcommand("holomorphic",
                                       "test whether a spectrum has all + signs on top");
        auto spec = std::make_shared<std::string>();
        sub->add_option("--spectrum", *spec, "spectrum, JSON")->required();
        add_common(sub);
        sub->callback([&, spec] {
            const bool ok = is_holomorphic_pattern(detail::parse_spectrum(*spec));
            finish(Json{{"holomorphic", ok}}, ok ? "true\n" : "false\n");
            code = ok ? 0 : 1;
        });
    }

    // ── sample ───────────────────────────────────────────────────────────
    {
        auto* sub = app.add_subcommand(
            "sample", "random conjugation + corner projection experiment against check-ggp");
        auto big = std::make_shared<std::string>();
        auto trials = std::make_shared<std::uint64_t>(100);
        auto scale = std::make_shared<double>(0.5);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto tol = std::make_shared<double>(kDefaultTol);
        auto round = std::make_shared<std::string>();
        sub->add_option("--big", *big, "big spectrum, JSON")->required();
        sub->add_option("--trials", *trials, "number of random conjugations");
        sub->add_option("--scale", *scale, "magnitude of the random algebra elements");
        sub->add_option("--seed", *seed, "master seed");
        sub->add_option("--tol", *tol, "classification tolerance");
        sub->add_option("--round", *round, "round recovered values to a lattice: Z or Z+1/2");
        add_common(sub);
        sub->callback([&, big, trials, scale, seed, tol, round] {
            std::optional<Lattice> round_to;
            if (!round->empty()) round_to = lattice_from_string(*round);
            const ProjectionReport r = sample_projection_experiment(
                detail::parse_spectrum(*big), *trials, *scale, *seed, *tol, round_to);
            std::string human =
                "trials " + std::to_string(r.trials) + "  elliptic " + std::to_string(r.elliptic) +
                "  non-elliptic " + std::to_string(r.non_elliptic) + "  near-degenerate " +
                std::to_string(r.near_degenerate) + "\ninterlacing: pass " +
                std::to_string(r.interlacing_pass) + "  fail " +
                std::to_string(r.interlacing_fail) + "\ndistinct spectra: " +
                std::to_string(r.histogram.size()) + "\n";
            finish(projection_report_to_json(r), human);
            code = r.interlacing_fail == 0 ? 0 : 1;
        });
    }

    // ── cauchy-sample ────────────────────────────────────────────────────
    {
        auto* sub = app.add_subcommand(
            "cauchy-sample", "random Hermitian rotation + corner projection against check-cauchy");
        auto lambda = std::make_shared<std::string>();
        auto trials = std::make_shared<std::uint64_t>(100);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto tol = std::make_shared<double>(1e-8);
        sub->add_option("--lambda", *lambda, "Hermitian spectrum, comma separated")->required();
        sub->add_option("--trials", *trials, "number of random rotations");
        sub->add_option("--seed", *seed, "master seed");
        sub->add_option("--tol", *tol, "interlacing slack");
        add_common(sub);
        sub->callback([&, lambda, trials, seed, tol] {
            const ProjectionReport r = cauchy_matrix_experiment(detail::parse_csv_doubles(*lambda),
                                                                *trials, *seed, *tol);
            std::string human = "trials " + std::to_string(r.trials) + "\ninterlacing: pass " +
                                std::to_string(r.interlacing_pass) + "  fail " +
                                std::to_string(r.interlacing_fail) + "\n";
            finish(projection_report_to_json(r), human);
            code = r.interlacing_fail == 0 ? 0 : 1;
        });
    }

    // ── search ───────────────────────────────────────────────────────────
    {
        auto* sub = app.add_subcommand(
            "search", "look for a conjugation whose corner projection hits a target spectrum");
        auto big = std::make_shared<std::string>();
        auto target = std::make_shared<std::string>();
        auto cfg = std::make_shared<SearchConfig>();
        sub->add_option("--big", *big, "big spectrum, JSON")->required();
        sub->add_option("--target", *target, "target small spectrum, JSON")->required();
        sub->add_option("--restarts", cfg->restarts, "number of search restarts");
        sub->add_option("--max-iters", cfg->max_iters, "iterations per restart");
        sub->add_option("--objective-tol", cfg->objective_tol, "FOUND threshold");
        sub->add_option("--step", cfg->step, "simplex edge and restart spread");
        sub->add_option("--seed", cfg->seed, "master seed");
        add_common(sub);
        sub->callback([&, big, target, cfg] {
            const SignedSpectrum big_spec = detail::parse_spectrum(*big);
            const SearchResult r = find_preimage(big_spec, detail::parse_spectrum(*target), *cfg);
            Json payload = search_result_to_json(r);
            payload["witness"] = nullptr;
            std::string human;
            if (r.status == SearchStatus::found) {
                const SearchWitness w = replay_witness(big_spec, r);
                payload["witness"] = Json{{"theta", w.theta},
                                          {"conjugated", matrix_to_json(w.conjugated)},
                                          {"projected", matrix_to_json(w.projected)},
                                          {"spectrum", spectrum_to_json(w.spectrum)}};
                human = "FOUND  objective " + std::to_string(r.objective) + "  evaluations " +
                        std::to_string(r.evaluations) + "  restart " +
                        std::to_string(r.found_restart) + "\n";
            } else {
                human = "NOT_FOUND  best objective " + std::to_string(r.objective) +
                        "  evaluations " + std::to_string(r.evaluations) + "\n";
            }
            finish(payload, human);
            code = r.status == SearchStatus::found ? 0 : 1;
        });
    }

    // ── parse and map exit codes ─────────────────────────────────────────
    std::vector<std::string> argv_like;
    argv_like.reserve(args.size() + 1);
    argv_like.push_back("upq");
    argv_like.insert(argv_like.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_like.size());
    for (const auto& a : argv_like) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    } catch (const FormViolation& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const EigensolverFailure& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "error: invalid JSON: " << e.what() << "\n";
        return 2;
    }
    return code;
}

}  // namespace cli
}  // namespace upq
