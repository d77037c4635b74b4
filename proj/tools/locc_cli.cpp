// locc: command-line front end for the copyability library.
//
// Exit codes: 0 affirmative / success, 1 negative verdict, 2 input or usage error.

#include <cstdint>
#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "locc/locc.hpp"

namespace {

using locc::Json;

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kInputError = 2;

struct Options {
    locc::NumericConfig config;
    bool pretty = false;
    std::uint64_t seed = 0;
};

void emit(const Json& j, const Options& opt) {
    std::cout << j.dump(opt.pretty ? 2 : -1) << '\n';
}

std::string fixed(double x, int digits = 6) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << x;
    return os.str();
}

Json partial_sum_table(const locc::SchmidtVector& w, const locc::SchmidtVector& v, double sum_tol) {
    const auto n = std::max(w.size(), v.size());
    const auto sw = locc::partial_sums(w, n);
    const auto sv = locc::partial_sums(v, n);
    Json rows = Json::array();
    for (std::size_t k = 0; k < n; ++k) {
        rows.push_back({{"k", k + 1}, {"lhs", sw[k]}, {"rhs", sv[k]}, {"ok", sv[k] <= sw[k] + sum_tol}});
    }
    return rows;
}

void print_table(const Json& rows, const std::string& lhs, const std::string& rhs) {
    std::cout << std::setw(4) << "k" << std::setw(14) << lhs << std::setw(14) << rhs << '\n';
    for (const auto& r : rows) {
        std::cout << std::setw(4) << r.at("k").get<std::size_t>() << std::setw(14) << fixed(r.at("lhs").get<double>())
                  << std::setw(14) << fixed(r.at("rhs").get<double>()) << '\n';
    }
}

int run_majorize(const std::string& w_path, const std::string& v_path, const Options& opt) {
    const auto w = locc::schmidt_from_json(locc::load_document(w_path), "$", opt.config);
    const auto v = locc::schmidt_from_json(locc::load_document(v_path), "$", opt.config);
    const bool result = locc::majorizes(w, v, opt.config);
    const auto rows = partial_sum_table(w, v, opt.config.sum_tol);
    Json out = {{"majorizes", result}, {"partial_sums", rows}};
    const auto failure = locc::majorization_failure(w, v, opt.config);
    out["first_failure"] = failure ? Json(*failure + 1) : Json(nullptr);
    if (opt.pretty) {
        print_table(rows, "sum(w)", "sum(v)");
        std::cout << "w majorizes v: " << (result ? "yes" : "no");
        if (failure) {
            std::cout << " (fails at k=" << *failure + 1 << ")";
        }
        std::cout << '\n';
    } else {
        emit(out, opt);
    }
    return result ? kYes : kNo;
}

int run_catalysis(const std::string& psi_path, const std::string& blank_path, const Options& opt) {
    const auto psi = locc::schmidt_from_json(locc::load_document(psi_path), "$", opt.config);
    const auto blank = locc::schmidt_from_json(locc::load_document(blank_path), "$", opt.config);
    const auto verdict = locc::catalytic_copy_check(psi, blank, opt.config);
    // Direct: psi's sums dominate blank's. Catalytic: psi(x)psi dominates psi(x)blank.
    const auto direct = partial_sum_table(psi, blank, opt.config.sum_tol);
    const auto tensored = partial_sum_table(locc::tensor_product(psi, psi, opt.config),
                                            locc::tensor_product(psi, blank, opt.config), opt.config.sum_tol);
    const Json out = {{"verdict", locc::to_string(verdict)},
                      {"direct_partial_sums", direct},
                      {"tensored_partial_sums", tensored}};
    if (opt.pretty) {
        std::cout << "direct (blank -> psi):\n";
        print_table(direct, "sum(psi)", "sum(blank)");
        std::cout << "tensored (psi blank -> psi psi):\n";
        print_table(tensored, "sum(psi psi)", "sum(psi b)");
        std::cout << "verdict: " << locc::to_string(verdict) << '\n';
    } else {
        emit(out, opt);
    }
    return verdict == locc::CatalysisVerdict::impossible ? kNo : kYes;
}

std::vector<locc::BipartiteState> load_states(const std::vector<std::string>& paths, const Options& opt) {
    std::vector<locc::BipartiteState> states;
    for (const auto& path : paths) {
        const auto doc = locc::load_document(path);
        for (auto& s : locc::states_from_json(doc, path, opt.config)) {
            states.push_back(std::move(s));
        }
    }
    return states;
}

Json pair_check_json(const locc::PairCheck& c) {
    Json out = {{"first", c.first},
                {"second", c.second},
                {"orthogonality", locc::to_string(c.relation)},
                {"overlap", locc::io::complex_to_json(c.overlap)},
                {"copyable", c.copyable},
                {"spectrum", locc::spectrum_to_json(c.spectrum)}};
    out["M"] = c.copyable && c.spectrum.detected_m ? Json(*c.spectrum.detected_m) : Json(nullptr);
    return out;
}

int run_check_pair(const std::vector<std::string>& paths, const Options& opt) {
    const auto states = load_states(paths, opt);
    if (states.size() < 2) {
        throw locc::FormatError("check-pair: need at least two states, got " + std::to_string(states.size()));
    }
    const auto checks = locc::pairwise_checks(states, opt.config);
    bool all = true;
    Json pairs = Json::array();
    for (const auto& c : checks) {
        all = all && c.copyable;
        pairs.push_back(pair_check_json(c));
    }
    Json out;
    if (states.size() == 2) {
        out = pairs[0];
        out["scope"] = "exact";
    } else {
        out = {{"copyable", all}, {"scope", "pairwise-necessary only"}, {"pairs", pairs}};
    }
    if (opt.pretty) {
        for (const auto& c : checks) {
            std::cout << "pair (" << c.first << ", " << c.second << "): " << locc::to_string(c.relation)
                      << ", |overlap| = " << std::abs(c.overlap) << ", clusters = " << c.spectrum.clusters.size();
            if (c.spectrum.detected_m) {
                std::cout << ", M = " << *c.spectrum.detected_m;
            }
            std::cout << ", copyable = " << (c.copyable ? "yes" : "no") << '\n';
        }
        if (states.size() > 2) {
            std::cout << "all pairs copyable: " << (all ? "yes" : "no") << " (pairwise-necessary only)\n";
        }
    } else {
        emit(out, opt);
    }
    return all ? kYes : kNo;
}

int run_synthesize(const std::vector<std::string>& paths, const std::string& blank_path, const Options& opt) {
    const auto states = load_states(paths, opt);
    if (states.size() != 2) {
        throw locc::FormatError("synthesize: need exactly two states, got " + std::to_string(states.size()));
    }
    const auto blank = blank_path.empty()
                           ? locc::max_entangled(states[0].d())
                           : locc::state_from_json(locc::load_document(blank_path), blank_path, opt.config);
    const auto check = locc::check_pair(states[0], states[1], opt.config);
    if (!check.copyable) {
        std::cerr << "synthesize: pair is not copyable (" << locc::to_string(check.relation) << ", "
                  << check.spectrum.clusters.size() << " eigenphase clusters)\n";
        emit(pair_check_json(check), opt);
        return kNo;
    }
    emit(locc::protocol_to_json(locc::synthesize_protocol(states[0], states[1], blank, opt.config)), opt);
    return kYes;
}

int run_simulate(const std::string& protocol_path, const std::vector<std::string>& state_paths, const Options& opt) {
    const auto protocol =
        locc::protocol_from_json(locc::load_document(protocol_path), protocol_path, opt.config);
    const auto states = load_states(state_paths, opt);
    bool all = true;
    Json results = Json::array();
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto amplitude = locc::copy_overlap(protocol, states[i], opt.config);
        const double fidelity = std::clamp(std::norm(amplitude), 0.0, 1.0);
        const bool ok = fidelity >= 1.0 - opt.config.fidelity_tol;
        all = all && ok;
        results.push_back({{"index", i}, {"fidelity", fidelity}, {"theta", std::arg(amplitude)}, {"copied", ok}});
    }
    if (opt.pretty) {
        std::cout << locc::emit_locc_transcript(protocol).to_string();
        for (const auto& r : results) {
            std::cout << "state " << r.at("index").get<std::size_t>() << ": fidelity "
                      << std::setprecision(15) << r.at("fidelity").get<double>() << ", theta "
                      << r.at("theta").get<double>() << '\n';
        }
    } else {
        emit({{"results", results}, {"fidelity_tol", opt.config.fidelity_tol}, {"copied", all}}, opt);
    }
    return all ? kYes : kNo;
}

struct GenerateArgs {
    std::string family = "orthogonal";
    std::size_t d = 2;
    std::size_t m = 0;
    std::size_t d1 = 2;
    std::size_t d2 = 2;
    double delta = -1.0;
    std::string output;
};

Json pair_document(const std::string& family, std::uint64_t seed, const locc::StatePair& pair) {
    return {{"family", family},
            {"d", pair.first.d()},
            {"seed", seed},
            {"states", {locc::state_to_json(pair.first), locc::state_to_json(pair.second)}},
            {"planted_T", locc::matrix_to_json(pair.planted)}};
}

// Uniform in the open interval (0, 2 pi / D).
double draw_delta(std::size_t d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, locc::kTwoPi / static_cast<double>(d));
    double x = 0.0;
    while (x == 0.0) {
        x = u(rng);
    }
    return x;
}

locc::StatePair generate_pair(const std::string& family, std::size_t d, std::size_t m, std::size_t d1,
                              std::size_t d2, double delta, std::uint64_t seed) {
    if (family == "orthogonal") {
        return locc::orthogonal_pair(d, seed);
    }
    if (family == "copyable") {
        return locc::copyable_pair(d, m == 0 ? d : m, seed);
    }
    if (delta < 0.0) {
        std::mt19937_64 rng(locc::detail::derive_seed(seed, 7));
        delta = draw_delta(d1 * d2, rng);
    }
    return locc::nonprime_counterexample(d1, d2, delta, seed);
}

int run_generate(const GenerateArgs& g, const Options& opt) {
    const auto pair = generate_pair(g.family, g.d, g.m, g.d1, g.d2, g.delta, opt.seed);
    const auto doc = pair_document(g.family, opt.seed, pair);
    if (g.output.empty() || g.output == "-") {
        emit(doc, opt);
    } else {
        std::ofstream out(g.output);
        if (!out) {
            throw locc::FormatError(g.output + ": cannot open for writing");
        }
        out << doc.dump(opt.pretty ? 2 : -1) << '\n';
    }
    return kYes;
}

struct SurveyArgs {
    std::vector<std::size_t> dims;
    std::size_t samples = 100;
    std::string family = "orthogonal";
    bool verify = false;
};

// Smallest nontrivial factorisation d = d1 * d2, or nothing for primes.
std::optional<std::pair<std::size_t, std::size_t>> split(std::size_t d) {
    for (std::size_t f = 2; f * f <= d; ++f) {
        if (d % f == 0) {
            return std::pair{f, d / f};
        }
    }
    return std::nullopt;
}

int run_survey(const SurveyArgs& s, const Options& opt) {
    Json rows = Json::array();
    for (const auto d : s.dims) {
        Json row = {{"d", d}, {"family", s.family}, {"samples", s.samples}};
        std::optional<std::pair<std::size_t, std::size_t>> factors;
        if (s.family == "nonprime") {
            factors = split(d);
            if (!factors) {
                row["skipped"] = "d is prime";
                rows.push_back(row);
                continue;
            }
        }
        std::size_t orthogonal = 0;
        std::size_t copyable = 0;
        std::size_t verified = 0;
        std::mt19937_64 rng(locc::detail::derive_seed(opt.seed, d));
        for (std::size_t i = 0; i < s.samples; ++i) {
            const auto sample_seed = locc::detail::derive_seed(opt.seed ^ (d << 32U), i);
            const auto pair = factors ? locc::nonprime_counterexample(factors->first, factors->second,
                                                                      draw_delta(d, rng), sample_seed)
                                      : generate_pair(s.family, d, 0, 0, 0, -1.0, sample_seed);
            const auto check = locc::check_pair(pair.first, pair.second, opt.config);
            orthogonal += check.relation == locc::Orthogonality::orthogonal ? 1 : 0;
            if (!check.copyable) {
                continue;
            }
            ++copyable;
            if (s.verify) {
                const auto protocol =
                    locc::synthesize_protocol(pair.first, pair.second, locc::max_entangled(d), opt.config);
                const bool ok = locc::verify_copy(protocol, pair.first, opt.config) >= 1.0 - opt.config.fidelity_tol &&
                                locc::verify_copy(protocol, pair.second, opt.config) >= 1.0 - opt.config.fidelity_tol;
                verified += ok ? 1 : 0;
            }
        }
        row["orthogonal"] = orthogonal;
        row["copyable"] = copyable;
        row["fraction_copyable"] = s.samples == 0 ? 0.0 : static_cast<double>(copyable) / static_cast<double>(s.samples);
        if (factors) {
            row["d1"] = factors->first;
            row["d2"] = factors->second;
        }
        if (s.verify) {
            row["verified"] = verified;
        }
        rows.push_back(row);
    }
    if (opt.pretty) {
        std::cout << std::setw(6) << "d" << std::setw(10) << "samples" << std::setw(12) << "orthogonal"
                  << std::setw(10) << "copyable" << std::setw(10) << "percent" << '\n';
        for (const auto& r : rows) {
            std::cout << std::setw(6) << r.at("d").get<std::size_t>();
            if (r.contains("skipped")) {
                std::cout << "  skipped: " << r.at("skipped").get<std::string>() << '\n';
                continue;
            }
            std::cout << std::setw(10) << r.at("samples").get<std::size_t>() << std::setw(12)
                      << r.at("orthogonal").get<std::size_t>() << std::setw(10)
                      << r.at("copyable").get<std::size_t>() << std::setw(9)
                      << fixed(100.0 * r.at("fraction_copyable").get<double>(), 1) << "%\n";
        }
    } else {
        emit({{"seed", opt.seed}, {"rows", rows}}, opt);
    }
    return kYes;
}

void add_tolerance_flags(CLI::App& app, locc::NumericConfig& c) {
    app.add_option("--unitarity-tol", c.unitarity_tol, "Unitarity defect bound")->capture_default_str();
    app.add_option("--eig-tol", c.eig_reconstruction_tol, "Eigendecomposition reconstruction bound")
        ->capture_default_str();
    app.add_option("--normality-tol", c.normality_tol, "Normality bound for eigendecomposition")
        ->capture_default_str();
    app.add_option("--norm-tol", c.norm_tol, "State normalisation tolerance")->capture_default_str();
    app.add_option("--max-entangled-tol", c.max_entangled_tol, "Max |p_i - 1/d| for a maximally entangled state")
        ->capture_default_str();
    app.add_option("--sum-tol", c.sum_tol, "Slack on majorization partial sums")->capture_default_str();
    app.add_option("--phase-tol", c.phase_tol, "Eigenphase clustering gap (radians)")->capture_default_str();
    app.add_option("--ortho-tol", c.ortho_tol, "Orthogonal when |Tr T| < D * ortho-tol")->capture_default_str();
    app.add_option("--fidelity-tol", c.fidelity_tol, "Copy accepted when fidelity >= 1 - fidelity-tol")
        ->capture_default_str();
    app.add_option("--max-dimension", c.max_dimension, "Largest dense dimension built")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decide and perform LOCC copying of maximally entangled states"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    add_tolerance_flags(app, opt.config);
    app.add_flag("--pretty", opt.pretty, "Human-readable output instead of compact JSON");
    app.add_option("--seed", opt.seed, "Random seed (default from LOCC_SEED, else 0)")->envname("LOCC_SEED");

    std::string a_path, b_path, blank_path, protocol_path;
    std::vector<std::string> paths;
    int code = kInputError;

    auto* majorize = app.add_subcommand("majorize", "Does Schmidt vector w majorize v?");
    majorize->add_option("w", a_path, "Schmidt JSON for w")->required();
    majorize->add_option("v", b_path, "Schmidt JSON for v")->required();
    majorize->callback([&] { code = run_majorize(a_path, b_path, opt); });

    auto* catalysis = app.add_subcommand("catalysis", "Copy psi onto blank: direct, catalytic or impossible");
    catalysis->add_option("psi", a_path, "Schmidt JSON for psi")->required();
    catalysis->add_option("blank", b_path, "Schmidt JSON for the blank")->required();
    catalysis->callback([&] { code = run_catalysis(a_path, b_path, opt); });

    auto* check = app.add_subcommand("check-pair", "Orthogonality and spectral copyability of states");
    check->add_option("states", paths, "State or pair JSON files")->required();
    check->callback([&] { code = run_check_pair(paths, opt); });

    auto* synth = app.add_subcommand("synthesize", "Build the local unitaries copying a pair");
    synth->add_option("states", paths, "State or pair JSON files")->required();
    synth->add_option("--blank", blank_path, "Blank state JSON (default: maximally entangled)");
    synth->callback([&] { code = run_synthesize(paths, blank_path, opt); });

    auto* sim = app.add_subcommand("simulate", "Run a protocol on states and report copy fidelity");
    sim->add_option("protocol", protocol_path, "Protocol JSON")->required();
    sim->add_option("states", paths, "State or pair JSON files")->required();
    sim->callback([&] { code = run_simulate(protocol_path, paths, opt); });

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a random pair from a family");
    generate->add_option("--family", gen.family)->check(CLI::IsMember({"orthogonal", "copyable", "nonprime"}));
    generate->add_option("--d", gen.d, "Dimension D")->check(CLI::Range(2, 144));
    generate->add_option("--m", gen.m, "Root order M for the copyable family (default D)");
    generate->add_option("--d1", gen.d1, "First factor for the nonprime family");
    generate->add_option("--d2", gen.d2, "Second factor for the nonprime family");
    generate->add_option("--delta", gen.delta, "Phase step for the nonprime family (default random)");
    generate->add_option("-o,--output", gen.output, "Output file (default stdout)");
    generate->callback([&] { code = run_generate(gen, opt); });

    SurveyArgs survey;
    auto* surv = app.add_subcommand("survey", "Fraction of random pairs that are copyable, per D");
    surv->add_option("--d", survey.dims, "Dimension (repeatable)")->required()->check(CLI::Range(2, 144));
    surv->add_option("--samples", survey.samples, "Samples per D")->capture_default_str();
    surv->add_option("--family", survey.family)->check(CLI::IsMember({"orthogonal", "copyable", "nonprime"}));
    surv->add_flag("--verify", survey.verify, "Synthesise and simulate every copyable sample");
    surv->callback([&] { code = run_survey(survey, opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    } catch (const locc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    return code;
}
