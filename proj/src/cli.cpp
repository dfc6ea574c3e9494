#include "cssbp/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cssbp/channel.hpp"
#include "cssbp/css_code.hpp"
#include "cssbp/decoders.hpp"
#include "cssbp/equivalence.hpp"
#include "cssbp/oracle.hpp"
#include "cssbp/sim.hpp"

namespace cssbp {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) throw std::runtime_error("cannot write file: " + path);
}

/// `depolarizing` (with rate) or a JSON table file.
PauliPrior resolve_prior(const std::string& spec, int n, double p) {
    if (spec.empty() || spec == "depolarizing") return depolarizing_prior(n, p);
    PauliPrior prior = prior_from_json(slurp(spec));
    if (prior.n() != n) {
        throw std::runtime_error("prior file holds " + std::to_string(prior.n()) +
                                 " tables, code has " + std::to_string(n) + " qubits");
    }
    return prior;
}

std::string render_validation(const CssCode& code, const ValidationReport& report) {
    std::ostringstream out;
    out << "n=" << code.n << " mX=" << code.mx << " mZ=" << code.mz << "\n";
    out << "orthogonal=" << (report.orthogonal ? "true" : "false") << "\n";
    auto histogram = [&](const char* label, const std::map<int, int>& h) {
        out << label << ":";
        for (const auto& [weight, count] : h) out << " " << weight << "x" << count;
        out << "\n";
    };
    histogram("row weights HX", report.row_weights_x);
    histogram("row weights HZ", report.row_weights_z);
    histogram("column weights HX", report.col_weights_x);
    histogram("column weights HZ", report.col_weights_z);
    out << "intersection census:";
    for (const auto& [overlap, count] : report.intersection_census) {
        out << " " << overlap << ":" << count;
    }
    out << "\n";
    return out.str();
}

std::string render_pauli(const PauliError& e) {
    // One letter per qubit: I, X, Z, Y.
    static constexpr char names[] = {'I', 'X', 'Z', 'Y'};
    std::string out;
    for (std::size_t j = 0; j < e.x.size(); ++j) {
        out += names[pauli_index(e.x[j], e.z[j])];
    }
    return out;
}

std::string render_bits(const std::vector<std::uint8_t>& bits) {
    std::string out;
    for (auto b : bits) out += b ? '1' : '0';
    return out;
}

nlohmann::ordered_json belief_json(const BeliefTable& beliefs) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& table : beliefs.tables) {
        rows.push_back({table[0], table[1], table[2], table[3]});
    }
    return rows;
}

CheckRule check_rule_from_name(const std::string& name) {
    if (name == "exact") return CheckRule::Exact;
    if (name == "min-sum") return CheckRule::MinSum;
    throw std::invalid_argument("check rule must be exact or min-sum");
}

struct TrialFlags {
    std::string code = "paper24";
    std::string prior = "depolarizing";
    std::vector<double> rates;
    int trials = 1000;
    std::uint64_t seed = 1;
    std::vector<std::string> decoders;
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    int threads = 0;
    int max_iters = 50;
    std::string check_rule = "exact";
    double damping = 0.0;
    double epsilon = 0.0;
    double minsum_scale = 1.0;
};

int run_trials_command(const TrialFlags& flags, const CLI::App& cmd) {
    TrialConfig config;
    std::string code_name = flags.code;
    std::string prior_spec = flags.prior;
    std::vector<double> rates = flags.rates;
    std::vector<std::string> decoder_names = flags.decoders;
    std::string format = flags.format;
    std::string out_path = flags.out_path;
    config.trials = flags.trials;
    config.base_seed = flags.seed;
    config.threads = flags.threads;

    // Config file first (decoder keys forwarded wholesale), then any flag
    // given explicitly on the command line overrides it.
    if (!flags.config_path.empty()) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(slurp(flags.config_path));
        } catch (const nlohmann::json::parse_error& error) {
            throw std::invalid_argument(std::string("trials config: ") + error.what());
        }
        if (!doc.is_object()) throw std::invalid_argument("trials config: expected a JSON object");
        nlohmann::json decoder_keys = nlohmann::json::object();
        for (const auto& [key, value] : doc.items()) {
            if (key == "code") code_name = value.get<std::string>();
            else if (key == "prior") prior_spec = value.get<std::string>();
            else if (key == "p") rates = value.get<std::vector<double>>();
            else if (key == "trials") config.trials = value.get<int>();
            else if (key == "seed") config.base_seed = value.get<std::uint64_t>();
            else if (key == "decoders") decoder_names = value.get<std::vector<std::string>>();
            else if (key == "format") format = value.get<std::string>();
            else if (key == "out") out_path = value.get<std::string>();
            else if (key == "threads") config.threads = value.get<int>();
            else decoder_keys[key] = value;  // forwarded to the decoder config
        }
        if (!decoder_keys.empty()) config.decoder = decoder_config_from_json(decoder_keys.dump());
    }

    auto given = [&](const std::string& flag) { return cmd.count(flag) > 0; };
    if (given("--code")) code_name = flags.code;
    if (given("--prior")) prior_spec = flags.prior;
    if (given("--p")) rates = flags.rates;
    if (given("--trials")) config.trials = flags.trials;
    if (given("--seed")) config.base_seed = flags.seed;
    if (given("--decoder")) decoder_names = flags.decoders;
    if (given("--format")) format = flags.format;
    if (given("--out")) out_path = flags.out_path;
    if (given("--threads")) config.threads = flags.threads;
    if (given("--max-iters")) config.decoder.max_iterations = flags.max_iters;
    if (given("--check-rule")) config.decoder.check_rule = check_rule_from_name(flags.check_rule);
    if (given("--damping")) config.decoder.damping = flags.damping;
    if (given("--epsilon")) config.decoder.epsilon = flags.epsilon;
    if (given("--minsum-scale")) config.decoder.minsum_scale = flags.minsum_scale;

    if (rates.empty()) rates = {0.1};
    if (decoder_names.empty()) decoder_names = {"joint"};
    config.decoders.clear();
    for (const auto& name : decoder_names) config.decoders.push_back(decoder_from_name(name));

    CssCode code = load_code(code_name);
    if (prior_spec.empty() || prior_spec == "depolarizing") {
        config.points = depolarizing_points(code.n, rates);
    } else {
        PauliPrior prior = resolve_prior(prior_spec, code.n, 0.0);
        for (double p : rates) config.points.push_back({p, prior});
    }

    StatsReport report = run_trials(code, config, code_name);
    if (format == "csv") write_output(out_path, render_csv(report));
    else if (format == "json") write_output(out_path, render_json(report));
    else throw std::invalid_argument("format must be csv or json");
    return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"CSS syndrome-decoding toolkit: joint, LLR, separate, and four-state BP"};
    app.require_subcommand(1);

    // --- validate ---------------------------------------------------------
    std::string validate_code;
    auto* validate = app.add_subcommand("validate", "check a CSS pair and print its certificate");
    validate->add_option("code", validate_code, "code name (paper24) or css-support file")
        ->required();

    // --- decode -----------------------------------------------------------
    struct {
        std::string code = "paper24";
        std::string prior = "depolarizing";
        double p = 0.1;
        std::uint64_t seed = 1;
        std::string decoder = "joint";
        int max_iters = 50;
        std::string check_rule = "exact";
        double damping = 0.0;
        double epsilon = 0.0;
        double minsum_scale = 1.0;
    } dec;
    auto* decode_cmd = app.add_subcommand("decode", "decode one sampled error and print beliefs");
    decode_cmd->add_option("--code", dec.code, "code name or css-support file");
    decode_cmd->add_option("--prior", dec.prior, "`depolarizing` or a JSON table file");
    decode_cmd->add_option("--p", dec.p, "depolarizing rate")->check(CLI::Range(0.0, 1.0));
    decode_cmd->add_option("--seed", dec.seed, "error-sampling seed");
    decode_cmd->add_option("--decoder", dec.decoder, "joint | joint-llr | separate | four-state");
    decode_cmd->add_option("--max-iters", dec.max_iters, "iteration budget");
    decode_cmd->add_option("--check-rule", dec.check_rule, "exact | min-sum");
    decode_cmd->add_option("--damping", dec.damping, "check-message damping in [0,1)");
    decode_cmd->add_option("--epsilon", dec.epsilon, "message floor in [0, 1e-3]");
    decode_cmd->add_option("--minsum-scale", dec.minsum_scale, "min-sum scaling in (0,1]");

    // --- trials -----------------------------------------------------------
    TrialFlags trials_flags;
    auto* trials_cmd = app.add_subcommand("trials", "Monte Carlo sweep, CSV or JSON report");
    trials_cmd->add_option("--code", trials_flags.code, "code name or css-support file");
    trials_cmd->add_option("--prior", trials_flags.prior, "`depolarizing` or a JSON table file");
    trials_cmd->add_option("--p", trials_flags.rates, "rate (repeatable)")
        ->check(CLI::Range(0.0, 1.0));
    trials_cmd->add_option("--trials", trials_flags.trials, "trials per point")
        ->check(CLI::PositiveNumber);
    trials_cmd->add_option("--seed", trials_flags.seed, "base seed");
    trials_cmd->add_option("--decoder", trials_flags.decoders, "decoder id (repeatable)");
    trials_cmd->add_option("--config", trials_flags.config_path, "JSON config file");
    trials_cmd->add_option("--out", trials_flags.out_path, "output path (default stdout)");
    trials_cmd->add_option("--format", trials_flags.format, "csv | json");
    trials_cmd->add_option("--threads", trials_flags.threads, "worker threads (0 = auto)");
    trials_cmd->add_option("--max-iters", trials_flags.max_iters, "iteration budget");
    trials_cmd->add_option("--check-rule", trials_flags.check_rule, "exact | min-sum");
    trials_cmd->add_option("--damping", trials_flags.damping, "check-message damping");
    trials_cmd->add_option("--epsilon", trials_flags.epsilon, "message floor");
    trials_cmd->add_option("--minsum-scale", trials_flags.minsum_scale, "min-sum scaling");

    // --- equiv ------------------------------------------------------------
    struct {
        std::string code = "paper24";
        double p = 0.3;
        int iters = 20;
        int seeds = 30;
        std::uint64_t seed = 1;
    } eq;
    auto* equiv_cmd = app.add_subcommand("equiv", "paired joint/four-state run, JSON report");
    equiv_cmd->add_option("--code", eq.code, "code name or css-support file");
    equiv_cmd->add_option("--p", eq.p, "depolarizing rate")->check(CLI::Range(0.0, 1.0));
    equiv_cmd->add_option("--iters", eq.iters, "lockstep iterations")->check(CLI::PositiveNumber);
    equiv_cmd->add_option("--seeds", eq.seeds, "number of sampled instances")
        ->check(CLI::PositiveNumber);
    equiv_cmd->add_option("--seed", eq.seed, "base seed for error sampling");

    // --- oracle -----------------------------------------------------------
    struct {
        std::string code;
        std::string prior = "depolarizing";
        double p = 0.1;
        std::uint64_t seed = 1;
        int limit = 12;
    } orc;
    auto* oracle_cmd =
        app.add_subcommand("oracle", "exact posterior marginals by enumeration (small codes)");
    oracle_cmd->add_option("--code", orc.code, "code name or css-support file")->required();
    oracle_cmd->add_option("--prior", orc.prior, "`depolarizing` or a JSON table file");
    oracle_cmd->add_option("--p", orc.p, "depolarizing rate")->check(CLI::Range(0.0, 1.0));
    oracle_cmd->add_option("--seed", orc.seed, "error-sampling seed");
    oracle_cmd->add_option("--limit", orc.limit, "enumeration limit on n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& error) {
        app.exit(error);
        return 2;  // usage errors
    }

    try {
        if (validate->parsed()) {
            CssCode code = load_code(validate_code);
            std::cout << render_validation(code, validate_css(code));
            return 0;
        }
        if (decode_cmd->parsed()) {
            CssCode code = load_code(dec.code);
            PauliPrior prior = resolve_prior(dec.prior, code.n, dec.p);
            DecoderConfig config;
            config.max_iterations = dec.max_iters;
            config.damping = dec.damping;
            config.epsilon = dec.epsilon;
            config.minsum_scale = dec.minsum_scale;
            config.check_rule = check_rule_from_name(dec.check_rule);
            const PauliError truth = sample_error(prior, dec.seed);
            const Syndromes observed = syndrome(code, truth);
            DecodeResult result =
                decode(code, prior, observed, config, decoder_from_name(dec.decoder));

            nlohmann::ordered_json doc;
            doc["decoder"] = std::string(to_string(result.decoder));
            doc["error"] = render_pauli(truth);
            doc["syndrome_z"] = render_bits(observed.s_z);
            doc["syndrome_x"] = render_bits(observed.s_x);
            doc["decision"] = render_pauli(result.decision);
            doc["iterations"] = result.iterations;
            doc["converged"] = result.converged;
            doc["residual"] = std::string(to_string(classify_residual(code, truth, result.decision)));
            doc["beliefs"] = belief_json(result.beliefs);
            std::cout << doc.dump(2) << "\n";
            return 0;
        }
        if (trials_cmd->parsed()) {
            return run_trials_command(trials_flags, *trials_cmd);
        }
        if (equiv_cmd->parsed()) {
            CssCode code = load_code(eq.code);
            PauliPrior prior = depolarizing_prior(code.n, eq.p);
            PairedOptions options;
            options.iterations = eq.iters;
            double max_belief = 0.0, max_check = 0.0, max_var = 0.0, max_constancy = 0.0;
            bool decisions = true;
            for (int s = 0; s < eq.seeds; ++s) {
                const PauliError truth = sample_error(prior, trial_seed(eq.seed, eq.p, s));
                EquivalenceReport report = run_paired(code, prior, syndrome(code, truth), options);
                max_belief = std::max(max_belief, report.max_belief_deviation);
                max_check = std::max(max_check, report.max_check_deviation);
                max_var = std::max(max_var, report.max_var_deviation);
                max_constancy = std::max(max_constancy, report.max_constancy_defect);
                decisions = decisions && report.decisions_match;
            }
            nlohmann::ordered_json doc;
            doc["code"] = eq.code;
            doc["p"] = eq.p;
            doc["instances"] = eq.seeds;
            doc["iterations"] = eq.iters;
            doc["max_belief_deviation"] = max_belief;
            doc["max_check_deviation"] = max_check;
            doc["max_var_deviation"] = max_var;
            doc["max_constancy_defect"] = max_constancy;
            doc["decisions_match"] = decisions;
            std::cout << doc.dump(2) << "\n";
            return 0;
        }
        if (oracle_cmd->parsed()) {
            CssCode code = load_code(orc.code);
            PauliPrior prior = resolve_prior(orc.prior, code.n, orc.p);
            const PauliError truth = sample_error(prior, orc.seed);
            const Syndromes observed = syndrome(code, truth);
            BeliefTable marginals = exact_marginals(code, prior, observed, orc.limit);
            nlohmann::ordered_json doc;
            doc["code"] = orc.code;
            doc["error"] = render_pauli(truth);
            doc["syndrome_z"] = render_bits(observed.s_z);
            doc["syndrome_x"] = render_bits(observed.s_x);
            doc["marginals"] = belief_json(marginals);
            std::cout << doc.dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace cssbp
