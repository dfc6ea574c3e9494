#include "cssbp/sim.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace cssbp {

void TrialConfig::validate(const CssCode& code) const {
    if (decoders.empty()) throw std::invalid_argument("trial config: no decoders selected");
    if (points.empty()) throw std::invalid_argument("trial config: no sweep points");
    if (trials < 1) throw std::invalid_argument("trial config: trials must be >= 1");
    if (threads < 0) throw std::invalid_argument("trial config: threads must be >= 0");
    decoder.validate();
    for (const auto& point : points) {
        if (!(point.p >= 0.0 && point.p <= 1.0)) {
            throw std::invalid_argument("trial config: rate labels must lie in [0, 1]");
        }
        if (point.prior.n() != code.n) {
            throw std::invalid_argument("trial config: prior size does not match the code");
        }
    }
}

std::vector<PriorPoint> depolarizing_points(int n, const std::vector<double>& rates) {
    std::vector<PriorPoint> points;
    points.reserve(rates.size());
    for (double p : rates) points.push_back({p, depolarizing_prior(n, p)});
    return points;
}

namespace {

std::uint64_t splitmix64(std::uint64_t state) {
    state += 0x9e3779b97f4a7c15ull;
    state = (state ^ (state >> 30)) * 0xbf58476d1ce4e5b9ull;
    state = (state ^ (state >> 27)) * 0x94d049bb133111ebull;
    return state ^ (state >> 31);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base_seed, double rate, int trial) {
    std::uint64_t mixed = splitmix64(base_seed ^ std::bit_cast<std::uint64_t>(rate));
    return splitmix64(mixed ^ static_cast<std::uint64_t>(trial));
}

namespace {

int effective_threads(int requested) {
    int threads = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (const char* env = std::getenv("CSSBP_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap >= 1) threads = std::min<long>(threads, cap);
    }
    return threads;
}

struct TrialOutcome {
    bool converged = false;
    int iterations = 0;
    ResidualClass residual = ResidualClass::Exact;
};

/// Number formatting used in reports: shortest round-trip decimal.
std::string format_double(double value) {
    char buffer[32];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, end);
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

/// Canonical config rendering feeding the report hash: every knob that can
/// change an outcome, in fixed order.
std::string canonical_config(const CssCode& code, const TrialConfig& config) {
    std::ostringstream out;
    out << "n=" << code.n << ";mx=" << code.mx << ";mz=" << code.mz;
    out << ";seed=" << config.base_seed << ";trials=" << config.trials << ";decoders=";
    for (DecoderKind d : config.decoders) out << to_string(d) << ",";
    out << ";points=";
    for (const auto& point : config.points) out << format_double(point.p) << ",";
    const DecoderConfig& d = config.decoder;
    out << ";max_iterations=" << d.max_iterations << ";epsilon=" << format_double(d.epsilon)
        << ";check_rule=" << (d.check_rule == CheckRule::Exact ? "exact" : "min-sum")
        << ";minsum_scale=" << format_double(d.minsum_scale)
        << ";damping=" << format_double(d.damping) << ";early_stop=" << d.early_stop
        << ";llr_clamp=" << format_double(d.llr_clamp);
    return out.str();
}

}  // namespace

StatsReport run_trials(const CssCode& code, const TrialConfig& config, std::string code_id) {
    config.validate(code);
    const int threads = effective_threads(config.threads);

    StatsReport report;
    report.code_id = code_id.empty()
                         ? "n" + std::to_string(code.n) + "-mx" + std::to_string(code.mx) + "-mz" +
                               std::to_string(code.mz)
                         : std::move(code_id);
    report.base_seed = config.base_seed;
    report.config_hash = fnv1a(canonical_config(code, config));

    for (DecoderKind kind : config.decoders) {
        for (const auto& point : config.points) {
            std::vector<TrialOutcome> outcomes(config.trials);
            auto worker = [&](int first) {
                for (int t = first; t < config.trials; t += threads) {
                    const PauliError truth =
                        sample_error(point.prior, trial_seed(config.base_seed, point.p, t));
                    const Syndromes observed = syndrome(code, truth);
                    DecodeResult decoded =
                        decode(code, point.prior, observed, config.decoder, kind);
                    outcomes[t] = {decoded.converged, decoded.iterations,
                                   classify_residual(code, truth, decoded.decision)};
                }
            };
            if (threads == 1 || config.trials == 1) {
                worker(0);
            } else {
                std::vector<std::thread> pool;
                pool.reserve(threads);
                for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
                for (auto& thread : pool) thread.join();
            }

            StatsRow row;
            row.decoder = kind;
            row.p = point.p;
            row.trials = config.trials;
            long long iteration_sum = 0;
            for (const TrialOutcome& outcome : outcomes) {
                row.converged += outcome.converged;
                iteration_sum += outcome.iterations;
                switch (outcome.residual) {
                    case ResidualClass::Exact: ++row.exact; break;
                    case ResidualClass::Stabilizer: ++row.stabilizer; break;
                    case ResidualClass::Logical: ++row.logical; break;
                    case ResidualClass::SyndromeMismatch: ++row.mismatch; break;
                }
            }
            row.mean_iterations = static_cast<double>(iteration_sum) / config.trials;
            report.rows.push_back(row);
        }
    }
    return report;
}

std::string render_csv(const StatsReport& report) {
    std::string out = "decoder,p,trials,converged,exact,stabilizer,logical,mismatch,mean_iters\n";
    for (const StatsRow& row : report.rows) {
        out += std::string(to_string(row.decoder)) + "," + format_double(row.p) + "," +
               std::to_string(row.trials) + "," + std::to_string(row.converged) + "," +
               std::to_string(row.exact) + "," + std::to_string(row.stabilizer) + "," +
               std::to_string(row.logical) + "," + std::to_string(row.mismatch) + "," +
               format_double(row.mean_iterations) + "\n";
    }
    return out;
}

std::string render_json(const StatsReport& report) {
    nlohmann::ordered_json doc;
    doc["code"] = report.code_id;
    doc["seed"] = report.base_seed;
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(report.config_hash));
    doc["config_hash"] = hash;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const StatsRow& row : report.rows) {
        doc["rows"].push_back({{"decoder", std::string(to_string(row.decoder))},
                               {"p", row.p},
                               {"trials", row.trials},
                               {"converged", row.converged},
                               {"exact", row.exact},
                               {"stabilizer", row.stabilizer},
                               {"logical", row.logical},
                               {"mismatch", row.mismatch},
                               {"mean_iters", row.mean_iterations}});
    }
    return doc.dump(2) + "\n";
}

CssCode load_code(const std::string& path_or_name) {
    if (path_or_name == "paper24") return paper_code_24();
    std::ifstream in(path_or_name, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open code file: " + path_or_name);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_css_support_table(buffer.str());
}

DecoderConfig decoder_config_from_json(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& error) {
        throw std::invalid_argument(std::string("decoder config: ") + error.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("decoder config: expected a JSON object");

    DecoderConfig config;
    for (const auto& [key, value] : doc.items()) {
        if (key == "max_iterations") config.max_iterations = value.get<int>();
        else if (key == "epsilon") config.epsilon = value.get<double>();
        else if (key == "minsum_scale") config.minsum_scale = value.get<double>();
        else if (key == "damping") config.damping = value.get<double>();
        else if (key == "early_stop") config.early_stop = value.get<bool>();
        else if (key == "llr_clamp") config.llr_clamp = value.get<double>();
        else if (key == "check_rule") {
            const auto rule = value.get<std::string>();
            if (rule == "exact") config.check_rule = CheckRule::Exact;
            else if (rule == "min-sum") config.check_rule = CheckRule::MinSum;
            else throw std::invalid_argument("decoder config: check_rule must be exact or min-sum");
        } else {
            throw std::invalid_argument("decoder config: unknown key `" + key + "`");
        }
    }
    config.validate();
    return config;
}

PauliPrior prior_from_json(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& error) {
        throw std::invalid_argument(std::string("prior tables: ") + error.what());
    }
    if (!doc.is_array() || doc.empty()) {
        throw std::invalid_argument("prior tables: expected a non-empty JSON array of 4-entry rows");
    }
    std::vector<std::array<double, 4>> tables;
    tables.reserve(doc.size());
    for (const auto& row : doc) {
        if (!row.is_array() || row.size() != 4) {
            throw std::invalid_argument("prior tables: each row must hold exactly 4 numbers");
        }
        tables.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>(),
                          row[3].get<double>()});
    }
    return PauliPrior::from_tables(std::move(tables));
}

}  // namespace cssbp
