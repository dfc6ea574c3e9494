#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cssbp/channel.hpp"
#include "cssbp/css_code.hpp"
#include "cssbp/decoders.hpp"

namespace cssbp {

/// One sweep point: the channel prior used for sampling and decoding, plus
/// the rate label reported in the `p` column.
struct PriorPoint {
    double p = 0.0;
    PauliPrior prior;
};

struct TrialConfig {
    std::vector<DecoderKind> decoders{DecoderKind::Joint};
    std::vector<PriorPoint> points;
    int trials = 1000;
    std::uint64_t base_seed = 1;
    DecoderConfig decoder{};
    /// 0 = hardware concurrency; the CSSBP_THREADS variable caps the result.
    int threads = 0;

    void validate(const CssCode& code) const;
};

/// Depolarizing sweep points, one per rate.
std::vector<PriorPoint> depolarizing_points(int n, const std::vector<double>& rates);

/// Aggregate outcome of one (decoder, rate) batch.  The four class counts
/// partition the trials.
struct StatsRow {
    DecoderKind decoder = DecoderKind::Joint;
    double p = 0.0;
    int trials = 0;
    int converged = 0;
    int exact = 0;
    int stabilizer = 0;
    int logical = 0;
    int mismatch = 0;
    double mean_iterations = 0.0;
};

struct StatsReport {
    std::vector<StatsRow> rows;    ///< decoder-major, then sweep point, in config order
    std::string code_id;           ///< code name or dimension summary
    std::uint64_t base_seed = 0;
    std::uint64_t config_hash = 0; ///< FNV-1a over the canonical config rendering
};

/// Trial seeds depend on (base_seed, rate label, trial index) only — not on
/// the decoder — so every decoder in one report faces the identical error
/// stream.
std::uint64_t trial_seed(std::uint64_t base_seed, double rate, int trial);

/// Monte Carlo driver.  Deterministic for a fixed config: per-trial outcomes
/// land in trial-indexed slots before aggregation, so the thread count never
/// changes a report.
StatsReport run_trials(const CssCode& code, const TrialConfig& config,
                       std::string code_id = "");

/// CSV with the header
/// decoder,p,trials,converged,exact,stabilizer,logical,mismatch,mean_iters
/// and shortest-round-trip number formatting (byte-stable across runs).
std::string render_csv(const StatsReport& report);
std::string render_json(const StatsReport& report);

/// Reads a css-support file, or returns the built-in 24-qubit code for the
/// name "paper24".
CssCode load_code(const std::string& path_or_name);

/// DecoderConfig from a JSON object with optional keys max_iterations,
/// epsilon, check_rule ("exact" | "min-sum"), minsum_scale, damping,
/// early_stop; unknown keys are rejected.
DecoderConfig decoder_config_from_json(std::string_view json_text);

/// Prior tables from a JSON array of n 4-entry rows in
/// ((0,0),(1,0),(0,1),(1,1)) order.
PauliPrior prior_from_json(std::string_view json_text);

}  // namespace cssbp
