#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "cssbp/equivalence.hpp"
#include "doctest.h"

using namespace cssbp;

namespace {

Syndromes zero_syndromes(const CssCode& code) {
    Syndromes s;
    s.s_z.assign(code.mx, 0);
    s.s_x.assign(code.mz, 0);
    return s;
}

PauliPrior random_prior(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<std::array<double, 4>> tables(n);
    for (auto& t : tables) {
        double sum = 0.0;
        for (double& v : t) {
            v = u(rng);
            sum += v;
        }
        for (double& v : t) v /= sum;
    }
    return PauliPrior::from_tables(std::move(tables));
}

Syndromes sampled_syndromes(const CssCode& code, const PauliPrior& prior, std::uint64_t seed) {
    return syndrome(code, sample_error(prior, seed));
}

}  // namespace

TEST_CASE("per-message identity: constant four-vectors marginalize cleanly") {
    // X-edge: labels {0,1} share z=0, {ω,ω²} share z=1.
    MessageDeviation d = check_message_identity(Msg4{0.3, 0.3, 0.2, 0.2}, Msg2{0.6, 0.4}, true);
    CHECK(d.constancy_defect == 0.0);
    CHECK(d.deviation == 0.0);

    // A message that varies inside a z-pair is flagged.
    d = check_message_identity(Msg4{0.4, 0.2, 0.2, 0.2}, Msg2{0.6, 0.4}, true);
    CHECK(d.constancy_defect == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(d.deviation <= 1e-15);  // the pair sums still match

    // Z-edge pairs are {0,ω} and {1,ω²}.
    d = check_message_identity(Msg4{0.3, 0.2, 0.3, 0.2}, Msg2{0.6, 0.4}, false);
    CHECK(d.constancy_defect == 0.0);
    CHECK(d.deviation == 0.0);
    d = check_message_identity(Msg4{0.3, 0.2, 0.3, 0.2}, Msg2{0.5, 0.5}, false);
    CHECK(d.deviation == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("paired runs reproduce the belief and message identities") {
    const CssCode& code = paper_code_24();
    PauliPrior prior = depolarizing_prior(24, 0.3);
    PairedOptions options;
    options.iterations = 20;

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        EquivalenceReport report =
            run_paired(code, prior, sampled_syndromes(code, prior, 500 + seed), options);
        CHECK(report.iterations == 20);
        CHECK(report.per_iteration.size() == 20);
        CHECK(report.max_belief_deviation <= 1e-10);
        CHECK(report.max_check_deviation <= 1e-12);
        CHECK(report.max_var_deviation <= 1e-12);
        CHECK(report.max_constancy_defect <= 1e-12);
        CHECK(report.decisions_match);
        CHECK(report.max_deviation >= report.max_belief_deviation);
    }
}

TEST_CASE("random heterogeneous priors keep the identities, zeros included") {
    const CssCode& code = paper_code_24();
    std::mt19937_64 rng(0x5eed4001);
    PairedOptions options;
    options.iterations = 10;

    PauliPrior smooth = random_prior(rng, 24);
    EquivalenceReport r1 = run_paired(code, smooth, sampled_syndromes(code, smooth, 41), options);
    CHECK(r1.max_belief_deviation <= 1e-10);
    CHECK(r1.decisions_match);

    // Zero one prior entry per qubit (never the identity, so each row and
    // column of the 2x2 table keeps mass); exact zeros must propagate
    // identically through both decoders.
    std::vector<std::array<double, 4>> tables = smooth.tables;
    for (std::size_t j = 0; j < tables.size(); ++j) {
        auto& t = tables[j];
        t[1 + j % 3] = 0.0;
        const double sum = t[0] + t[1] + t[2] + t[3];
        for (double& v : t) v /= sum;
    }
    PauliPrior spiky = PauliPrior::from_tables(std::move(tables));
    EquivalenceReport r2 = run_paired(code, spiky, sampled_syndromes(code, spiky, 42), options);
    CHECK(r2.max_belief_deviation <= 1e-10);
    CHECK(r2.max_check_deviation <= 1e-12);
    CHECK(r2.decisions_match);
}

TEST_CASE("product priors satisfy the identities as a special case") {
    const CssCode& code = paper_code_24();
    std::mt19937_64 rng(0x5eed4002);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    std::vector<std::array<double, 4>> tables(24);
    for (auto& t : tables) {
        const double ax = u(rng), bz = u(rng);
        t = {ax * bz, (1 - ax) * bz, ax * (1 - bz), (1 - ax) * (1 - bz)};
    }
    PauliPrior prior = PauliPrior::from_tables(std::move(tables));
    PairedOptions options;
    options.iterations = 15;
    EquivalenceReport report =
        run_paired(code, prior, sampled_syndromes(code, prior, 77), options);
    CHECK(report.max_belief_deviation <= 1e-10);
    CHECK(report.max_check_deviation <= 1e-12);
    CHECK(report.decisions_match);
}

TEST_CASE("a compatible four-state-first start preserves the identities") {
    const CssCode& code = paper_code_24();
    PauliPrior prior = depolarizing_prior(24, 0.2);
    PairedOptions options;
    options.iterations = 12;
    options.init = PairedInit::FourStateFirst;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        options.init_seed = seed;
        EquivalenceReport report =
            run_paired(code, prior, sampled_syndromes(code, prior, 600 + seed), options);
        CHECK(report.max_belief_deviation <= 1e-10);
        CHECK(report.max_check_deviation <= 1e-12);
        CHECK(report.max_var_deviation <= 1e-12);
        CHECK(report.decisions_match);
    }
}

TEST_CASE("modifications transported to both sides keep the decoders aligned") {
    const CssCode& code = paper_code_24();
    PauliPrior prior = depolarizing_prior(24, 0.3);
    Syndromes s = sampled_syndromes(code, prior, 88);

    PairedOptions minsum_both;
    minsum_both.iterations = 15;
    minsum_both.joint_rule = CheckRule::MinSum;
    minsum_both.four_state_rule = CheckRule::MinSum;
    minsum_both.minsum_scale = 0.8;
    EquivalenceReport r1 = run_paired(code, prior, s, minsum_both);
    CHECK(r1.max_belief_deviation <= 1e-10);
    CHECK(r1.decisions_match);

    PairedOptions damped_both;
    damped_both.iterations = 15;
    damped_both.joint_damping = 0.4;
    damped_both.four_state_damping = 0.4;
    EquivalenceReport r2 = run_paired(code, prior, s, damped_both);
    CHECK(r2.max_belief_deviation <= 1e-10);
    CHECK(r2.decisions_match);
}

TEST_CASE("one-sided modifications are detected as real divergence") {
    const CssCode& code = paper_code_24();
    PauliPrior prior = depolarizing_prior(24, 0.3);

    // Min-sum on the binary pair only, exact box-plus on the four-state side.
    PairedOptions lopsided;
    lopsided.iterations = 20;
    lopsided.joint_rule = CheckRule::MinSum;
    lopsided.four_state_rule = CheckRule::Exact;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        EquivalenceReport report =
            run_paired(code, prior, sampled_syndromes(code, prior, 700 + seed), lopsided);
        worst = std::max(worst, report.max_belief_deviation);
    }
    CHECK(worst > 1e-3);

    // Damping on one side only diverges as well.
    PairedOptions halfdamped;
    halfdamped.iterations = 20;
    halfdamped.joint_damping = 0.5;
    double worst_damped = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        EquivalenceReport report =
            run_paired(code, prior, sampled_syndromes(code, prior, 800 + seed), halfdamped);
        worst_damped = std::max(worst_damped, report.max_belief_deviation);
    }
    CHECK(worst_damped > 1e-3);
}

TEST_CASE("the isolated check layer satisfies the relabeling identity") {
    const CssCode& code = paper_code_24();
    PauliPrior prior = depolarizing_prior(24, 0.3);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Syndromes s = sampled_syndromes(code, prior, 900 + seed);
        CheckLayerIdentity exact = check_layer_identity(code, s, seed, CheckRule::Exact);
        CHECK(exact.deviation <= 1e-12);
        CHECK(exact.constancy_defect == 0.0);  // lifted outputs are constant by construction

        CheckLayerIdentity minsum = check_layer_identity(code, s, seed, CheckRule::MinSum);
        CHECK(minsum.deviation <= 1e-10);
        CHECK(minsum.constancy_defect == 0.0);
    }
    Syndromes bad;
    bad.s_z.assign(3, 0);
    bad.s_x.assign(8, 0);
    CHECK_THROWS_AS(check_layer_identity(code, bad, 0), std::invalid_argument);
}

TEST_CASE("hard-decision correspondence shares the tie order") {
    BeliefTable uniform2, uniform4;
    uniform2.tables.assign(3, Msg4{0.25, 0.25, 0.25, 0.25});
    uniform4.tables.assign(3, Msg4{0.25, 0.25, 0.25, 0.25});
    CHECK(hard_decision_correspondence(uniform2, uniform4));

    // Peaked at (0,1) on the pair side, at ω on the label side: same index.
    BeliefTable b2, b4;
    b2.tables = {Msg4{0.1, 0.1, 0.7, 0.1}};
    b4.tables = {Msg4{0.05, 0.15, 0.75, 0.05}};
    CHECK(hard_decision_correspondence(b2, b4));

    // Relabeled two-way exact tie resolves identically on both sides.
    b2.tables = {Msg4{0.4, 0.4, 0.1, 0.1}};
    b4.tables = {Msg4{0.4, 0.4, 0.1, 0.1}};
    CHECK(hard_decision_correspondence(b2, b4));

    b2.tables = {Msg4{0.7, 0.1, 0.1, 0.1}};
    b4.tables = {Msg4{0.1, 0.7, 0.1, 0.1}};
    CHECK_FALSE(hard_decision_correspondence(b2, b4));

    BeliefTable longer;
    longer.tables.assign(2, Msg4{0.25, 0.25, 0.25, 0.25});
    CHECK_THROWS_AS(hard_decision_correspondence(b2, longer), std::invalid_argument);
}

TEST_CASE("engineered exact ties persist and stay aligned") {
    // Q(0,z) = Q(1,z) keeps the x-side exactly symmetric: all μ and μ̂
    // messages are (1/2, 1/2) forever and every belief table ties its two
    // x-values bitwise, so the common order decides — on both sides.
    const CssCode& code = paper_code_24();
    PauliPrior prior = PauliPrior::from_tables(
        std::vector<std::array<double, 4>>(24, {0.35, 0.35, 0.15, 0.15}));
    PairedOptions options;
    options.iterations = 10;

    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        Syndromes s = sampled_syndromes(code, prior, 1000 + seed);
        EquivalenceReport report = run_paired(code, prior, s, options);
        CHECK(report.max_belief_deviation <= 1e-10);
        CHECK(report.decisions_match);
    }

    // The ties really are exact: run the joint decoder and inspect.
    DecoderConfig config;
    config.early_stop = false;
    config.max_iterations = 10;
    Syndromes s = sampled_syndromes(code, prior, 1001);
    JointBpState state = init_joint(code, prior, s, config);
    for (int l = 0; l < 10; ++l) joint_iterate(state);
    BeliefTable beliefs = joint_beliefs(state);
    PauliError decision = hard_decision(beliefs);
    for (int j = 0; j < 24; ++j) {
        CHECK(beliefs.tables[j][pauli_index(0, 0)] == beliefs.tables[j][pauli_index(1, 0)]);
        CHECK(beliefs.tables[j][pauli_index(0, 1)] == beliefs.tables[j][pauli_index(1, 1)]);
        CHECK(decision.x[j] == 0);  // the tie order prefers x = 0
    }

    // Fully uniform prior with a zero syndrome: everything stays uniform and
    // the paired run reports exact zeros across the board.
    PauliPrior uniform = depolarizing_prior(24, 0.75);
    EquivalenceReport flat = run_paired(code, uniform, zero_syndromes(code), options);
    CHECK(flat.max_deviation == 0.0);
    CHECK(flat.max_constancy_defect == 0.0);
    CHECK(flat.decisions_match);
}
