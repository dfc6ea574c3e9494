#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "cssbp/decoders.hpp"
#include "cssbp/oracle.hpp"
#include "doctest.h"

using namespace cssbp;

namespace {

/// One X-check over three qubits, no Z-checks: the smallest harness for
/// poking the check update in isolation.
CssCode single_check_code() { return CssCode::from_row_supports(3, {{0, 1, 2}}, {}); }

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

double sup_diff(const Msg4& a, const Msg4& b) {
    double d = 0.0;
    for (int idx = 0; idx < 4; ++idx) d = std::max(d, std::abs(a[idx] - b[idx]));
    return d;
}

}  // namespace

TEST_CASE("LLR initialization carries the prior log-ratios") {
    const CssCode& code = paper_code_24();
    PauliPrior prior = depolarizing_prior(24, 0.3);
    LlrJointState state = init_llr_joint(code, prior, zero_syndromes(code));

    // With zero accumulators the variable layer emits log(QZ0/QZ1) on X-side
    // edges and log(QX0/QX1) on Z-side edges: log(0.8/0.2) = log 4.
    for (double v : state.v2c_z) CHECK(v == doctest::Approx(1.3862943611198906).epsilon(1e-14));
    for (double v : state.v2c_x) CHECK(v == doctest::Approx(1.3862943611198906).epsilon(1e-14));
    for (double v : state.c2v_z) CHECK(v == 0.0);
    for (double v : state.c2v_x) CHECK(v == 0.0);

    // All-zero check LLRs reproduce the prior as beliefs.
    BeliefTable beliefs = llr_beliefs(state);
    for (int j = 0; j < 24; ++j) {
        CHECK(sup_diff(beliefs.tables[j], Msg4{0.7, 0.1, 0.1, 0.1}) <= 1e-14);
    }

    PauliPrior wrong = depolarizing_prior(5, 0.3);
    CHECK_THROWS_AS(init_llr_joint(code, wrong, zero_syndromes(code)), std::invalid_argument);
}

TEST_CASE("exact check update matches the tanh product rule") {
    CssCode code = single_check_code();
    PauliPrior prior = depolarizing_prior(3, 0.2);

    SUBCASE("even syndrome") {
        LlrJointState state = init_llr_joint(code, prior, zero_syndromes(code));
        state.v2c_z = {2.0, 2.0, 0.7};
        llr_iterate(state);
        // Toward the third edge the two incoming LLRs are both 2.0:
        // 2·atanh(tanh(1)²).
        CHECK(state.c2v_z[2] == doctest::Approx(1.3250027473578644).epsilon(1e-12));
    }
    SUBCASE("odd syndrome flips the sign") {
        Syndromes s = zero_syndromes(code);
        s.s_z[0] = 1;
        LlrJointState state = init_llr_joint(code, prior, s);
        state.v2c_z = {2.0, 2.0, 0.7};
        llr_iterate(state);
        CHECK(state.c2v_z[2] == doctest::Approx(-1.3250027473578644).epsilon(1e-12));
    }
    SUBCASE("a zero incoming LLR annihilates the output") {
        LlrJointState state = init_llr_joint(code, prior, zero_syndromes(code));
        state.v2c_z = {0.0, 5.0, 3.0};
        llr_iterate(state);
        CHECK(state.c2v_z[1] == 0.0);  // sees the zero through the product
        CHECK(state.c2v_z[2] == 0.0);
        CHECK(state.c2v_z[0] > 0.0);   // excludes the zero, stays positive
    }
}

TEST_CASE("min-sum check update keeps the sign-min structure") {
    CssCode code = single_check_code();
    PauliPrior prior = depolarizing_prior(3, 0.2);
    DecoderConfig config;
    config.check_rule = CheckRule::MinSum;

    LlrJointState state = init_llr_joint(code, prior, zero_syndromes(code), config);
    state.v2c_z = {2.0, -3.0, 4.0};
    llr_iterate(state);
    CHECK(state.c2v_z[0] == -3.0);  // sign(-3·4)·min(3,4)
    CHECK(state.c2v_z[1] == 2.0);   // sign(2·4)·min(2,4)
    CHECK(state.c2v_z[2] == -2.0);  // sign(2·-3)·min(2,3)

    config.minsum_scale = 0.5;
    LlrJointState scaled = init_llr_joint(code, prior, zero_syndromes(code), config);
    scaled.v2c_z = {2.0, -3.0, 4.0};
    llr_iterate(scaled);
    CHECK(scaled.c2v_z[2] == -1.0);

    config.minsum_scale = 1.0;
    Syndromes s = zero_syndromes(code);
    s.s_z[0] = 1;
    LlrJointState flipped = init_llr_joint(code, prior, s, config);
    flipped.v2c_z = {2.0, -3.0, 4.0};
    llr_iterate(flipped);
    CHECK(flipped.c2v_z[2] == 2.0);  // exact negation of the even-syndrome run
}

TEST_CASE("the clamp bounds check outputs and can be disabled") {
    CssCode code = single_check_code();
    PauliPrior prior = depolarizing_prior(3, 0.2);

    DecoderConfig config;
    config.llr_clamp = 5.0;
    LlrJointState state = init_llr_joint(code, prior, zero_syndromes(code), config);
    state.v2c_z = {20.0, 20.0, 0.0};
    llr_iterate(state);
    CHECK(state.c2v_z[2] == 5.0);  // 2·atanh(tanh(10)²) ≈ 18.6, clamped

    config.llr_clamp = -1.0;  // disabled
    LlrJointState open = init_llr_joint(code, prior, zero_syndromes(code), config);
    open.v2c_z = {20.0, 20.0, 0.0};
    llr_iterate(open);
    CHECK(open.c2v_z[2] > 18.0);
    CHECK(open.c2v_z[2] < 20.0);
}

TEST_CASE("flipping one syndrome bit negates that check's LLRs exactly") {
    const CssCode& code = paper_code_24();
    PauliPrior prior = depolarizing_prior(24, 0.2);

    Syndromes a = zero_syndromes(code);
    Syndromes b = a;
    const int flipped = 5;
    b.s_z[flipped] = 1;

    LlrJointState sa = init_llr_joint(code, prior, a);
    LlrJointState sb = init_llr_joint(code, prior, b);
    llr_iterate(sa);
    llr_iterate(sb);

    for (int i = 0; i < code.mx; ++i) {
        for (int e : sa.gx.check_edges[i]) {
            if (i == flipped) {
                CHECK(sb.c2v_z[e] == -sa.c2v_z[e]);
            } else {
                CHECK(sb.c2v_z[e] == sa.c2v_z[e]);
            }
        }
    }
    for (int e = 0; e < sa.gz.edges(); ++e) CHECK(sb.c2v_x[e] == sa.c2v_x[e]);
}

TEST_CASE("LLR and probability domains agree on identical runs") {
    const CssCode& code = paper_code_24();
    std::mt19937_64 rng(0x5eed2001);
    DecoderConfig config;
    config.early_stop = false;
    config.max_iterations = 20;

    for (int trial = 0; trial < 10; ++trial) {
        PauliPrior prior = random_prior(rng, 24);
        Syndromes s = syndrome(code, sample_error(prior, 400 + trial));

        JointBpState prob = init_joint(code, prior, s, config);
        LlrJointState llr = init_llr_joint(code, prior, s, config);
        for (int l = 0; l < 20; ++l) {
            joint_iterate(prob);
            llr_iterate(llr);
        }
        BeliefTable bp = joint_beliefs(prob);
        BeliefTable bl = llr_beliefs(llr);
        for (int j = 0; j < 24; ++j) {
            CHECK(sup_diff(bp.tables[j], bl.tables[j]) <= 1e-9);
        }
    }
}

TEST_CASE("zero prior entries surface as exact zeros in LLR beliefs") {
    // Only-Y prior on the tree code with a Y error on qubit 1; the posterior
    // at qubit 1 is (1/2, 0, 0, 1/2).
    CssCode code = CssCode::from_row_supports(4, {{2, 3}}, {{0, 1}});
    PauliPrior prior = PauliPrior::from_tables(
        std::vector<std::array<double, 4>>(4, {0.7, 0.0, 0.0, 0.3}));
    PauliError y1;
    y1.x = {1, 0, 0, 0};
    y1.z = {1, 0, 0, 0};
    Syndromes s = syndrome(code, y1);

    DecoderConfig config;
    config.max_iterations = 4;
    config.early_stop = false;
    DecodeResult result = decode(code, prior, s, config, DecoderKind::JointLlr);
    CHECK(result.beliefs.tables[0][pauli_index(1, 0)] == 0.0);
    CHECK(result.beliefs.tables[0][pauli_index(0, 1)] == 0.0);
    CHECK(result.beliefs.tables[0][pauli_index(0, 0)] == doctest::Approx(0.5).epsilon(1e-9));

    BeliefTable exact = exact_marginals(code, prior, s);
    for (int j = 0; j < 4; ++j) {
        CHECK(sup_diff(result.beliefs.tables[j], exact.tables[j]) <= 1e-9);
    }
}

TEST_CASE("the LLR decoder reaches the same decisions as the probability domain") {
    const CssCode& code = paper_code_24();
    PauliPrior prior = depolarizing_prior(24, 0.15);
    for (int trial = 0; trial < 8; ++trial) {
        Syndromes s = syndrome(code, sample_error(prior, 700 + trial));
        DecodeResult a = decode(code, prior, s, {}, DecoderKind::Joint);
        DecodeResult b = decode(code, prior, s, {}, DecoderKind::JointLlr);
        CHECK(a.converged == b.converged);
        CHECK(a.decision.x == b.decision.x);
        CHECK(a.decision.z == b.decision.z);
    }
}
