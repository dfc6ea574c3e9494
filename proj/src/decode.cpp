#include <algorithm>
#include <stdexcept>
#include <string>

#include "cssbp/decoders.hpp"

namespace cssbp {

DecoderKind decoder_from_name(std::string_view name) {
    if (name == "joint") return DecoderKind::Joint;
    if (name == "joint-llr") return DecoderKind::JointLlr;
    if (name == "separate") return DecoderKind::Separate;
    if (name == "four-state") return DecoderKind::FourState;
    throw std::invalid_argument("unknown decoder `" + std::string(name) +
                                "` (expected joint, joint-llr, separate, or four-state)");
}

std::string_view to_string(DecoderKind kind) {
    switch (kind) {
        case DecoderKind::Joint: return "joint";
        case DecoderKind::JointLlr: return "joint-llr";
        case DecoderKind::Separate: return "separate";
        case DecoderKind::FourState: return "four-state";
    }
    return "?";
}

void DecoderConfig::validate() const {
    if (max_iterations < 0) throw std::invalid_argument("max_iterations must be >= 0");
    if (!(epsilon >= 0.0 && epsilon <= 1e-3)) {
        throw std::invalid_argument("epsilon must lie in [0, 1e-3]");
    }
    if (!(minsum_scale > 0.0 && minsum_scale <= 1.0)) {
        throw std::invalid_argument("minsum_scale must lie in (0, 1]");
    }
    if (!(damping >= 0.0 && damping < 1.0)) {
        throw std::invalid_argument("damping must lie in [0, 1)");
    }
}

PauliError hard_decision(const BeliefTable& beliefs) {
    PauliError decision;
    decision.x.resize(beliefs.n());
    decision.z.resize(beliefs.n());
    for (int j = 0; j < beliefs.n(); ++j) {
        const Msg4& b = beliefs.tables[j];
        // Strict > keeps the first maximum, realizing the tie order
        // (0,0) < (1,0) < (0,1) < (1,1) — the label order 0,1,ω,ω².
        int best = 0;
        for (int idx = 1; idx < 4; ++idx) {
            if (b[idx] > b[best]) best = idx;
        }
        decision.x[j] = static_cast<std::uint8_t>(x_of_label(best));
        decision.z[j] = static_cast<std::uint8_t>(z_of_label(best));
    }
    return decision;
}

namespace {

bool syndromes_equal(const Syndromes& a, const Syndromes& b) {
    return a.s_z == b.s_z && a.s_x == b.s_x;
}

/// Per-iteration loop shared by the three joint-table decoders.
template <typename State, typename Step, typename Beliefs>
DecodeResult drive(const CssCode& code, const Syndromes& syndromes, const DecoderConfig& config,
                   DecoderKind kind, State& state, Step step, Beliefs beliefs_of) {
    DecodeResult result;
    result.decoder = kind;
    result.beliefs = beliefs_of(state);
    result.decision = hard_decision(result.beliefs);
    result.converged = syndromes_equal(syndrome(code, result.decision), syndromes);
    if (result.converged && config.early_stop) return result;
    for (int l = 1; l <= config.max_iterations; ++l) {
        step(state);
        result.iterations = l;
        result.beliefs = beliefs_of(state);
        result.decision = hard_decision(result.beliefs);
        result.converged = syndromes_equal(syndrome(code, result.decision), syndromes);
        if (result.converged && config.early_stop) break;
    }
    return result;
}

}  // namespace

DecodeResult decode(const CssCode& code, const PauliPrior& prior, const Syndromes& syndromes,
                    const DecoderConfig& config, DecoderKind kind) {
    config.validate();
    switch (kind) {
        case DecoderKind::Joint: {
            JointBpState state = init_joint(code, prior, syndromes, config);
            DecodeResult result =
                drive(code, syndromes, config, kind, state, joint_iterate,
                      [](const JointBpState& s) { return joint_beliefs(s); });
            result.componentwise = message_product_estimates(state);
            result.marginal = belief_marginal_estimates(result.beliefs);
            return result;
        }
        case DecoderKind::JointLlr: {
            LlrJointState state = init_llr_joint(code, prior, syndromes, config);
            DecodeResult result = drive(code, syndromes, config, kind, state, llr_iterate,
                                        [](const LlrJointState& s) { return llr_beliefs(s); });
            result.marginal = belief_marginal_estimates(result.beliefs);
            return result;
        }
        case DecoderKind::FourState: {
            FourStateState state = init_four_state(code, relabel_prior(prior), syndromes, config);
            DecodeResult result =
                drive(code, syndromes, config, kind, state, four_state_iterate,
                      [](const FourStateState& s) { return four_state_beliefs(s); });
            result.marginal = belief_marginal_estimates(result.beliefs);
            return result;
        }
        case DecoderKind::Separate: {
            SeparateResult sep = separate_decode(code, prior, syndromes, config);
            DecodeResult result;
            result.decoder = kind;
            result.beliefs.tables.resize(code.n);
            result.decision.x.resize(code.n);
            result.decision.z.resize(code.n);
            for (int j = 0; j < code.n; ++j) {
                // The separate decoder believes the components independent;
                // its joint table is the product of the two marginals.
                const Msg2& bx = sep.x.beliefs[j];
                const Msg2& bz = sep.z.beliefs[j];
                for (int idx = 0; idx < 4; ++idx) {
                    result.beliefs.tables[j][idx] = bx[x_of_label(idx)] * bz[z_of_label(idx)];
                }
                result.decision.x[j] = sep.x.bits[j];
                result.decision.z[j] = sep.z.bits[j];
            }
            result.iterations = std::max(sep.x.iterations, sep.z.iterations);
            result.converged = sep.x.converged && sep.z.converged;
            result.componentwise = result.decision;
            result.marginal = result.decision;
            return result;
        }
    }
    throw std::invalid_argument("unknown decoder kind");
}

}  // namespace cssbp
