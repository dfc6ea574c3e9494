#pragma once

#include <cstdint>
#include <vector>

#include "cssbp/channel.hpp"
#include "cssbp/css_code.hpp"
#include "cssbp/decoders.hpp"

namespace cssbp {

/// How to seed a paired run.  Uniform starts both decoders from uniform
/// check-to-variable messages.  FourStateFirst draws random check messages
/// that are constant in the component the emitting check ignores (the
/// compatible family) and mirrors their binary marginals into the joint
/// decoder.
enum class PairedInit { Uniform, FourStateFirst };

struct PairedOptions {
    int iterations = 20;
    /// Check rules may differ between the two sides; the identities are
    /// expected to hold only when the same rule (and damping) is applied to
    /// both — mismatched settings are the negative control.
    CheckRule joint_rule = CheckRule::Exact;
    CheckRule four_state_rule = CheckRule::Exact;
    double joint_damping = 0.0;
    double four_state_damping = 0.0;
    double minsum_scale = 1.0;
    PairedInit init = PairedInit::Uniform;
    std::uint64_t init_seed = 0;  ///< used by FourStateFirst
};

/// Message correspondence at one flooding iteration (all values sup-norms
/// over edges/qubits and states, on normalized representatives).
struct IterationDeviation {
    int iteration = 0;
    double check_x = 0.0;     ///< m̂(φ(x,z)) vs ν̂(z) on HX edges
    double check_z = 0.0;     ///< m̂(φ(x,z)) vs μ̂(x) on HZ edges
    double var_x = 0.0;       ///< Σ_x m(φ(x,z)) vs ν(z) on HX edges
    double var_z = 0.0;       ///< Σ_z m(φ(x,z)) vs μ(x) on HZ edges
    double belief = 0.0;      ///< b4(φ(x,z)) vs b2(x,z), per qubit
    double constancy = 0.0;   ///< spread of four-state check messages in the ignored component
    bool decisions_match = true;
    double max_message() const;  ///< max of the check/var deviations
};

struct EquivalenceReport {
    std::vector<IterationDeviation> per_iteration;
    double max_deviation = 0.0;           ///< over all iterations: messages and beliefs
    double max_belief_deviation = 0.0;
    double max_check_deviation = 0.0;
    double max_var_deviation = 0.0;
    double max_constancy_defect = 0.0;
    bool decisions_match = true;  ///< argmax correspondence at every iteration
    int iterations = 0;
};

/// Runs joint BP and four-state BP in lockstep (fixed iteration count, no
/// early stop) from a compatible start and compares messages, beliefs, and
/// hard decisions after every iteration.
EquivalenceReport run_paired(const CssCode& code, const PauliPrior& prior,
                             const Syndromes& syndromes, const PairedOptions& options = {});

/// Deviations of one four-state message from one binary message.
/// `x_type_edge` selects the edge family: on an X-check edge the binary
/// message concerns z and the four-state message must be constant in x(α);
/// on a Z-check edge the roles swap.  Inputs must be normalized.
struct MessageDeviation {
    double constancy_defect = 0.0;  ///< spread along the ignored component
    double deviation = 0.0;         ///< sup-norm after marginalize + renormalize
};

MessageDeviation check_message_identity(const Msg4& four_msg, const Msg2& binary_msg,
                                        bool x_type_edge);

/// Structure of the check layer in isolation: feeds both check layers the
/// same randomly drawn (lifted) variable messages and measures the
/// relabeling identity outside any decoding loop.
struct CheckLayerIdentity {
    double constancy_defect = 0.0;
    double deviation = 0.0;
};

CheckLayerIdentity check_layer_identity(const CssCode& code, const Syndromes& syndromes,
                                        std::uint64_t seed, CheckRule rule = CheckRule::Exact);

/// True when the two belief tables pick corresponding per-qubit assignments
/// (α̂ = φ(x̃, z̃)) under the shared tie order (0,0) < (1,0) < (0,1) < (1,1).
bool hard_decision_correspondence(const BeliefTable& joint, const BeliefTable& four_state);

}  // namespace cssbp
