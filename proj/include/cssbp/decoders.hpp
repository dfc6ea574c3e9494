#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cssbp/channel.hpp"
#include "cssbp/css_code.hpp"
#include "cssbp/tanner.hpp"

namespace cssbp {

using Msg2 = std::array<double, 2>;
using Msg4 = std::array<double, 4>;

enum class CheckRule { Exact, MinSum };
enum class DecoderKind { Joint, JointLlr, Separate, FourState };

DecoderKind decoder_from_name(std::string_view name);  // joint | joint-llr | separate | four-state
std::string_view to_string(DecoderKind kind);

/// Thrown when message passing produces an all-zero message (contradictory
/// hard evidence meeting a zero prior entry).
struct decode_fault : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecoderConfig {
    int max_iterations = 50;
    /// Probability-domain message floor, applied after normalization and
    /// followed by renormalization.  0 keeps exact zeros.
    double epsilon = 0.0;
    CheckRule check_rule = CheckRule::Exact;
    double minsum_scale = 1.0;   ///< scaling of min-sum check outputs, in (0,1]
    /// Damping on check-to-variable messages: geometric interpolation in the
    /// probability domain, convex combination of LLRs.  0 disables.
    double damping = 0.0;
    bool early_stop = true;      ///< stop once the decision reproduces the syndromes
    /// Saturation bound on LLR messages (tanh is flat beyond it and atanh
    /// would overflow).  <= 0 disables.  Probability-domain decoders ignore it.
    double llr_clamp = 30.0;

    void validate() const;  ///< throws std::invalid_argument on bad ranges
};

/// Per-qubit joint belief tables, indexed by pauli_index(x,z), which is also
/// the four-state label order.  Normalized to sum 1.
struct BeliefTable {
    std::vector<Msg4> tables;

    int n() const { return static_cast<int>(tables.size()); }
};

struct DecodeResult {
    BeliefTable beliefs;
    PauliError decision;       ///< per-qubit joint argmax
    int iterations = 0;
    bool converged = false;    ///< decision reproduces the input syndromes
    DecoderKind decoder = DecoderKind::Joint;
    std::optional<ResidualClass> residual;  ///< filled when the true error is known
    /// Componentwise estimates from check-message products (x̂, ẑ); distinct
    /// from the joint argmax when the prior correlates x and z.
    std::optional<PauliError> componentwise;
    /// Componentwise argmax of the belief marginals (x̄, z̄).
    std::optional<PauliError> marginal;
};

// ---------------------------------------------------------------------------
// Joint BP, probability domain.  Two binary Tanner graphs coupled through the
// local factor Q_j(x,z); messages on HX edges are about z_j, messages on HZ
// edges about x_j.

struct JointBpState {
    const CssCode* code = nullptr;
    const PauliPrior* prior = nullptr;
    Syndromes syndromes;
    DecoderConfig config;
    TannerGraph gx, gz;
    int iteration = 0;
    std::vector<Msg2> nu;       ///< z_j -> X-check, per gx edge
    std::vector<Msg2> nu_hat;   ///< X-check -> z_j
    std::vector<Msg2> mu;       ///< x_j -> Z-check, per gz edge
    std::vector<Msg2> mu_hat;   ///< Z-check -> x_j
};

JointBpState init_joint(const CssCode& code, const PauliPrior& prior,
                        const Syndromes& syndromes, const DecoderConfig& config = {});

/// One flooding iteration: all check updates, then all variable updates.
void joint_iterate(JointBpState& state);

/// Recomputes all variable-to-check messages from the current check messages
/// and the prior (used for custom initializations).
void joint_refresh_variables(JointBpState& state);

BeliefTable joint_beliefs(const JointBpState& state);

/// Per-qubit argmax with ties broken by the fixed order
/// (0,0) < (1,0) < (0,1) < (1,1).
PauliError hard_decision(const BeliefTable& beliefs);

/// (x̂, ẑ): argmax of the plain check-message products around each binary
/// variable, ignoring the local factor.
PauliError message_product_estimates(const JointBpState& state);

/// (x̄, z̄): argmax of the belief marginals.
PauliError belief_marginal_estimates(const BeliefTable& beliefs);

// ---------------------------------------------------------------------------
// Plain binary syndrome BP on one Tanner graph (the separate decoder runs two
// of these, one per component).

struct BinaryBpState {
    TannerGraph graph;
    std::vector<Msg2> prior;           ///< per variable
    std::vector<std::uint8_t> syndrome;
    DecoderConfig config;
    int iteration = 0;
    std::vector<Msg2> v2c;
    std::vector<Msg2> c2v;
};

BinaryBpState init_binary_bp(const RowSupports& rows, int vars, std::vector<Msg2> prior,
                             std::vector<std::uint8_t> syndrome,
                             const DecoderConfig& config = {});
void binary_iterate(BinaryBpState& state);
std::vector<Msg2> binary_beliefs(const BinaryBpState& state);

/// Result of one component of the separate decoder.
struct ComponentResult {
    std::vector<Msg2> beliefs;
    std::vector<std::uint8_t> bits;
    int iterations = 0;
    bool converged = false;
};

struct SeparateResult {
    ComponentResult x;  ///< decoded from (HZ, Q^X, s^X)
    ComponentResult z;  ///< decoded from (HX, Q^Z, s^Z)
};

SeparateResult separate_decode(const CssCode& code, const PauliPrior& prior,
                               const Syndromes& syndromes, const DecoderConfig& config = {});

// ---------------------------------------------------------------------------
// Four-state BP: one variable per qubit over the labels (0, 1, ω, ω²).
// X-type check factors read only z(α); Z-type factors read only x(α).

struct FourStateState {
    const CssCode* code = nullptr;
    FourStatePrior prior;
    Syndromes syndromes;
    DecoderConfig config;
    TannerGraph gx, gz;
    int iteration = 0;
    std::vector<Msg4> m_x;      ///< α_j -> X-check, per gx edge
    std::vector<Msg4> mhat_x;   ///< X-check -> α_j
    std::vector<Msg4> m_z;      ///< α_j -> Z-check, per gz edge
    std::vector<Msg4> mhat_z;   ///< Z-check -> α_j
};

FourStateState init_four_state(const CssCode& code, const FourStatePrior& prior,
                               const Syndromes& syndromes, const DecoderConfig& config = {});
void four_state_iterate(FourStateState& state);
void four_state_refresh_variables(FourStateState& state);
BeliefTable four_state_beliefs(const FourStateState& state);

// ---------------------------------------------------------------------------
// Joint BP in the LLR domain.  One scalar per edge; the local coupling is
// applied by marginalizing the 2x2 prior against the opposite component's
// accumulated evidence.

struct LlrJointState {
    const CssCode* code = nullptr;
    const PauliPrior* prior = nullptr;
    Syndromes syndromes;
    DecoderConfig config;
    TannerGraph gx, gz;
    int iteration = 0;
    std::vector<double> v2c_z;  ///< L_{j->i}^X per gx edge (about z_j)
    std::vector<double> c2v_z;  ///< L_{i->j}^X
    std::vector<double> v2c_x;  ///< L_{j->i}^Z per gz edge (about x_j)
    std::vector<double> c2v_x;  ///< L_{i->j}^Z
    std::vector<double> acc_x;  ///< A_j^X: sum of incoming X-check LLRs
    std::vector<double> acc_z;  ///< A_j^Z
};

LlrJointState init_llr_joint(const CssCode& code, const PauliPrior& prior,
                             const Syndromes& syndromes, const DecoderConfig& config = {});
void llr_iterate(LlrJointState& state);
BeliefTable llr_beliefs(const LlrJointState& state);

// ---------------------------------------------------------------------------

/// Runs the selected decoder to convergence or max_iterations.  With
/// max_iterations = 0 the result is the prior-only decision.
DecodeResult decode(const CssCode& code, const PauliPrior& prior, const Syndromes& syndromes,
                    const DecoderConfig& config, DecoderKind kind);

}  // namespace cssbp
