#include <stdexcept>
#include <vector>

#include "bp_detail.hpp"
#include "cssbp/decoders.hpp"

namespace cssbp {

using detail::check_update_row;
using detail::damp_geometric;
using detail::floor_messages;
using detail::normalize2;
using detail::normalize4;

namespace {

void check_joint_dimensions(const CssCode& code, const PauliPrior& prior,
                            const Syndromes& syndromes) {
    if (prior.n() != code.n) {
        throw std::invalid_argument("joint BP: prior size does not match the code");
    }
    if (static_cast<int>(syndromes.s_z.size()) != code.mx ||
        static_cast<int>(syndromes.s_x.size()) != code.mz) {
        throw std::invalid_argument("joint BP: syndrome lengths do not match the code");
    }
}

}  // namespace

JointBpState init_joint(const CssCode& code, const PauliPrior& prior, const Syndromes& syndromes,
                        const DecoderConfig& config) {
    config.validate();
    check_joint_dimensions(code, prior, syndromes);
    JointBpState state;
    state.code = &code;
    state.prior = &prior;
    state.syndromes = syndromes;
    state.config = config;
    state.gx = TannerGraph::build(code.hx_rows, code.n);
    state.gz = TannerGraph::build(code.hz_rows, code.n);
    state.nu_hat.assign(state.gx.edges(), Msg2{0.5, 0.5});
    state.mu_hat.assign(state.gz.edges(), Msg2{0.5, 0.5});
    state.nu.resize(state.gx.edges());
    state.mu.resize(state.gz.edges());
    joint_refresh_variables(state);
    return state;
}

void joint_refresh_variables(JointBpState& state) {
    const CssCode& code = *state.code;
    const auto& q = state.prior->tables;
    for (int j = 0; j < code.n; ++j) {
        const auto& x_edges = state.gx.var_edges[j];
        const auto& z_edges = state.gz.var_edges[j];

        // Message about z_j toward X-check edge e:
        //   ν(z) ∝ Σ_x Q(x,z) · Π_{k∈∂X_j∖e} ν̂_k(z) · Π_{k∈∂Z_j} μ̂_k(x).
        // The 4-entry working table mirrors the four-state variable update
        // factor-for-factor so the two decoders stay numerically aligned.
        for (int e : x_edges) {
            Msg4 u = q[j];
            for (int other : x_edges) {
                if (other == e) continue;
                for (int idx = 0; idx < 4; ++idx) u[idx] *= state.nu_hat[other][z_of_label(idx)];
            }
            for (int other : z_edges) {
                for (int idx = 0; idx < 4; ++idx) u[idx] *= state.mu_hat[other][x_of_label(idx)];
            }
            Msg2 m{u[pauli_index(0, 0)] + u[pauli_index(1, 0)],
                   u[pauli_index(0, 1)] + u[pauli_index(1, 1)]};
            normalize2(m);
            floor_messages(m, state.config.epsilon);
            state.nu[e] = m;
        }

        // Message about x_j toward Z-check edge e (mirror image).
        for (int e : z_edges) {
            Msg4 u = q[j];
            for (int other : x_edges) {
                for (int idx = 0; idx < 4; ++idx) u[idx] *= state.nu_hat[other][z_of_label(idx)];
            }
            for (int other : z_edges) {
                if (other == e) continue;
                for (int idx = 0; idx < 4; ++idx) u[idx] *= state.mu_hat[other][x_of_label(idx)];
            }
            Msg2 m{u[pauli_index(0, 0)] + u[pauli_index(0, 1)],
                   u[pauli_index(1, 0)] + u[pauli_index(1, 1)]};
            normalize2(m);
            floor_messages(m, state.config.epsilon);
            state.mu[e] = m;
        }
    }
}

namespace {

void joint_check_layer(JointBpState& state) {
    std::vector<Msg2> incoming, outgoing;
    const CssCode& code = *state.code;
    for (int i = 0; i < code.mx; ++i) {
        const auto& edges = state.gx.check_edges[i];
        incoming.resize(edges.size());
        for (std::size_t t = 0; t < edges.size(); ++t) incoming[t] = state.nu[edges[t]];
        check_update_row(incoming, state.syndromes.s_z[i], state.config.check_rule,
                         state.config.minsum_scale, outgoing);
        for (std::size_t t = 0; t < edges.size(); ++t) {
            Msg2 fresh = outgoing[t];
            damp_geometric(fresh, state.nu_hat[edges[t]], state.config.damping);
            floor_messages(fresh, state.config.epsilon);
            state.nu_hat[edges[t]] = fresh;
        }
    }
    for (int i = 0; i < code.mz; ++i) {
        const auto& edges = state.gz.check_edges[i];
        incoming.resize(edges.size());
        for (std::size_t t = 0; t < edges.size(); ++t) incoming[t] = state.mu[edges[t]];
        check_update_row(incoming, state.syndromes.s_x[i], state.config.check_rule,
                         state.config.minsum_scale, outgoing);
        for (std::size_t t = 0; t < edges.size(); ++t) {
            Msg2 fresh = outgoing[t];
            damp_geometric(fresh, state.mu_hat[edges[t]], state.config.damping);
            floor_messages(fresh, state.config.epsilon);
            state.mu_hat[edges[t]] = fresh;
        }
    }
}

}  // namespace

void joint_iterate(JointBpState& state) {
    joint_check_layer(state);
    joint_refresh_variables(state);
    ++state.iteration;
}

BeliefTable joint_beliefs(const JointBpState& state) {
    const CssCode& code = *state.code;
    const auto& q = state.prior->tables;
    BeliefTable beliefs;
    beliefs.tables.resize(code.n);
    for (int j = 0; j < code.n; ++j) {
        Msg4 b = q[j];
        for (int e : state.gx.var_edges[j]) {
            for (int idx = 0; idx < 4; ++idx) b[idx] *= state.nu_hat[e][z_of_label(idx)];
        }
        for (int e : state.gz.var_edges[j]) {
            for (int idx = 0; idx < 4; ++idx) b[idx] *= state.mu_hat[e][x_of_label(idx)];
        }
        normalize4(b);
        beliefs.tables[j] = b;
    }
    return beliefs;
}

PauliError message_product_estimates(const JointBpState& state) {
    const CssCode& code = *state.code;
    PauliError estimate;
    estimate.x.resize(code.n);
    estimate.z.resize(code.n);
    for (int j = 0; j < code.n; ++j) {
        Msg2 pz{1.0, 1.0};
        for (int e : state.gx.var_edges[j]) {
            pz[0] *= state.nu_hat[e][0];
            pz[1] *= state.nu_hat[e][1];
        }
        Msg2 px{1.0, 1.0};
        for (int e : state.gz.var_edges[j]) {
            px[0] *= state.mu_hat[e][0];
            px[1] *= state.mu_hat[e][1];
        }
        estimate.z[j] = pz[1] > pz[0] ? 1 : 0;
        estimate.x[j] = px[1] > px[0] ? 1 : 0;
    }
    return estimate;
}

PauliError belief_marginal_estimates(const BeliefTable& beliefs) {
    PauliError estimate;
    estimate.x.resize(beliefs.n());
    estimate.z.resize(beliefs.n());
    for (int j = 0; j < beliefs.n(); ++j) {
        const Msg4& b = beliefs.tables[j];
        const double x1 = b[pauli_index(1, 0)] + b[pauli_index(1, 1)];
        const double x0 = b[pauli_index(0, 0)] + b[pauli_index(0, 1)];
        const double z1 = b[pauli_index(0, 1)] + b[pauli_index(1, 1)];
        const double z0 = b[pauli_index(0, 0)] + b[pauli_index(1, 0)];
        estimate.x[j] = x1 > x0 ? 1 : 0;
        estimate.z[j] = z1 > z0 ? 1 : 0;
    }
    return estimate;
}

}  // namespace cssbp
