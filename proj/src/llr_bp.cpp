#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bp_detail.hpp"
#include "cssbp/decoders.hpp"

namespace cssbp {

namespace {

double clamp_llr(double value, double bound) {
    if (std::isnan(value)) throw decode_fault("LLR message is NaN (conflicting hard evidence)");
    if (bound <= 0.0) return value;
    if (value > bound) return bound;
    if (value < -bound) return -bound;
    return value;
}

void recompute_accumulators(LlrJointState& state) {
    const CssCode& code = *state.code;
    for (int j = 0; j < code.n; ++j) {
        double ax = 0.0;
        for (int e : state.gx.var_edges[j]) ax += state.c2v_z[e];
        state.acc_x[j] = ax;
        double az = 0.0;
        for (int e : state.gz.var_edges[j]) az += state.c2v_x[e];
        state.acc_z[j] = az;
    }
}

/// ρ(0), ρ(1) ∝ exp((1-b)·A): the normalized two-entry weights carried by an
/// accumulated LLR.
Msg2 weights_of_accumulator(double a) { return detail::msg_from_llr(a); }

void llr_variable_layer(LlrJointState& state) {
    const CssCode& code = *state.code;
    const auto& q = state.prior->tables;
    for (int j = 0; j < code.n; ++j) {
        const Msg2 rho_x = weights_of_accumulator(state.acc_x[j]);  // about z_j
        const Msg2 rho_z = weights_of_accumulator(state.acc_z[j]);  // about x_j

        // η^X(z) = Σ_x Q(x,z)·ρ^Z(x); the X-side extrinsic ratio.
        const double eta_x0 = q[j][pauli_index(0, 0)] * rho_z[0] + q[j][pauli_index(1, 0)] * rho_z[1];
        const double eta_x1 = q[j][pauli_index(0, 1)] * rho_z[0] + q[j][pauli_index(1, 1)] * rho_z[1];
        // η^Z(x) = Σ_z Q(x,z)·ρ^X(z).
        const double eta_z0 = q[j][pauli_index(0, 0)] * rho_x[0] + q[j][pauli_index(0, 1)] * rho_x[1];
        const double eta_z1 = q[j][pauli_index(1, 0)] * rho_x[0] + q[j][pauli_index(1, 1)] * rho_x[1];

        if (eta_x0 == 0.0 && eta_x1 == 0.0) throw decode_fault("joint prior row vanished (X side)");
        if (eta_z0 == 0.0 && eta_z1 == 0.0) throw decode_fault("joint prior row vanished (Z side)");
        const double local_x = std::log(eta_x0 / eta_x1);  // ±inf on zero entries
        const double local_z = std::log(eta_z0 / eta_z1);

        for (int e : state.gx.var_edges[j]) {
            double acc = 0.0;
            for (int other : state.gx.var_edges[j]) {
                if (other != e) acc += state.c2v_z[other];
            }
            state.v2c_z[e] = clamp_llr(acc + local_x, state.config.llr_clamp);
        }
        for (int e : state.gz.var_edges[j]) {
            double acc = 0.0;
            for (int other : state.gz.var_edges[j]) {
                if (other != e) acc += state.c2v_x[other];
            }
            state.v2c_x[e] = clamp_llr(acc + local_z, state.config.llr_clamp);
        }
    }
}

void llr_check_layer(const TannerGraph& g, const std::vector<std::uint8_t>& syndrome,
                     const DecoderConfig& config, const std::vector<double>& v2c,
                     std::vector<double>& c2v) {
    std::vector<double> incoming;
    for (int i = 0; i < g.checks; ++i) {
        const auto& edges = g.check_edges[i];
        incoming.resize(edges.size());
        for (std::size_t t = 0; t < edges.size(); ++t) incoming[t] = v2c[edges[t]];
        const double sign = syndrome[i] ? -1.0 : 1.0;
        for (std::size_t t = 0; t < edges.size(); ++t) {
            double fresh = config.check_rule == CheckRule::Exact
                               ? detail::boxplus_exclude(incoming, t)
                               : detail::minsum_exclude(incoming, t, config.minsum_scale);
            fresh *= sign;
            if (config.damping > 0.0) {
                fresh = config.damping * c2v[edges[t]] + (1.0 - config.damping) * fresh;
            }
            c2v[edges[t]] = clamp_llr(fresh, config.llr_clamp);
        }
    }
}

}  // namespace

LlrJointState init_llr_joint(const CssCode& code, const PauliPrior& prior,
                             const Syndromes& syndromes, const DecoderConfig& config) {
    config.validate();
    if (prior.n() != code.n) {
        throw std::invalid_argument("LLR joint BP: prior size does not match the code");
    }
    if (static_cast<int>(syndromes.s_z.size()) != code.mx ||
        static_cast<int>(syndromes.s_x.size()) != code.mz) {
        throw std::invalid_argument("LLR joint BP: syndrome lengths do not match the code");
    }
    LlrJointState state;
    state.code = &code;
    state.prior = &prior;
    state.syndromes = syndromes;
    state.config = config;
    state.gx = TannerGraph::build(code.hx_rows, code.n);
    state.gz = TannerGraph::build(code.hz_rows, code.n);
    state.c2v_z.assign(state.gx.edges(), 0.0);
    state.c2v_x.assign(state.gz.edges(), 0.0);
    state.v2c_z.resize(state.gx.edges());
    state.v2c_x.resize(state.gz.edges());
    state.acc_x.assign(code.n, 0.0);
    state.acc_z.assign(code.n, 0.0);
    llr_variable_layer(state);
    return state;
}

void llr_iterate(LlrJointState& state) {
    llr_check_layer(state.gx, state.syndromes.s_z, state.config, state.v2c_z, state.c2v_z);
    llr_check_layer(state.gz, state.syndromes.s_x, state.config, state.v2c_x, state.c2v_x);
    recompute_accumulators(state);
    llr_variable_layer(state);
    ++state.iteration;
}

BeliefTable llr_beliefs(const LlrJointState& state) {
    const CssCode& code = *state.code;
    const auto& q = state.prior->tables;
    BeliefTable beliefs;
    beliefs.tables.resize(code.n);
    for (int j = 0; j < code.n; ++j) {
        // B(x,z) = log Q(x,z) + (1-z)A^X + (1-x)A^Z, exponentiated around its
        // maximum; zero prior entries pass through as exact zeros.
        Msg4 log_b;
        double top = -std::numeric_limits<double>::infinity();
        for (int idx = 0; idx < 4; ++idx) {
            double v = std::log(q[j][idx]);
            // Terms added only when their coefficient is 1, so an unclamped
            // infinite accumulator never meets a zero coefficient.
            if (z_of_label(idx) == 0) v += state.acc_x[j];
            if (x_of_label(idx) == 0) v += state.acc_z[j];
            log_b[idx] = v;
            if (v > top) top = v;
        }
        if (!std::isfinite(top)) throw decode_fault("joint prior table vanished");
        Msg4 b;
        for (int idx = 0; idx < 4; ++idx) {
            b[idx] = std::exp(log_b[idx] - top);
        }
        detail::normalize4(b);
        beliefs.tables[j] = b;
    }
    return beliefs;
}

}  // namespace cssbp
