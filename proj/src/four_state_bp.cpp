#include <stdexcept>
#include <vector>

#include "bp_detail.hpp"
#include "cssbp/decoders.hpp"

namespace cssbp {

using detail::check_update_row;
using detail::damp_geometric;
using detail::floor_messages;
using detail::normalize4;

FourStateState init_four_state(const CssCode& code, const FourStatePrior& prior,
                               const Syndromes& syndromes, const DecoderConfig& config) {
    config.validate();
    if (prior.n() != code.n) {
        throw std::invalid_argument("four-state BP: prior size does not match the code");
    }
    if (static_cast<int>(syndromes.s_z.size()) != code.mx ||
        static_cast<int>(syndromes.s_x.size()) != code.mz) {
        throw std::invalid_argument("four-state BP: syndrome lengths do not match the code");
    }
    FourStateState state;
    state.code = &code;
    state.prior = prior;
    state.syndromes = syndromes;
    state.config = config;
    state.gx = TannerGraph::build(code.hx_rows, code.n);
    state.gz = TannerGraph::build(code.hz_rows, code.n);
    state.mhat_x.assign(state.gx.edges(), Msg4{0.25, 0.25, 0.25, 0.25});
    state.mhat_z.assign(state.gz.edges(), Msg4{0.25, 0.25, 0.25, 0.25});
    state.m_x.resize(state.gx.edges());
    state.m_z.resize(state.gz.edges());
    four_state_refresh_variables(state);
    return state;
}

void four_state_refresh_variables(FourStateState& state) {
    const CssCode& code = *state.code;
    const auto& q = state.prior.tables;
    for (int j = 0; j < code.n; ++j) {
        const auto& x_edges = state.gx.var_edges[j];
        const auto& z_edges = state.gz.var_edges[j];
        // m_{j→i}(α) ∝ Q^φ(α) · Π over the other incident edges of the
        // incoming 4-entry messages; same factor order as the joint decoder.
        for (int e : x_edges) {
            Msg4 t = q[j];
            for (int other : x_edges) {
                if (other == e) continue;
                for (int s = 0; s < 4; ++s) t[s] *= state.mhat_x[other][s];
            }
            for (int other : z_edges) {
                for (int s = 0; s < 4; ++s) t[s] *= state.mhat_z[other][s];
            }
            normalize4(t);
            floor_messages(t, state.config.epsilon);
            state.m_x[e] = t;
        }
        for (int e : z_edges) {
            Msg4 t = q[j];
            for (int other : x_edges) {
                for (int s = 0; s < 4; ++s) t[s] *= state.mhat_x[other][s];
            }
            for (int other : z_edges) {
                if (other == e) continue;
                for (int s = 0; s < 4; ++s) t[s] *= state.mhat_z[other][s];
            }
            normalize4(t);
            floor_messages(t, state.config.epsilon);
            state.m_z[e] = t;
        }
    }
}

namespace {

/// One check layer over a row set whose factors read only one binary
/// component of the label: incoming 4-vectors reduce to that component,
/// the binary parity update runs, and outputs lift back (constant in the
/// ignored component).  `z_component` selects which component the factor
/// reads: true for X-type checks, false for Z-type.
void four_state_check_layer(const TannerGraph& g, const std::vector<std::uint8_t>& syndrome,
                            bool z_component, const DecoderConfig& config,
                            const std::vector<Msg4>& var_msgs, std::vector<Msg4>& check_msgs) {
    std::vector<Msg2> incoming, outgoing;
    for (int i = 0; i < g.checks; ++i) {
        const auto& edges = g.check_edges[i];
        incoming.resize(edges.size());
        for (std::size_t t = 0; t < edges.size(); ++t) {
            const Msg4& m = var_msgs[edges[t]];
            if (z_component) {
                // group labels by z(α): {0,1} vs {ω,ω²}
                incoming[t] = Msg2{m[0] + m[1], m[2] + m[3]};
            } else {
                // group labels by x(α): {0,ω} vs {1,ω²}
                incoming[t] = Msg2{m[0] + m[2], m[1] + m[3]};
            }
        }
        check_update_row(incoming, syndrome[i], config.check_rule, config.minsum_scale, outgoing);
        for (std::size_t t = 0; t < edges.size(); ++t) {
            // Lift: the outgoing factor message is a function of the read
            // component only; halving keeps the 4-vector normalized.
            const Msg2& o = outgoing[t];
            Msg4 fresh;
            for (int s = 0; s < 4; ++s) {
                const int bit = z_component ? z_of_label(s) : x_of_label(s);
                fresh[s] = o[bit] * 0.5;
            }
            damp_geometric(fresh, check_msgs[edges[t]], config.damping);
            floor_messages(fresh, config.epsilon);
            check_msgs[edges[t]] = fresh;
        }
    }
}

}  // namespace

void four_state_iterate(FourStateState& state) {
    four_state_check_layer(state.gx, state.syndromes.s_z, /*z_component=*/true, state.config,
                           state.m_x, state.mhat_x);
    four_state_check_layer(state.gz, state.syndromes.s_x, /*z_component=*/false, state.config,
                           state.m_z, state.mhat_z);
    four_state_refresh_variables(state);
    ++state.iteration;
}

BeliefTable four_state_beliefs(const FourStateState& state) {
    const CssCode& code = *state.code;
    BeliefTable beliefs;
    beliefs.tables.resize(code.n);
    for (int j = 0; j < code.n; ++j) {
        Msg4 b = state.prior.tables[j];
        for (int e : state.gx.var_edges[j]) {
            for (int s = 0; s < 4; ++s) b[s] *= state.mhat_x[e][s];
        }
        for (int e : state.gz.var_edges[j]) {
            for (int s = 0; s < 4; ++s) b[s] *= state.mhat_z[e][s];
        }
        normalize4(b);
        beliefs.tables[j] = b;
    }
    return beliefs;
}

}  // namespace cssbp
