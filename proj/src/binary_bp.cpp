#include <stdexcept>
#include <string>
#include <vector>

#include "bp_detail.hpp"
#include "cssbp/decoders.hpp"

namespace cssbp {

using detail::check_update_row;
using detail::damp_geometric;
using detail::floor_messages;
using detail::normalize2;

BinaryBpState init_binary_bp(const RowSupports& rows, int vars, std::vector<Msg2> prior,
                             std::vector<std::uint8_t> syndrome, const DecoderConfig& config) {
    config.validate();
    if (static_cast<int>(prior.size()) != vars) {
        throw std::invalid_argument("binary BP: prior length does not match variable count");
    }
    if (syndrome.size() != rows.size()) {
        throw std::invalid_argument("binary BP: syndrome length does not match check count");
    }
    BinaryBpState state;
    state.graph = TannerGraph::build(rows, vars);
    state.prior = std::move(prior);
    for (auto& m : state.prior) normalize2(m);
    state.syndrome = std::move(syndrome);
    state.config = config;
    state.c2v.assign(state.graph.edges(), Msg2{0.5, 0.5});
    state.v2c.resize(state.graph.edges());
    for (int e = 0; e < state.graph.edges(); ++e) {
        state.v2c[e] = state.prior[state.graph.edge_var[e]];
    }
    return state;
}

namespace {

void binary_check_layer(BinaryBpState& state) {
    const TannerGraph& g = state.graph;
    std::vector<Msg2> incoming, outgoing;
    for (int i = 0; i < g.checks; ++i) {
        const auto& edges = g.check_edges[i];
        incoming.resize(edges.size());
        for (std::size_t t = 0; t < edges.size(); ++t) incoming[t] = state.v2c[edges[t]];
        check_update_row(incoming, state.syndrome[i], state.config.check_rule,
                         state.config.minsum_scale, outgoing);
        for (std::size_t t = 0; t < edges.size(); ++t) {
            Msg2 fresh = outgoing[t];
            damp_geometric(fresh, state.c2v[edges[t]], state.config.damping);
            floor_messages(fresh, state.config.epsilon);
            state.c2v[edges[t]] = fresh;
        }
    }
}

void binary_variable_layer(BinaryBpState& state) {
    const TannerGraph& g = state.graph;
    for (int j = 0; j < g.vars; ++j) {
        const auto& edges = g.var_edges[j];
        for (int e : edges) {
            Msg2 m = state.prior[j];
            for (int other : edges) {
                if (other == e) continue;
                m[0] *= state.c2v[other][0];
                m[1] *= state.c2v[other][1];
            }
            normalize2(m);
            floor_messages(m, state.config.epsilon);
            state.v2c[e] = m;
        }
    }
}

}  // namespace

void binary_iterate(BinaryBpState& state) {
    binary_check_layer(state);
    binary_variable_layer(state);
    ++state.iteration;
}

std::vector<Msg2> binary_beliefs(const BinaryBpState& state) {
    const TannerGraph& g = state.graph;
    std::vector<Msg2> beliefs(g.vars);
    for (int j = 0; j < g.vars; ++j) {
        Msg2 b = state.prior[j];
        for (int e : g.var_edges[j]) {
            b[0] *= state.c2v[e][0];
            b[1] *= state.c2v[e][1];
        }
        normalize2(b);
        beliefs[j] = b;
    }
    return beliefs;
}

namespace {

std::vector<std::uint8_t> bits_of(const std::vector<Msg2>& beliefs) {
    std::vector<std::uint8_t> bits(beliefs.size());
    for (std::size_t j = 0; j < beliefs.size(); ++j) {
        bits[j] = beliefs[j][1] > beliefs[j][0] ? 1 : 0;  // ties resolve to 0
    }
    return bits;
}

bool syndrome_matches(const RowSupports& rows, const std::vector<std::uint8_t>& bits,
                      const std::vector<std::uint8_t>& syndrome) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::uint8_t parity = 0;
        for (int j : rows[i]) parity ^= bits[j];
        if (parity != syndrome[i]) return false;
    }
    return true;
}

ComponentResult run_component(const RowSupports& rows, int vars, std::vector<Msg2> prior,
                              std::vector<std::uint8_t> syndrome, const DecoderConfig& config) {
    BinaryBpState state = init_binary_bp(rows, vars, std::move(prior), std::move(syndrome), config);
    ComponentResult result;
    result.beliefs = binary_beliefs(state);
    result.bits = bits_of(result.beliefs);
    result.converged = syndrome_matches(rows, result.bits, state.syndrome);
    if (result.converged && config.early_stop) return result;
    for (int l = 1; l <= config.max_iterations; ++l) {
        binary_iterate(state);
        result.beliefs = binary_beliefs(state);
        result.bits = bits_of(result.beliefs);
        result.iterations = l;
        result.converged = syndrome_matches(rows, result.bits, state.syndrome);
        if (result.converged && config.early_stop) break;
    }
    return result;
}

}  // namespace

SeparateResult separate_decode(const CssCode& code, const PauliPrior& prior,
                               const Syndromes& syndromes, const DecoderConfig& config) {
    config.validate();
    if (prior.n() != code.n) {
        throw std::invalid_argument("separate decode: prior size does not match the code");
    }
    if (static_cast<int>(syndromes.s_z.size()) != code.mx ||
        static_cast<int>(syndromes.s_x.size()) != code.mz) {
        throw std::invalid_argument("separate decode: syndrome lengths do not match the code");
    }
    Marginals m = marginals(prior);
    SeparateResult result;
    result.x = run_component(code.hz_rows, code.n, std::move(m.qx), syndromes.s_x, config);
    result.z = run_component(code.hx_rows, code.n, std::move(m.qz), syndromes.s_z, config);
    return result;
}

}  // namespace cssbp
