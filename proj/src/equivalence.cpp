#include "cssbp/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "bp_detail.hpp"

namespace cssbp {

double IterationDeviation::max_message() const {
    return std::max({check_x, check_z, var_x, var_z});
}

MessageDeviation check_message_identity(const Msg4& four_msg, const Msg2& binary_msg, bool x_type_edge) {
    // On an X-type edge the factor reads z(α): labels {0,1} share z=0 and
    // {ω,ω²} share z=1, so the message must be constant inside each pair and
    // its pair sums must reproduce the binary message.  On a Z-type edge the
    // pairs are {0,ω} and {1,ω²} (shared x).
    const int pair0[2] = {0, x_type_edge ? 1 : 2};
    const int pair1[2] = {x_type_edge ? 2 : 1, 3};

    MessageDeviation out;
    out.constancy_defect = std::max(std::abs(four_msg[pair0[0]] - four_msg[pair0[1]]),
                                    std::abs(four_msg[pair1[0]] - four_msg[pair1[1]]));
    Msg2 marginal{four_msg[pair0[0]] + four_msg[pair0[1]], four_msg[pair1[0]] + four_msg[pair1[1]]};
    detail::normalize2(marginal);
    out.deviation =
        std::max(std::abs(marginal[0] - binary_msg[0]), std::abs(marginal[1] - binary_msg[1]));
    return out;
}

namespace {

struct LayerDeviation {
    double deviation = 0.0;
    double constancy = 0.0;
};

LayerDeviation compare_messages(const std::vector<Msg4>& four, const std::vector<Msg2>& binary,
                                bool x_type_edge, bool track_constancy) {
    LayerDeviation out;
    for (std::size_t e = 0; e < four.size(); ++e) {
        MessageDeviation d = check_message_identity(four[e], binary[e], x_type_edge);
        out.deviation = std::max(out.deviation, d.deviation);
        if (track_constancy) out.constancy = std::max(out.constancy, d.constancy_defect);
    }
    return out;
}

/// Random strictly positive normalized 2-vector.
Msg2 random_msg2(std::mt19937_64& engine) {
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    const double p = unit(engine);
    return Msg2{p, 1.0 - p};
}

}  // namespace

EquivalenceReport run_paired(const CssCode& code, const PauliPrior& prior,
                             const Syndromes& syndromes, const PairedOptions& options) {
    if (options.iterations < 0) throw std::invalid_argument("iterations must be >= 0");

    DecoderConfig joint_config;
    joint_config.max_iterations = options.iterations;
    joint_config.check_rule = options.joint_rule;
    joint_config.damping = options.joint_damping;
    joint_config.minsum_scale = options.minsum_scale;
    joint_config.early_stop = false;
    DecoderConfig four_config = joint_config;
    four_config.check_rule = options.four_state_rule;
    four_config.damping = options.four_state_damping;

    JointBpState joint = init_joint(code, prior, syndromes, joint_config);
    FourStateState four = init_four_state(code, relabel_prior(prior), syndromes, four_config);

    if (options.init == PairedInit::FourStateFirst) {
        // Draw four-state check messages constant in the ignored component,
        // then hand the binary side their marginals — the compatible family.
        std::mt19937_64 engine(options.init_seed);
        for (int e = 0; e < joint.gx.edges(); ++e) {
            const Msg2 w = random_msg2(engine);
            four.mhat_x[e] = Msg4{w[0] * 0.5, w[0] * 0.5, w[1] * 0.5, w[1] * 0.5};
            joint.nu_hat[e] = w;
        }
        for (int e = 0; e < joint.gz.edges(); ++e) {
            const Msg2 w = random_msg2(engine);
            four.mhat_z[e] = Msg4{w[0] * 0.5, w[1] * 0.5, w[0] * 0.5, w[1] * 0.5};
            joint.mu_hat[e] = w;
        }
        joint_refresh_variables(joint);
        four_state_refresh_variables(four);
    }

    EquivalenceReport report;
    report.iterations = options.iterations;
    for (int l = 1; l <= options.iterations; ++l) {
        joint_iterate(joint);
        four_state_iterate(four);

        IterationDeviation dev;
        dev.iteration = l;
        LayerDeviation cx = compare_messages(four.mhat_x, joint.nu_hat, true, true);
        LayerDeviation cz = compare_messages(four.mhat_z, joint.mu_hat, false, true);
        LayerDeviation vx = compare_messages(four.m_x, joint.nu, true, false);
        LayerDeviation vz = compare_messages(four.m_z, joint.mu, false, false);
        dev.check_x = cx.deviation;
        dev.check_z = cz.deviation;
        dev.var_x = vx.deviation;
        dev.var_z = vz.deviation;
        dev.constancy = std::max(cx.constancy, cz.constancy);

        const BeliefTable b2 = joint_beliefs(joint);
        const BeliefTable b4 = four_state_beliefs(four);
        for (int j = 0; j < code.n; ++j) {
            for (int idx = 0; idx < 4; ++idx) {
                // φ is the identity on packed indices, so beliefs compare
                // entry-for-entry.
                dev.belief =
                    std::max(dev.belief, std::abs(b4.tables[j][idx] - b2.tables[j][idx]));
            }
        }
        dev.decisions_match = hard_decision_correspondence(b2, b4);

        report.max_check_deviation = std::max(report.max_check_deviation,
                                              std::max(dev.check_x, dev.check_z));
        report.max_var_deviation =
            std::max(report.max_var_deviation, std::max(dev.var_x, dev.var_z));
        report.max_belief_deviation = std::max(report.max_belief_deviation, dev.belief);
        report.max_constancy_defect = std::max(report.max_constancy_defect, dev.constancy);
        report.max_deviation =
            std::max({report.max_deviation, dev.max_message(), dev.belief});
        report.decisions_match = report.decisions_match && dev.decisions_match;
        report.per_iteration.push_back(dev);
    }
    return report;
}

CheckLayerIdentity check_layer_identity(const CssCode& code, const Syndromes& syndromes,
                                        std::uint64_t seed, CheckRule rule) {
    if (static_cast<int>(syndromes.s_z.size()) != code.mx ||
        static_cast<int>(syndromes.s_x.size()) != code.mz) {
        throw std::invalid_argument("check_layer_identity: syndrome lengths do not match");
    }
    std::mt19937_64 engine(seed);
    DecoderConfig config;
    config.check_rule = rule;

    CheckLayerIdentity result;
    auto run_side = [&](const RowSupports& rows, const std::vector<std::uint8_t>& syndrome,
                        bool x_type_edge) {
        TannerGraph g = TannerGraph::build(rows, code.n);
        std::vector<Msg2> incoming2, out2;
        std::vector<Msg2> all_binary(g.edges());
        std::vector<Msg4> all_four(g.edges());
        for (int e = 0; e < g.edges(); ++e) {
            const Msg2 w = random_msg2(engine);
            all_binary[e] = w;
            // Lift to the constant-in-ignored-component 4-vector.
            all_four[e] = x_type_edge ? Msg4{w[0] * 0.5, w[0] * 0.5, w[1] * 0.5, w[1] * 0.5}
                                      : Msg4{w[0] * 0.5, w[1] * 0.5, w[0] * 0.5, w[1] * 0.5};
        }
        auto reduce = [&](const Msg4& m) {
            return x_type_edge ? Msg2{m[0] + m[1], m[2] + m[3]} : Msg2{m[0] + m[2], m[1] + m[3]};
        };
        for (int i = 0; i < g.checks; ++i) {
            const auto& edges = g.check_edges[i];
            incoming2.resize(edges.size());
            for (std::size_t t = 0; t < edges.size(); ++t) {
                incoming2[t] = all_binary[edges[t]];
            }
            detail::check_update_row(incoming2, syndrome[i], rule, config.minsum_scale, out2);

            // Four-state side: reduce the lifted messages to the component
            // the factor reads, update, lift back.
            std::vector<Msg2> reduced4(edges.size());
            for (std::size_t t = 0; t < edges.size(); ++t) {
                reduced4[t] = reduce(all_four[edges[t]]);
            }
            std::vector<Msg2> out4;
            detail::check_update_row(reduced4, syndrome[i], rule, config.minsum_scale, out4);
            for (std::size_t t = 0; t < edges.size(); ++t) {
                Msg4 lifted = x_type_edge
                                  ? Msg4{out4[t][0] * 0.5, out4[t][0] * 0.5, out4[t][1] * 0.5,
                                         out4[t][1] * 0.5}
                                  : Msg4{out4[t][0] * 0.5, out4[t][1] * 0.5, out4[t][0] * 0.5,
                                         out4[t][1] * 0.5};
                MessageDeviation d = check_message_identity(lifted, out2[t], x_type_edge);
                result.deviation = std::max(result.deviation, d.deviation);
                result.constancy_defect = std::max(result.constancy_defect, d.constancy_defect);
            }
        }
    };
    run_side(code.hx_rows, syndromes.s_z, true);
    run_side(code.hz_rows, syndromes.s_x, false);
    return result;
}

bool hard_decision_correspondence(const BeliefTable& joint, const BeliefTable& four_state) {
    if (joint.n() != four_state.n()) {
        throw std::invalid_argument("hard_decision_correspondence: table sizes differ");
    }
    // Both argmax routines share the packed index order, which is the common
    // tie order; correspondence is equality of the winning indices.
    const PauliError a = hard_decision(joint);
    const PauliError b = hard_decision(four_state);
    return a.x == b.x && a.z == b.z;
}

}  // namespace cssbp
