#include "cssbp/oracle.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cssbp {

namespace {

bool matches_syndromes(const CssCode& code, const PauliError& error, const Syndromes& target) {
    const Syndromes got = syndrome(code, error);
    return got.s_z == target.s_z && got.s_x == target.s_x;
}

}  // namespace

double weight_p2(const CssCode& code, const PauliPrior& prior, const PauliError& error,
                 const Syndromes& syndromes) {
    if (static_cast<int>(prior.n()) != code.n) {
        throw std::invalid_argument("weight_p2: prior size does not match the code");
    }
    if (error.x.size() != prior.tables.size() || error.z.size() != prior.tables.size()) {
        throw std::invalid_argument("weight_p2: error length does not match the prior");
    }
    if (!matches_syndromes(code, error, syndromes)) return 0.0;
    double weight = 1.0;
    for (std::size_t j = 0; j < prior.tables.size(); ++j) {
        weight *= prior.tables[j][pauli_index(error.x[j], error.z[j])];
    }
    return weight;
}

double weight_p4(const CssCode& code, const FourStatePrior& prior,
                 const std::vector<std::uint8_t>& labels, const Syndromes& syndromes) {
    if (static_cast<int>(prior.n()) != code.n) {
        throw std::invalid_argument("weight_p4: prior size does not match the code");
    }
    if (labels.size() != prior.tables.size()) {
        throw std::invalid_argument("weight_p4: label vector length does not match the prior");
    }
    PauliError error;
    error.x.resize(labels.size());
    error.z.resize(labels.size());
    for (std::size_t j = 0; j < labels.size(); ++j) {
        if (labels[j] > 3) throw std::invalid_argument("weight_p4: label out of range 0..3");
        error.x[j] = x_of_label(labels[j]);
        error.z[j] = z_of_label(labels[j]);
    }
    if (!matches_syndromes(code, error, syndromes)) return 0.0;
    double weight = 1.0;
    for (std::size_t j = 0; j < labels.size(); ++j) {
        weight *= prior.tables[j][labels[j]];
    }
    return weight;
}

BeliefTable exact_marginals(const CssCode& code, const PauliPrior& prior,
                            const Syndromes& syndromes, int limit) {
    if (code.n > limit) {
        throw std::invalid_argument("exact_marginals: n = " + std::to_string(code.n) +
                                    " exceeds the enumeration limit " + std::to_string(limit));
    }
    if (prior.n() != code.n) {
        throw std::invalid_argument("exact_marginals: prior size does not match the code");
    }
    if (static_cast<int>(syndromes.s_z.size()) != code.mx ||
        static_cast<int>(syndromes.s_x.size()) != code.mz) {
        throw std::invalid_argument("exact_marginals: syndrome lengths do not match the code");
    }

    // Enumerate all 4^n assignments in Gray-code order over 2n bits
    // (bit 2j = x_j, bit 2j+1 = z_j); one bit flips per step, so the number
    // of violated checks updates incrementally.
    const int bits = 2 * code.n;
    PauliError assign;
    assign.x.assign(code.n, 0);
    assign.z.assign(code.n, 0);
    std::vector<std::uint8_t> z_parity(code.mx, 0), x_parity(code.mz, 0);

    int violations = 0;
    for (int i = 0; i < code.mx; ++i) violations += syndromes.s_z[i] != 0;
    for (int i = 0; i < code.mz; ++i) violations += syndromes.s_x[i] != 0;

    std::vector<std::vector<double>> mass(code.n, std::vector<double>(4, 0.0));
    double total = 0.0;

    const std::uint64_t count = std::uint64_t{1} << bits;
    for (std::uint64_t step = 0;; ++step) {
        if (violations == 0) {
            // Fresh product per admissible assignment (ascending j) keeps
            // weights bit-identical to weight_p2 of the same assignment.
            double weight = 1.0;
            for (int j = 0; j < code.n; ++j) {
                weight *= prior.tables[j][pauli_index(assign.x[j], assign.z[j])];
            }
            total += weight;
            for (int j = 0; j < code.n; ++j) {
                mass[j][pauli_index(assign.x[j], assign.z[j])] += weight;
            }
        }
        if (step + 1 == count) break;

        // Gray step: flip the bit at the position of the lowest set bit of
        // step+1, and patch the affected check parities.
        const int bit = std::countr_zero(step + 1);
        const int j = bit / 2;
        if (bit % 2 == 0) {
            assign.x[j] ^= 1;
            for (int i : code.hz_cols[j]) {
                // A flip toggles the check between satisfied and violated.
                violations += (x_parity[i] != syndromes.s_x[i]) ? -1 : 1;
                x_parity[i] ^= 1;
            }
        } else {
            assign.z[j] ^= 1;
            for (int i : code.hx_cols[j]) {
                violations += (z_parity[i] != syndromes.s_z[i]) ? -1 : 1;
                z_parity[i] ^= 1;
            }
        }
    }

    if (!(total > 0.0)) {
        throw std::runtime_error("exact_marginals: no assignment carries posterior mass "
                                 "(syndrome impossible under this prior)");
    }
    BeliefTable result;
    result.tables.resize(code.n);
    for (int j = 0; j < code.n; ++j) {
        for (int idx = 0; idx < 4; ++idx) result.tables[j][idx] = mass[j][idx] / total;
    }
    return result;
}

}  // namespace cssbp
