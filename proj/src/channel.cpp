#include "cssbp/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace cssbp {

namespace {

void check_table(const std::array<double, 4>& table, int qubit) {
    double sum = 0.0;
    for (double v : table) {
        if (!(v >= 0.0)) {  // also catches NaN
            throw std::invalid_argument("prior table for qubit " + std::to_string(qubit + 1) +
                                        " has a negative or non-finite entry");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("prior table for qubit " + std::to_string(qubit + 1) +
                                    " sums to " + std::to_string(sum) + ", expected 1");
    }
}

}  // namespace

PauliPrior PauliPrior::from_tables(std::vector<std::array<double, 4>> tables) {
    for (std::size_t j = 0; j < tables.size(); ++j) check_table(tables[j], static_cast<int>(j));
    PauliPrior prior;
    prior.tables = std::move(tables);
    return prior;
}

PauliPrior depolarizing_prior(int n, double p) {
    if (n <= 0) throw std::invalid_argument("qubit count must be positive");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("error rate must lie in [0, 1]");
    PauliPrior prior;
    prior.tables.assign(n, {1.0 - p, p / 3.0, p / 3.0, p / 3.0});
    return prior;
}

Marginals marginals(const PauliPrior& prior) {
    Marginals m;
    m.qx.resize(prior.tables.size());
    m.qz.resize(prior.tables.size());
    for (std::size_t j = 0; j < prior.tables.size(); ++j) {
        const auto& q = prior.tables[j];
        m.qx[j] = {q[pauli_index(0, 0)] + q[pauli_index(0, 1)],
                   q[pauli_index(1, 0)] + q[pauli_index(1, 1)]};
        m.qz[j] = {q[pauli_index(0, 0)] + q[pauli_index(1, 0)],
                   q[pauli_index(0, 1)] + q[pauli_index(1, 1)]};
    }
    return m;
}

FourStatePrior relabel_prior(const PauliPrior& prior) {
    // pauli_index already stores (x,z) tables in label order 0,1,ω,ω².
    FourStatePrior out;
    out.tables = prior.tables;
    return out;
}

PauliPrior unrelabel_prior(const FourStatePrior& prior) {
    PauliPrior out;
    out.tables = prior.tables;
    return out;
}

PauliError sample_error(const PauliPrior& prior, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    PauliError error;
    error.x.resize(prior.tables.size());
    error.z.resize(prior.tables.size());
    for (std::size_t j = 0; j < prior.tables.size(); ++j) {
        // One 53-bit uniform in [0,1) per qubit, walked through the CDF in
        // table order; the trailing branch absorbs rounding in the sum.
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        const auto& q = prior.tables[j];
        double acc = 0.0;
        int pick = 3;
        for (int s = 0; s < 3; ++s) {
            acc += q[s];
            if (u < acc) {
                pick = s;
                break;
            }
        }
        error.x[j] = static_cast<std::uint8_t>(x_of_label(pick));
        error.z[j] = static_cast<std::uint8_t>(z_of_label(pick));
    }
    return error;
}

}  // namespace cssbp
