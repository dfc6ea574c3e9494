#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cssbp/css_code.hpp"

namespace cssbp {

/// Index of the table entry for the pair (x, z).  The resulting order
/// (0,0), (1,0), (0,1), (1,1) equals the four-state label order
/// 0, 1, ω, ω² under α = x + ωz, so the same index addresses both views.
constexpr int pauli_index(int x, int z) { return x + 2 * z; }

constexpr int x_of_label(int label) { return label & 1; }
constexpr int z_of_label(int label) { return label >> 1; }

/// Per-qubit joint prior tables Q_j(x, z).  Entries are nonnegative and each
/// table sums to 1 (checked to 1e-12 at construction).  Exact zeros are
/// allowed and preserved.
struct PauliPrior {
    std::vector<std::array<double, 4>> tables;

    int n() const { return static_cast<int>(tables.size()); }

    /// Validates and wraps externally built tables.
    static PauliPrior from_tables(std::vector<std::array<double, 4>> tables);
};

/// The same tables addressed by four-state label (0, 1, ω, ω²).
struct FourStatePrior {
    std::vector<std::array<double, 4>> tables;

    int n() const { return static_cast<int>(tables.size()); }
};

/// Depolarizing channel: Q(0,0) = 1-p, all three error entries p/3.
PauliPrior depolarizing_prior(int n, double p);

struct Marginals {
    std::vector<std::array<double, 2>> qx;  ///< Q_j^X(x) = sum_z Q_j(x,z)
    std::vector<std::array<double, 2>> qz;  ///< Q_j^Z(z) = sum_x Q_j(x,z)
};

Marginals marginals(const PauliPrior& prior);

/// Relabels Q_j(x,z) to Q_j^φ(α) with α = x + ωz.
FourStatePrior relabel_prior(const PauliPrior& prior);

/// Inverse of relabel_prior; recovers the joint tables exactly.
PauliPrior unrelabel_prior(const FourStatePrior& prior);

/// Draws (x_j, z_j) independently from each Q_j.  Deterministic: the stream
/// is one std::mt19937_64 seeded with `seed`, one 53-bit uniform draw per
/// qubit, mapped through the CDF in (0,0),(1,0),(0,1),(1,1) order.
PauliError sample_error(const PauliPrior& prior, std::uint64_t seed);

}  // namespace cssbp
