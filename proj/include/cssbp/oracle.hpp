#pragma once

#include "cssbp/channel.hpp"
#include "cssbp/css_code.hpp"
#include "cssbp/decoders.hpp"

namespace cssbp {

/// Unnormalized posterior weight of a joint assignment: Π_j Q_j(x_j, z_j)
/// when the assignment reproduces the given syndromes, else 0.  Factors are
/// multiplied in ascending qubit order.
double weight_p2(const CssCode& code, const PauliPrior& prior, const PauliError& error,
                 const Syndromes& syndromes);

/// Label-domain counterpart: Π_j Q^φ_j(α_j) under the same syndrome
/// indicators, with x(α), z(α) read from the labels.  At labels = φ(x,z)
/// this equals weight_p2 of (x,z) bit for bit (same factors, same order).
double weight_p4(const CssCode& code, const FourStatePrior& prior,
                 const std::vector<std::uint8_t>& labels, const Syndromes& syndromes);

/// Exact per-qubit posterior marginals given the syndromes, by enumeration of
/// all 4^n assignments (Gray-code order, incremental syndrome tracking).
/// Throws std::invalid_argument when n exceeds `limit` (default 12) and
/// std::runtime_error when no assignment matches the syndromes.
BeliefTable exact_marginals(const CssCode& code, const PauliPrior& prior,
                            const Syndromes& syndromes, int limit = 12);

}  // namespace cssbp
