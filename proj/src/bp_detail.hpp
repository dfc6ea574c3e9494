#pragma once

#include <cstdint>
#include <vector>

#include "cssbp/decoders.hpp"

// Message kernels shared by the binary, joint, and four-state engines.  The
// four-state check node reduces to the binary row update, so both decoders
// run the identical arithmetic and the relabeling identities hold to within
// ulp-level roundoff.

namespace cssbp::detail {

/// Normalizes to sum 1; throws decode_fault on a nonpositive or non-finite
/// total (an all-zero message means contradictory hard evidence).
void normalize2(Msg2& m);
/// Four-entry variant; the total is accumulated pairwise,
/// (m0+m1) + (m2+m3), so it equals the binary normalizer whenever the
/// entries are a lifted binary message.
void normalize4(Msg4& m);

/// Floors entries at eps and renormalizes (no-op for eps <= 0).
void floor_messages(Msg2& m, double eps);
void floor_messages(Msg4& m, double eps);

/// Geometric interpolation fresh <- normalize(old^λ · fresh^(1-λ)).
void damp_geometric(Msg2& fresh, const Msg2& old, double lambda);
void damp_geometric(Msg4& fresh, const Msg4& old, double lambda);

/// log(m[0]/m[1]); ±inf on a zero entry.
double llr_of(const Msg2& m);

/// (σ(L), σ(-L)) — the normalized message with the given LLR.  Flipping the
/// sign of L swaps the entries bitwise.
Msg2 msg_from_llr(double llr);

/// All outgoing messages of one parity check.  `incoming` holds the
/// variable-to-check messages in check-edge order; out[t](b) is the
/// sum-product (or min-sum) message toward edge t, conditioned on the check's
/// syndrome bit, normalized.
void check_update_row(const std::vector<Msg2>& incoming, std::uint8_t syndrome_bit,
                      CheckRule rule, double minsum_scale, std::vector<Msg2>& out);

/// Min-sum LLR combine over all positions except `skip`: sign product times
/// minimum magnitude, scaled.
double minsum_exclude(const std::vector<double>& llrs, std::size_t skip, double scale);

/// Box-plus combine over all positions except `skip`:
/// 2 atanh(Π tanh(L/2)), with the product clamped away from ±1.
double boxplus_exclude(const std::vector<double>& llrs, std::size_t skip);

}  // namespace cssbp::detail
