#include "bp_detail.hpp"

#include <cmath>
#include <limits>

namespace cssbp::detail {

namespace {

[[noreturn]] void fault(const char* what) { throw decode_fault(what); }

}  // namespace

void normalize2(Msg2& m) {
    const double sum = m[0] + m[1];
    if (!(sum > 0.0) || !std::isfinite(sum)) fault("all-zero or non-finite binary message");
    m[0] /= sum;
    m[1] /= sum;
}

void normalize4(Msg4& m) {
    const double sum = (m[0] + m[1]) + (m[2] + m[3]);
    if (!(sum > 0.0) || !std::isfinite(sum)) fault("all-zero or non-finite four-state message");
    for (double& v : m) v /= sum;
}

void floor_messages(Msg2& m, double eps) {
    if (eps <= 0.0) return;
    for (double& v : m) {
        if (v < eps) v = eps;
    }
    normalize2(m);
}

void floor_messages(Msg4& m, double eps) {
    if (eps <= 0.0) return;
    for (double& v : m) {
        if (v < eps) v = eps;
    }
    normalize4(m);
}

void damp_geometric(Msg2& fresh, const Msg2& old, double lambda) {
    if (lambda <= 0.0) return;
    for (int b = 0; b < 2; ++b) {
        fresh[b] = std::pow(old[b], lambda) * std::pow(fresh[b], 1.0 - lambda);
    }
    normalize2(fresh);
}

void damp_geometric(Msg4& fresh, const Msg4& old, double lambda) {
    if (lambda <= 0.0) return;
    for (int s = 0; s < 4; ++s) {
        fresh[s] = std::pow(old[s], lambda) * std::pow(fresh[s], 1.0 - lambda);
    }
    normalize4(fresh);
}

double llr_of(const Msg2& m) {
    if (m[1] == 0.0) return m[0] == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    if (m[0] == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(m[0] / m[1]);
}

Msg2 msg_from_llr(double llr) {
    if (std::isinf(llr)) return llr > 0 ? Msg2{1.0, 0.0} : Msg2{0.0, 1.0};
    return Msg2{1.0 / (1.0 + std::exp(-llr)), 1.0 / (1.0 + std::exp(llr))};
}

double minsum_exclude(const std::vector<double>& llrs, std::size_t skip, double scale) {
    double sign = 1.0;
    double magnitude = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < llrs.size(); ++k) {
        if (k == skip) continue;
        const double l = llrs[k];
        if (l < 0) sign = -sign;
        const double a = std::abs(l);
        if (a < magnitude) magnitude = a;
    }
    // An empty combine (degree-1 check) leaves magnitude at +inf: certain
    // even parity, i.e. a point-mass message once the syndrome sign lands.
    return sign * magnitude * scale;
}

double boxplus_exclude(const std::vector<double>& llrs, std::size_t skip) {
    double product = 1.0;
    for (std::size_t k = 0; k < llrs.size(); ++k) {
        if (k == skip) continue;
        product *= std::tanh(0.5 * llrs[k]);
    }
    if (product >= 1.0) return std::numeric_limits<double>::infinity();
    if (product <= -1.0) return -std::numeric_limits<double>::infinity();
    return 2.0 * std::atanh(product);
}

namespace {

/// Parity convolution: entry 0 is the even-parity mass, entry 1 the odd.
inline Msg2 parity_combine(const Msg2& a, const Msg2& b) {
    return Msg2{a[0] * b[0] + a[1] * b[1], a[0] * b[1] + a[1] * b[0]};
}

}  // namespace

void check_update_row(const std::vector<Msg2>& incoming, std::uint8_t syndrome_bit,
                      CheckRule rule, double minsum_scale, std::vector<Msg2>& out) {
    const std::size_t deg = incoming.size();
    out.resize(deg);
    if (rule == CheckRule::Exact) {
        // Forward/backward parity products over the other edges; the
        // identity element (1,0) is certain even parity.
        static thread_local std::vector<Msg2> prefix, suffix;
        prefix.assign(deg + 1, Msg2{1.0, 0.0});
        suffix.assign(deg + 1, Msg2{1.0, 0.0});
        for (std::size_t t = 0; t < deg; ++t) {
            prefix[t + 1] = parity_combine(prefix[t], incoming[t]);
        }
        for (std::size_t t = deg; t-- > 0;) {
            suffix[t] = parity_combine(incoming[t], suffix[t + 1]);
        }
        for (std::size_t t = 0; t < deg; ++t) {
            const Msg2 rest = parity_combine(prefix[t], suffix[t + 1]);
            Msg2 m{rest[syndrome_bit], rest[1 - syndrome_bit]};  // m(b) = rest[s ^ b]
            normalize2(m);
            out[t] = m;
        }
        return;
    }

    static thread_local std::vector<double> llrs;
    llrs.resize(deg);
    for (std::size_t t = 0; t < deg; ++t) llrs[t] = llr_of(incoming[t]);
    const double syndrome_sign = syndrome_bit ? -1.0 : 1.0;
    for (std::size_t t = 0; t < deg; ++t) {
        out[t] = msg_from_llr(syndrome_sign * minsum_exclude(llrs, t, minsum_scale));
    }
}

}  // namespace cssbp::detail
