#include "lambert/certificate.hpp"

#include <algorithm>
#include <cmath>

namespace lambert {

TailCertificate raise_certificate(const TailCertificate& c, double e) {
    if (!(e > 0.0) || !std::isfinite(e)) throw DomainError("raise_certificate: exponent must be > 0");
    TailCertificate out = c;
    if (c.kind == TailKind::finitely_supported) return out;
    out.c_lower = std::pow(c.c_lower, e);
    out.c_upper = std::pow(c.c_upper, e);
    out.rate = c.kind == TailKind::power_law ? c.rate * e : std::pow(c.rate, e);
    return out;
}

bool upper_summable(const TailCertificate& c) {
    switch (c.kind) {
        case TailKind::finitely_supported:
        case TailKind::geometric:
            return true;
        case TailKind::power_law:
            return c.c_upper == 0.0 || c.rate > 1.0;
    }
    return false;
}

bool lower_divergent(const TailCertificate& c) {
    return c.kind == TailKind::power_law && c.c_lower > 0.0 && c.rate <= 1.0;
}

bool upper_vanishes(const TailCertificate& c) {
    switch (c.kind) {
        case TailKind::finitely_supported:
        case TailKind::geometric:
            return true;
        case TailKind::power_law:
            return c.c_upper == 0.0 || c.rate > 0.0;
    }
    return false;
}

bool lower_persists(const TailCertificate& c) {
    return c.kind == TailKind::power_law && c.c_lower > 0.0 && c.rate <= 0.0;
}

double tail_sum_bound(const TailCertificate& c, std::size_t after) {
    if (after + 1 < c.from) throw DomainError("tail_sum_bound: index precedes the certificate");
    if (!upper_summable(c)) return kInfinity;
    const double n = static_cast<double>(after);
    switch (c.kind) {
        case TailKind::finitely_supported:
            return 0.0;
        case TailKind::geometric:
            return c.c_upper * std::pow(c.rate, n + 1.0) / (1.0 - c.rate);
        case TailKind::power_law:
            if (c.c_upper == 0.0) return 0.0;
            // sum_{k > N} k^-s <= (N+1)^-s + int_{N+1}^inf x^-s dx
            return c.c_upper * (std::pow(n + 1.0, -c.rate) +
                                std::pow(n + 1.0, 1.0 - c.rate) / (c.rate - 1.0));
    }
    return kInfinity;
}

std::optional<std::size_t> first_envelope_violation(const TailCertificate& c,
                                                    std::span<const double> terms,
                                                    double rel_tol) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::size_t n = i + 1;
        if (n < c.from) continue;
        const double env = c.envelope(n);
        const double lo = c.kind == TailKind::finitely_supported ? 0.0 : c.c_lower * env;
        const double hi = c.kind == TailKind::finitely_supported ? 0.0 : c.c_upper * env;
        const double x = terms[i];
        const double slack = rel_tol * std::max(std::abs(x), hi) + 1e-300;
        if (x < lo - slack || x > hi + slack) return n;
    }
    return std::nullopt;
}

}  // namespace lambert
