#pragma once

// Decisions drawn from a tail certificate: summability and vanishing of the
// enveloped sequence, re-expression under a power map, and consistency with
// materialized terms.

#include "lambert/measure.hpp"

#include <optional>
#include <span>

namespace lambert {

/// Envelope of x_n^e given the envelope of x_n (e > 0).
[[nodiscard]] TailCertificate raise_certificate(const TailCertificate& c, double e);

/// c_upper * env is summable.
[[nodiscard]] bool upper_summable(const TailCertificate& c);
/// c_lower * env is positive and not summable.
[[nodiscard]] bool lower_divergent(const TailCertificate& c);
/// c_upper * env(n) -> 0.
[[nodiscard]] bool upper_vanishes(const TailCertificate& c);
/// c_lower * env(n) stays bounded away from 0.
[[nodiscard]] bool lower_persists(const TailCertificate& c);

/// Upper bound on sum_{n > after} x_n implied by the certificate; requires
/// after + 1 >= c.from and upper_summable(c).
[[nodiscard]] double tail_sum_bound(const TailCertificate& c, std::size_t after);

/// First 1-based index n >= c.from among terms[0..] (terms[i] is x_{i+1})
/// violating the envelope, relative slack rel_tol.
[[nodiscard]] std::optional<std::size_t> first_envelope_violation(const TailCertificate& c,
                                                                  std::span<const double> terms,
                                                                  double rel_tol = 1e-9);

}  // namespace lambert
