#pragma once

// Operator-norm oracles for T = M_w E M_u: L^p -> L^q.
//
// T is block diagonal over the atoms with rank-one blocks, so
//   ||T|| = sup_n a_n                    for p <= q,
//   ||T|| = (sum_n a_n^r)^{1/r}          for q < p, r = 1/(1/q - 1/p).
// power_method_norm maximizes ||Tf||_q / ||f||_p directly and is the
// independent check on those closed forms.

#include "lambert/lambert_operator.hpp"
#include "lambert/measure.hpp"

#include <cstdint>
#include <vector>

namespace lambert {

struct NormEstimate {
    double value = 0.0;
    MeasurableFunction maximizer;  ///< unit L^p norm (zero when T = 0)
    std::size_t iterations = 0;    ///< iterations of the winning restart
    bool converged = false;
    std::size_t restarts_used = 0;
    std::size_t best_restart = 0;
};

struct PowerOptions {
    double tol = 1e-12;
    std::size_t max_iter = 10000;
    std::size_t restarts = 16;
    std::uint64_t seed = 0;
    bool atom_seeds = true;  ///< one extra start per atom at its block maximizer
};

[[nodiscard]] double closed_form_norm(const AtomProfile& profile, const Exponents& exps);

[[nodiscard]] NormEstimate power_method_norm(const LambertOperator& T, const Exponents& exps,
                                             const PowerOptions& opts = {});

/// ||T - truncate(T, keep)|| from the atom profile.
[[nodiscard]] double tail_norm(const AtomProfile& profile, const Exponents& exps,
                               std::size_t keep);

/// tail_norm(k) for k = 0..horizon; non-increasing.
[[nodiscard]] std::vector<double> approximation_decay_probe(const LambertOperator& T,
                                                            const Exponents& exps,
                                                            std::size_t horizon);

/// psi_r(x) = sign(x) |x|^{r-1}, coordinate-wise.
[[nodiscard]] MeasurableFunction duality_map(const MeasurableFunction& f, double r);

}  // namespace lambert
