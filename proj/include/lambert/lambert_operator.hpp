#pragma once

#include "lambert/conditional_expectation.hpp"
#include "lambert/measure.hpp"

namespace lambert {

/// T = M_w E M_u on a discrete space with a partition.
class LambertOperator {
public:
    LambertOperator(PointSpace space, Partition partition, MeasurableFunction u,
                    MeasurableFunction w);
    LambertOperator(ConditionalExpectation expectation, MeasurableFunction u, MeasurableFunction w);

    [[nodiscard]] const ConditionalExpectation& expectation() const noexcept { return E_; }
    [[nodiscard]] const PointSpace& space() const noexcept { return E_.space(); }
    [[nodiscard]] const Partition& partition() const noexcept { return E_.partition(); }
    [[nodiscard]] const MeasurableFunction& u() const noexcept { return u_; }
    [[nodiscard]] const MeasurableFunction& w() const noexcept { return w_; }

    friend bool operator==(const LambertOperator&, const LambertOperator&) = default;

private:
    ConditionalExpectation E_;
    MeasurableFunction u_;
    MeasurableFunction w_;
};

/// (Tf)(x) = w(x) E(uf)(x).
[[nodiscard]] MeasurableFunction apply(const LambertOperator& T, const MeasurableFunction& f);

/// v = u (E|w|^q)^{1/q}; ||Tf||_q = ||E(vf)||_q for every f.
[[nodiscard]] MeasurableFunction reduce_v(const LambertOperator& T, double q);

/// Adjoint for the mass-weighted pairing: M_u E M_w.
[[nodiscard]] LambertOperator adjoint(const LambertOperator& T);

/// T restricted to atoms 1..keep (weights zeroed on later atoms); rank <= keep.
[[nodiscard]] LambertOperator truncate(const LambertOperator& T, std::size_t keep);

/// T - truncate(T, keep): weights zeroed on atoms 1..keep.
[[nodiscard]] LambertOperator remainder(const LambertOperator& T, std::size_t keep);

/// chi_{A_n} / mu(A_n)^{1/q'}, unit norm in L^{q'}.
[[nodiscard]] MeasurableFunction noncompactness_witness(const PointSpace& space,
                                                        const Partition& partition,
                                                        double q_conj, std::size_t n);

/// ||M_v f_m - M_v f_n||_{p'}^{p'} with v from reduce_v and f_m, f_n the
/// unit L^{q'} witnesses of atoms m and n.
[[nodiscard]] double witness_image_distance(const LambertOperator& T, const Exponents& exps,
                                            std::size_t m, std::size_t n);

}  // namespace lambert
