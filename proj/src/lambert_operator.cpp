#include "lambert/lambert_operator.hpp"

#include <cmath>
#include <string>

namespace lambert {

LambertOperator::LambertOperator(PointSpace space, Partition partition, MeasurableFunction u,
                                 MeasurableFunction w)
    : LambertOperator(ConditionalExpectation(std::move(space), std::move(partition)),
                      std::move(u), std::move(w)) {}

LambertOperator::LambertOperator(ConditionalExpectation expectation, MeasurableFunction u,
                                 MeasurableFunction w)
    : E_(std::move(expectation)), u_(std::move(u)), w_(std::move(w)) {
    if (u_.size() != E_.space().size() || w_.size() != E_.space().size()) {
        throw DomainError("LambertOperator: weights must be defined on all " +
                          std::to_string(E_.space().size()) + " points");
    }
}

MeasurableFunction apply(const LambertOperator& T, const MeasurableFunction& f) {
    return T.w() * cond_expect(T.expectation(), T.u() * f);
}

MeasurableFunction reduce_v(const LambertOperator& T, double q) {
    if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("reduce_v: q must lie in [1, inf)");
    std::vector<double> wq(T.w().size());
    for (std::size_t i = 0; i < wq.size(); ++i) wq[i] = checked_abs_pow(T.w()[i], q);
    const auto ew = T.expectation().atom_values(MeasurableFunction(std::move(wq)));
    std::vector<double> v(T.u().size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = T.u()[i] * std::pow(ew[T.partition().atom_of(i) - 1], 1.0 / q);
    }
    return MeasurableFunction(std::move(v));
}

LambertOperator adjoint(const LambertOperator& T) {
    return LambertOperator(T.expectation(), T.w(), T.u());
}

namespace {

LambertOperator mask_atoms(const LambertOperator& T, std::size_t keep, bool keep_head) {
    if (keep > T.partition().block_count()) {
        throw DomainError("truncate: keep = " + std::to_string(keep) + " exceeds " +
                          std::to_string(T.partition().block_count()) + " atoms");
    }
    std::vector<double> u(T.u().values().begin(), T.u().values().end());
    std::vector<double> w(T.w().values().begin(), T.w().values().end());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const bool in_head = T.partition().atom_of(i) <= keep;
        if (in_head != keep_head) {
            u[i] = 0.0;
            w[i] = 0.0;
        }
    }
    return LambertOperator(T.expectation(), MeasurableFunction(std::move(u)),
                           MeasurableFunction(std::move(w)));
}

}  // namespace

LambertOperator truncate(const LambertOperator& T, std::size_t keep) {
    return mask_atoms(T, keep, true);
}

LambertOperator remainder(const LambertOperator& T, std::size_t keep) {
    return mask_atoms(T, keep, false);
}

MeasurableFunction noncompactness_witness(const PointSpace& space, const Partition& partition,
                                          double q_conj, std::size_t n) {
    if (!(q_conj > 1.0) || !std::isfinite(q_conj)) {
        throw DomainError("noncompactness_witness: q' must lie in (1, inf)");
    }
    const auto block = partition.block(n);
    CompensatedSum mass;
    for (std::size_t pos : block) mass += space.mass(pos);
    const double height = std::pow(mass.value(), -1.0 / q_conj);
    std::vector<double> f(space.size(), 0.0);
    for (std::size_t pos : block) f[pos] = height;
    return MeasurableFunction(std::move(f));
}

double witness_image_distance(const LambertOperator& T, const Exponents& exps, std::size_t m,
                              std::size_t n) {
    const double pc = exps.p_conj();
    if (std::isinf(pc)) throw DomainError("witness_image_distance: requires p > 1");
    const MeasurableFunction v = reduce_v(T, exps.q());
    const double qc = exps.q_conj();
    const MeasurableFunction diff =
        v * (noncompactness_witness(T.space(), T.partition(), qc, m) -
             noncompactness_witness(T.space(), T.partition(), qc, n));
    return std::pow(lp_norm(diff, pc, T.space()), pc);
}

}  // namespace lambert
