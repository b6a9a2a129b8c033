#include "lambert/conditional_expectation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lambert {

ConditionalExpectation::ConditionalExpectation(PointSpace space, Partition partition)
    : space_(std::move(space)), partition_(std::move(partition)) {
    if (partition_.point_count() != space_.size()) {
        throw DomainError("ConditionalExpectation: partition covers " +
                          std::to_string(partition_.point_count()) + " points, space has " +
                          std::to_string(space_.size()));
    }
    atom_mass_.reserve(partition_.block_count());
    for (std::size_t n = 1; n <= partition_.block_count(); ++n) {
        CompensatedSum s;
        for (std::size_t pos : partition_.block(n)) s += space_.mass(pos);
        atom_mass_.push_back(s.value());
    }
}

std::vector<double> ConditionalExpectation::atom_values(const MeasurableFunction& f) const {
    if (f.size() != space_.size()) {
        throw DomainError("conditional expectation: function length does not match the space");
    }
    std::vector<double> out;
    out.reserve(partition_.block_count());
    for (std::size_t n = 1; n <= partition_.block_count(); ++n) {
        const auto block = partition_.block(n);
        // Block-constant input is returned unchanged so that E is exactly idempotent.
        const double first = f[block.front()];
        const bool constant = std::all_of(block.begin(), block.end(), [&](std::size_t pos) { return f[pos] == first; });
        if (constant) {
            out.push_back(first);
            continue;
        }
        CompensatedSum s;
        for (std::size_t pos : block) s += f[pos] * space_.mass(pos);
        out.push_back(s.value() / atom_mass_[n - 1]);
    }
    return out;
}

MeasurableFunction cond_expect(const ConditionalExpectation& E, const MeasurableFunction& f) {
    const auto averages = E.atom_values(f);
    std::vector<double> out(f.size());
    for (std::size_t pos = 0; pos < f.size(); ++pos) {
        out[pos] = averages[E.partition().atom_of(pos) - 1];
    }
    return MeasurableFunction(std::move(out));
}

double averaging_residual(const ConditionalExpectation& E, const MeasurableFunction& f,
                          std::size_t block_index) {
    const auto block = E.partition().block(block_index);
    const MeasurableFunction ef = cond_expect(E, f);
    CompensatedSum lhs;
    CompensatedSum rhs;
    for (std::size_t pos : block) {
        lhs += f[pos] * E.space().mass(pos);
        rhs += ef[pos] * E.space().mass(pos);
    }
    return std::abs(lhs.value() - rhs.value());
}

double conditional_holder_gap(const ConditionalExpectation& E, const MeasurableFunction& f,
                              const MeasurableFunction& g, double p) {
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw DomainError("conditional_holder_gap: p must lie in (1, inf)");
    }
    const double pc = conjugate_exponent(p);
    std::vector<double> fp(f.size());
    std::vector<double> gp(g.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        fp[i] = checked_abs_pow(f[i], p);
        gp[i] = checked_abs_pow(g[i], pc);
    }
    const auto efp = E.atom_values(MeasurableFunction(std::move(fp)));
    const auto egp = E.atom_values(MeasurableFunction(std::move(gp)));
    const auto efg = E.atom_values(f * g);
    double gap = kInfinity;
    for (std::size_t n = 0; n < efg.size(); ++n) {
        const double bound = std::pow(efp[n], 1.0 / p) * std::pow(egp[n], 1.0 / pc);
        gap = std::min(gap, bound - std::abs(efg[n]));
    }
    return gap;
}

double tolerance_scale(const MeasurableFunction& f, const MeasurableFunction& g) {
    return 1.0 + f.max_abs() * g.max_abs();
}

}  // namespace lambert
