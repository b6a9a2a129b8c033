#pragma once

#include "lambert/measure.hpp"

namespace lambert {

/// Conditional expectation onto the sub-sigma-algebra generated by a
/// partition: mass-weighted block averages.
class ConditionalExpectation {
public:
    ConditionalExpectation(PointSpace space, Partition partition);

    [[nodiscard]] const PointSpace& space() const noexcept { return space_; }
    [[nodiscard]] const Partition& partition() const noexcept { return partition_; }

    /// Block average of f on every atom, 1-based atom n at index n-1.
    [[nodiscard]] std::vector<double> atom_values(const MeasurableFunction& f) const;
    /// Block masses mu(A_n), index n-1.
    [[nodiscard]] std::span<const double> atom_masses() const noexcept { return atom_mass_; }

    friend bool operator==(const ConditionalExpectation& a, const ConditionalExpectation& b) {
        return a.space_ == b.space_ && a.partition_ == b.partition_;
    }

private:
    PointSpace space_;
    Partition partition_;
    std::vector<double> atom_mass_;
};

/// E(f): constant on each block, equal to the block's mass-weighted average.
[[nodiscard]] MeasurableFunction cond_expect(const ConditionalExpectation& E,
                                             const MeasurableFunction& f);

/// |int_{A_n} f dmu - int_{A_n} E(f) dmu| for atom n (1-based).
[[nodiscard]] double averaging_residual(const ConditionalExpectation& E,
                                        const MeasurableFunction& f, std::size_t block_index);

/// min over points of E(|f|^p)^{1/p} E(|g|^{p'})^{1/p'} - |E(fg)|.
[[nodiscard]] double conditional_holder_gap(const ConditionalExpectation& E,
                                            const MeasurableFunction& f,
                                            const MeasurableFunction& g, double p);

/// Tolerance scale 1 + ||f||_inf * ||g||_inf.
[[nodiscard]] double tolerance_scale(const MeasurableFunction& f, const MeasurableFunction& g);

}  // namespace lambert
