#pragma once

// Ready-made instances: the two sequence-space constructions used throughout
// the test suites and seeded random instances.

#include "lambert/lambert_operator.hpp"
#include "lambert/measure.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace lambert {

/// n -> coef * n^exp.
struct PowerRule {
    double coef = 1.0;
    double exp = 0.0;

    [[nodiscard]] double operator()(std::size_t n) const;
    friend bool operator==(const PowerRule&, const PowerRule&) = default;
};

/// The unbounded structure behind a finite gallery instance: an atom rule plus
/// tail certificates, so criteria can be decided for the infinite sequence.
class InstanceModel {
public:
    virtual ~InstanceModel() = default;

    /// Profile whose head is the materialized instance. Aggregates use p'
    /// (q' when p = 1).
    [[nodiscard]] virtual AtomProfile profile(const Exponents& exps) const = 0;
    /// Certificate for the L^1-source statistic over atoms.
    [[nodiscard]] virtual std::optional<TailCertificate> l1_atom_tail(double q) const = 0;
    /// Certificate for the L^1-source statistic over points.
    [[nodiscard]] virtual std::optional<TailCertificate> l1_point_tail(double q) const = 0;
};

struct Instance {
    PointSpace space;
    Partition partition;
    MeasurableFunction u;
    MeasurableFunction w;
    std::optional<SampledRegion> region;
    std::string label;
    std::shared_ptr<const InstanceModel> model;

    [[nodiscard]] LambertOperator op() const { return LambertOperator(space, partition, u, w); }
};

/// Points 1..n_points with unit masses; points 1 and 2 share an atom, every
/// later point is its own atom ({1,2}, {3}, {4}, ...).
[[nodiscard]] Instance merged_pair_instance(std::size_t n_points, PowerRule u, PowerRule w);

/// Counting measure on 1..M: even atoms A_j = {2k_j, ..., 2(k_j + j - 1)} of
/// size j, odd points as singletons, u(n) = n, w(n) = n^-3. M is the largest
/// even point of A_{n_atoms}.
[[nodiscard]] Instance growing_blocks_instance(std::size_t n_atoms);

/// k_j = 1 + j(j-1)/2, the offset of the j-th even atom.
[[nodiscard]] std::size_t growing_block_offset(std::size_t j);

/// Points (ascending) of the n-th atom of the unbounded growing-blocks space in
/// first-occurrence order.
[[nodiscard]] std::vector<std::size_t> growing_blocks_atom(std::size_t n);

/// Masses uniform in (0.1, 10), weights uniform in [-weight_scale, weight_scale],
/// every block non-empty. Deterministic in seed.
[[nodiscard]] Instance random_instance(std::uint64_t seed, std::size_t n_points,
                                       std::size_t n_blocks, double weight_scale);

}  // namespace lambert
