#include "lambert/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace lambert {

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

double conjugate_exponent(double p) {
    if (!(p >= 1.0)) {
        throw DomainError("conjugate_exponent: exponent must be >= 1, got " + std::to_string(p));
    }
    if (p == 1.0) return kInfinity;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

Exponents::Exponents(double p, double q) : p_(p), q_(q) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
        throw DomainError("exponents.p must lie in [1, inf), got " + std::to_string(p));
    }
    if (!(q >= 1.0) || !std::isfinite(q)) {
        throw DomainError("exponents.q must lie in [1, inf), got " + std::to_string(q));
    }
}

PointSpace::PointSpace(std::vector<PointId> ids, std::vector<double> masses)
    : ids_(std::move(ids)), masses_(std::move(masses)) {
    if (ids_.empty()) throw DomainError("PointSpace: at least one point required");
    if (ids_.size() != masses_.size()) {
        throw DomainError("PointSpace: " + std::to_string(ids_.size()) + " ids but " +
                          std::to_string(masses_.size()) + " masses");
    }
    position_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (!(masses_[i] > 0.0) || !std::isfinite(masses_[i])) {
            throw DomainError("PointSpace: mass of point " + std::to_string(ids_[i]) +
                              " must be finite and > 0");
        }
        if (!position_.emplace(ids_[i], i).second) {
            throw DomainError("PointSpace: duplicate point id " + std::to_string(ids_[i]));
        }
    }
}

PointSpace PointSpace::counting(std::size_t n) {
    std::vector<PointId> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<PointId>(i + 1);
    return PointSpace(std::move(ids), std::vector<double>(n, 1.0));
}

std::optional<std::size_t> PointSpace::position_of(PointId id) const {
    const auto it = position_.find(id);
    if (it == position_.end()) return std::nullopt;
    return it->second;
}

double PointSpace::total_mass() const {
    CompensatedSum s;
    for (double m : masses_) s += m;
    return s.value();
}

MeasurableFunction::MeasurableFunction(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DomainError("MeasurableFunction: non-finite value at position " +
                              std::to_string(i));
        }
    }
}

MeasurableFunction MeasurableFunction::constant(std::size_t n, double c) {
    return MeasurableFunction(std::vector<double>(n, c));
}

double MeasurableFunction::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

namespace {

template <typename Op>
MeasurableFunction pointwise(const MeasurableFunction& f, const MeasurableFunction& g, Op op) {
    if (f.size() != g.size()) {
        throw DomainError("pointwise operation on functions of different length");
    }
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = op(f[i], g[i]);
    return MeasurableFunction(std::move(out));
}

}  // namespace

MeasurableFunction operator*(const MeasurableFunction& f, const MeasurableFunction& g) {
    return pointwise(f, g, [](double a, double b) { return a * b; });
}

MeasurableFunction operator+(const MeasurableFunction& f, const MeasurableFunction& g) {
    return pointwise(f, g, [](double a, double b) { return a + b; });
}

MeasurableFunction operator-(const MeasurableFunction& f, const MeasurableFunction& g) {
    return pointwise(f, g, [](double a, double b) { return a - b; });
}

MeasurableFunction operator*(double c, const MeasurableFunction& f) {
    std::vector<double> out(f.values().begin(), f.values().end());
    for (double& v : out) v *= c;
    return MeasurableFunction(std::move(out));
}

double lp_norm(const MeasurableFunction& f, double p, const PointSpace& space) {
    if (f.size() != space.size()) {
        throw DomainError("lp_norm: function has " + std::to_string(f.size()) +
                          " values, space has " + std::to_string(space.size()) + " points");
    }
    if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
    const double top = f.max_abs();
    if (std::isinf(p) || top == 0.0) return top;
    // Scaling by the maximum keeps |f|^p representable.
    CompensatedSum s;
    for (std::size_t i = 0; i < f.size(); ++i) {
        s += std::pow(std::abs(f[i]) / top, p) * space.mass(i);
    }
    return top * std::pow(s.value(), 1.0 / p);
}

Partition::Partition(const PointSpace& space, const std::vector<std::vector<PointId>>& blocks) {
    constexpr std::size_t unassigned = 0;
    atom_of_.assign(space.size(), unassigned);
    blocks_.reserve(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) {
            throw DomainError("Partition: block " + std::to_string(b + 1) + " is empty");
        }
        std::vector<std::size_t> positions;
        positions.reserve(blocks[b].size());
        for (PointId id : blocks[b]) {
            const auto pos = space.position_of(id);
            if (!pos) {
                throw DomainError("Partition: block " + std::to_string(b + 1) +
                                  " names unknown point " + std::to_string(id));
            }
            if (atom_of_[*pos] != unassigned) {
                throw DomainError("Partition: point " + std::to_string(id) +
                                  " appears in blocks " + std::to_string(atom_of_[*pos]) +
                                  " and " + std::to_string(b + 1));
            }
            atom_of_[*pos] = b + 1;
            positions.push_back(*pos);
        }
        blocks_.push_back(std::move(positions));
    }
    for (std::size_t i = 0; i < atom_of_.size(); ++i) {
        if (atom_of_[i] == unassigned) {
            throw DomainError("Partition: point " + std::to_string(space.id(i)) +
                              " is not covered by any block");
        }
    }
}

Partition Partition::singletons(const PointSpace& space) {
    std::vector<std::vector<PointId>> blocks;
    blocks.reserve(space.size());
    for (PointId id : space.ids()) blocks.push_back({id});
    return Partition(space, blocks);
}

Partition Partition::trivial(const PointSpace& space) {
    return Partition(space, {std::vector<PointId>(space.ids().begin(), space.ids().end())});
}

std::span<const std::size_t> Partition::block(std::size_t n) const {
    if (n == 0 || n > blocks_.size()) {
        throw DomainError("Partition: atom index " + std::to_string(n) + " outside 1.." +
                          std::to_string(blocks_.size()));
    }
    return blocks_[n - 1];
}

std::vector<std::vector<PointId>> Partition::block_ids(const PointSpace& space) const {
    std::vector<std::vector<PointId>> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) {
        std::vector<PointId> ids;
        ids.reserve(b.size());
        for (std::size_t pos : b) ids.push_back(space.id(pos));
        out.push_back(std::move(ids));
    }
    return out;
}

Partition partition_from_map(const PointSpace& space, const LabelMap& phi) {
    std::map<std::int64_t, std::size_t> slot;
    std::vector<std::vector<PointId>> blocks;
    for (PointId id : space.ids()) {
        const auto label = phi(id);
        if (!label) {
            throw DomainError("partition_from_map: map undefined at point " + std::to_string(id));
        }
        const auto [it, inserted] = slot.emplace(*label, blocks.size());
        if (inserted) blocks.emplace_back();
        blocks[it->second].push_back(id);
    }
    return Partition(space, blocks);
}

}  // namespace lambert
