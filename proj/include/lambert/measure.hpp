#pragma once

// Discrete measure spaces, partitions into atoms, point-level functions and
// the per-atom aggregates that every compactness test consumes.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace lambert {

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot be carried out in floating point
/// (overflow of a power, non-finite intermediate).
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

using PointId = std::int64_t;

/// Neumaier summation. Order of accumulation is the order of add() calls.
class CompensatedSum {
public:
    void add(double x) noexcept;
    [[nodiscard]] double value() const noexcept { return sum_ + compensation_; }

    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// 1/p + 1/p' = 1, with conj(1) = infinity.
[[nodiscard]] double conjugate_exponent(double p);

/// Source and target exponents of an operator L^p -> L^q. Both must be finite
/// and at least 1; conjugates are derived on demand.
class Exponents {
public:
    Exponents(double p, double q);

    [[nodiscard]] double p() const noexcept { return p_; }
    [[nodiscard]] double q() const noexcept { return q_; }
    [[nodiscard]] double p_conj() const { return conjugate_exponent(p_); }
    [[nodiscard]] double q_conj() const { return conjugate_exponent(q_); }

    friend bool operator==(const Exponents&, const Exponents&) = default;

private:
    double p_;
    double q_;
};

/// Finite set of points with strictly positive, finite masses.
class PointSpace {
public:
    PointSpace(std::vector<PointId> ids, std::vector<double> masses);

    /// Points 1..n with unit masses.
    static PointSpace counting(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return ids_.size(); }
    [[nodiscard]] std::span<const PointId> ids() const noexcept { return ids_; }
    [[nodiscard]] std::span<const double> masses() const noexcept { return masses_; }
    [[nodiscard]] PointId id(std::size_t pos) const { return ids_.at(pos); }
    [[nodiscard]] double mass(std::size_t pos) const { return masses_.at(pos); }
    [[nodiscard]] std::optional<std::size_t> position_of(PointId id) const;
    [[nodiscard]] double total_mass() const;

    friend bool operator==(const PointSpace& a, const PointSpace& b) {
        return a.ids_ == b.ids_ && a.masses_ == b.masses_;
    }

private:
    std::vector<PointId> ids_;
    std::vector<double> masses_;
    std::unordered_map<PointId, std::size_t> position_;
};

/// Real-valued function on the points of a PointSpace, stored by point
/// position. Every value is finite.
class MeasurableFunction {
public:
    MeasurableFunction() = default;
    explicit MeasurableFunction(std::vector<double> values);

    static MeasurableFunction constant(std::size_t n, double c);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t pos) const { return values_[pos]; }
    [[nodiscard]] double max_abs() const noexcept;

    friend bool operator==(const MeasurableFunction&, const MeasurableFunction&) = default;

private:
    std::vector<double> values_;
};

MeasurableFunction operator*(const MeasurableFunction& f, const MeasurableFunction& g);
MeasurableFunction operator+(const MeasurableFunction& f, const MeasurableFunction& g);
MeasurableFunction operator-(const MeasurableFunction& f, const MeasurableFunction& g);
MeasurableFunction operator*(double c, const MeasurableFunction& f);

/// (sum |f|^p m)^(1/p), or max |f| for p = infinity.
[[nodiscard]] double lp_norm(const MeasurableFunction& f, double p, const PointSpace& space);

/// Pairwise-disjoint, non-empty blocks covering every point of a space.
/// Atoms are addressed 1-based (A_1, A_2, ...); points by 0-based position.
class Partition {
public:
    Partition(const PointSpace& space, const std::vector<std::vector<PointId>>& blocks);

    static Partition singletons(const PointSpace& space);
    static Partition trivial(const PointSpace& space);

    [[nodiscard]] std::size_t block_count() const noexcept { return blocks_.size(); }
    [[nodiscard]] std::size_t point_count() const noexcept { return atom_of_.size(); }
    /// Point positions of atom n (1-based).
    [[nodiscard]] std::span<const std::size_t> block(std::size_t n) const;
    /// Atom index (1-based) containing the point at `pos`.
    [[nodiscard]] std::size_t atom_of(std::size_t pos) const { return atom_of_.at(pos); }
    [[nodiscard]] std::vector<std::vector<PointId>> block_ids(const PointSpace& space) const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    Partition() = default;
    std::vector<std::vector<std::size_t>> blocks_;
    std::vector<std::size_t> atom_of_;
};

/// Label map used to generate a partition; std::nullopt marks an undefined point.
using LabelMap = std::function<std::optional<std::int64_t>(PointId)>;

/// Blocks are the preimage classes of `phi`, ordered by first occurrence.
[[nodiscard]] Partition partition_from_map(const PointSpace& space, const LabelMap& phi);

/// Per-atom aggregates: mu = mu(A_n), eu = E(|u|^s)(A_n), ew = E(|w|^q)(A_n).
/// The exponent s is p' for p > 1 and q' for the L^1-source tests.
struct AtomStat {
    double mu = 1.0;
    double eu = 0.0;
    double ew = 0.0;

    void validate() const;
    friend bool operator==(const AtomStat&, const AtomStat&) = default;
};

enum class TailKind { finitely_supported, power_law, geometric };

/// Which sequence a certificate bounds: the atom gauge a_n or the criterion's
/// own term sequence (t_n = a_n^r for series tests, the statistic itself for
/// the L^1-source tests).
enum class TailTarget { gauge, term };

/// Trusted two-sided envelope c_lower*env(n) <= x_n <= c_upper*env(n) for all
/// n >= from. env(n) is n^(-rate) for power_law, rate^n for geometric and 0 for
/// finitely_supported.
struct TailCertificate {
    TailKind kind = TailKind::power_law;
    double c_lower = 0.0;
    double c_upper = 0.0;
    double rate = 0.0;
    std::size_t from = 1;
    TailTarget target = TailTarget::gauge;

    /// Terms vanish past index `last_nonzero`.
    static TailCertificate finitely_supported(std::size_t last_nonzero,
                                              TailTarget target = TailTarget::gauge);
    static TailCertificate power_law(double c_lower, double c_upper, double exponent,
                                     std::size_t from = 1,
                                     TailTarget target = TailTarget::gauge);
    static TailCertificate geometric(double c_lower, double c_upper, double ratio,
                                     std::size_t from = 1,
                                     TailTarget target = TailTarget::gauge);

    [[nodiscard]] double envelope(std::size_t n) const;
    void validate() const;

    friend bool operator==(const TailCertificate&, const TailCertificate&) = default;
};

using AtomRule = std::function<AtomStat(std::size_t)>;

/// Sequence of atom aggregates: a materialized head, optionally extended by a
/// deterministic rule and/or a tail certificate. A profile with neither is
/// finite (exactly the head atoms exist).
class AtomProfile {
public:
    static AtomProfile finite(std::vector<AtomStat> head);
    /// Infinitely many atoms; the head gives the first ones.
    static AtomProfile unbounded(std::vector<AtomStat> head, AtomRule rule = {},
                                 std::optional<TailCertificate> tail = std::nullopt);

    [[nodiscard]] bool is_finite() const noexcept { return finite_; }
    [[nodiscard]] bool has_rule() const noexcept { return static_cast<bool>(rule_); }
    [[nodiscard]] std::size_t head_size() const noexcept { return head_.size(); }
    [[nodiscard]] std::span<const AtomStat> head() const noexcept { return head_; }
    [[nodiscard]] const std::optional<TailCertificate>& tail() const noexcept { return tail_; }

    /// Atom n (1-based): head entry when materialized, else the rule.
    [[nodiscard]] AtomStat at(std::size_t n) const;
    /// Number of atoms a test may evaluate with budget n_max.
    [[nodiscard]] std::size_t evaluable(std::size_t n_max) const noexcept;

    /// Finite profile with atoms 1..keep removed.
    [[nodiscard]] AtomProfile without_first(std::size_t keep) const;
    [[nodiscard]] AtomProfile with_tail(std::optional<TailCertificate> tail) const;

private:
    AtomProfile() = default;
    std::vector<AtomStat> head_;
    AtomRule rule_;
    std::optional<TailCertificate> tail_;
    bool finite_ = true;
};

enum class RegionLevel { A_level, Sigma_level };

struct RegionSample {
    double mass = 0.0;
    double ew = 0.0;
    double eu = 0.0;

    friend bool operator==(const RegionSample&, const RegionSample&) = default;
};

/// Sampled stand-in for a non-atomic part of the space: B (A_level) or the
/// non-atomic part C of Sigma (Sigma_level).
struct SampledRegion {
    RegionLevel level = RegionLevel::A_level;
    std::vector<RegionSample> samples;

    void validate() const;
    friend bool operator==(const SampledRegion&, const SampledRegion&) = default;
};

enum class AggregateMode {
    source_conjugate,  ///< eu = E(|u|^{p'})
    target_conjugate,  ///< eu = E(|u|^{q'}), used when p = 1
};

/// Reduces point-level weights to a finite AtomProfile in partition order.
[[nodiscard]] AtomProfile profile_from_points(const PointSpace& space, const Partition& partition,
                                              const MeasurableFunction& u,
                                              const MeasurableFunction& w, const Exponents& exps,
                                              AggregateMode mode = AggregateMode::source_conjugate);

/// |x|^s, raising EvaluationError on overflow. s = 0 gives 1 (including 0^0).
[[nodiscard]] double checked_abs_pow(double x, double s);

}  // namespace lambert
