#pragma once

// Compactness tests for T = M_w E M_u between L^p spaces, expressed through
// the per-atom gauge
//
//     a_n = eu_n^{1/p'} ew_n^{1/q} mu_n^{1/p' + 1/q - 1},
//
// the norm of T restricted to functions supported on A_n. For q < p the
// operator is compact iff sum a_n^r < inf with r = 1/(1/q - 1/p); for
// p <= q iff a_n -> 0. Both require the gauge to vanish on the non-atomic part.

#include "lambert/lambert_operator.hpp"
#include "lambert/measure.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lambert {

enum class Status { Compact, NotCompact, Inconclusive };
enum class Certainty { Certified, Heuristic };
enum class CaseTag { q_lt_p, p_lt_q, p_eq_q, q_eq_1, p_eq_1, nonatomic_A };
enum class Truth { holds, fails, unknown };

[[nodiscard]] const char* to_string(Status s) noexcept;
[[nodiscard]] const char* to_string(Certainty c) noexcept;
[[nodiscard]] const char* to_string(CaseTag c) noexcept;
[[nodiscard]] const char* to_string(Truth t) noexcept;

struct ConditionOutcome {
    std::string name;
    Truth truth = Truth::unknown;
    bool certified = false;
    std::string detail;
    std::vector<std::pair<std::string, double>> diagnostics;
    std::optional<std::size_t> violation_index;
    std::optional<RegionSample> violating_sample;

    [[nodiscard]] std::optional<double> diagnostic(const std::string& key) const;
};

struct Verdict {
    Status status = Status::Inconclusive;
    Certainty certainty = Certainty::Heuristic;
    CaseTag case_tag = CaseTag::p_eq_q;
    std::vector<ConditionOutcome> conditions;
    std::optional<std::size_t> violation_index;
    std::optional<RegionSample> violating_sample;

    [[nodiscard]] const ConditionOutcome* condition(const std::string& name) const;
};

struct GaugeSequence {
    std::vector<double> terms;
    std::optional<double> r_exponent;
};

struct CriteriaOptions {
    std::size_t n_max = 100000;
    double zero_tol = 1e-12;
    /// Use the exponent layout of the printed series condition
    /// ew^{p'q'/(q'-p')} eu^{q'/(q'-p')} mu instead of the reduced form.
    bool printed_exponent = false;
};

/// r = 1/(1/q - 1/p) = p'q'/(q'-p'), defined for q < p.
[[nodiscard]] double series_exponent(const Exponents& exps);

[[nodiscard]] double gauge(const AtomStat& a, const Exponents& exps);
/// Atom n (1-based) of a profile; requires p > 1.
[[nodiscard]] double atom_gauge(const AtomProfile& profile, const Exponents& exps, std::size_t n);

/// (eu ew^{p'/q})^{q'/(q'-p')} mu, i.e. E(|v|^{p'})^{q'/(q'-p')}(A_n) mu(A_n).
[[nodiscard]] double series_term(const AtomStat& a, const Exponents& exps);
/// ew^{p'q'/(q'-p')} eu^{q'/(q'-p')} mu.
[[nodiscard]] double series_term_printed(const AtomStat& a, const Exponents& exps);
/// eu ew^{p'/q} / mu^{(p'-q')/q'}.
[[nodiscard]] double limit_term(const AtomStat& a, const Exponents& exps);
/// eu ew^{q'/q} / mu with eu = E(|u|^{q'}); the L^1-source statistic.
[[nodiscard]] double l1_statistic(const AtomStat& a, double q);

[[nodiscard]] GaugeSequence gauge_sequence(const AtomProfile& profile, const Exponents& exps,
                                           std::size_t count);

[[nodiscard]] Verdict series_criterion(const AtomProfile& profile, const Exponents& exps,
                                       const CriteriaOptions& opts = {});
[[nodiscard]] Verdict limit_criterion(const AtomProfile& profile, const Exponents& exps,
                                      const CriteriaOptions& opts = {});

/// L^1 -> L^q test: necessary condition on A-atoms, sufficient condition on
/// the points (Sigma-atoms). Certificates bound the respective statistics.
[[nodiscard]] Verdict l1_source_criterion(const PointSpace& space, const Partition& partition,
                                          const MeasurableFunction& u,
                                          const MeasurableFunction& w, double q,
                                          const std::optional<TailCertificate>& a_tail,
                                          const std::optional<TailCertificate>& sigma_tail,
                                          const CriteriaOptions& opts = {},
                                          const std::optional<SampledRegion>& region = std::nullopt);

/// Every sample satisfies ew^{1/q} eu^{1/s} <= tol, s = p' (q' when p = 1).
[[nodiscard]] ConditionOutcome essential_zero_on_region(const SampledRegion& region,
                                                        const Exponents& exps, double tol);

struct ProfileInput {
    AtomProfile profile;
};

struct PointInput {
    LambertOperator op;
    /// Tail of the atom sequence (gauge/term for p > 1, the A-atom statistic
    /// for p = 1).
    std::optional<TailCertificate> atom_tail;
    /// Tail of the point statistic, p = 1 only.
    std::optional<TailCertificate> point_tail;
};

using CheckInput = std::variant<ProfileInput, PointInput>;

[[nodiscard]] CaseTag classify(const Exponents& exps);

/// Dispatches to the test matching the exponent regime and conjoins it with
/// the regional condition.
[[nodiscard]] Verdict check_compactness(const CheckInput& input,
                                        const std::optional<SampledRegion>& region,
                                        const Exponents& exps, const CriteriaOptions& opts = {});

struct AtomRow {
    std::size_t n = 0;
    AtomStat stat;
    double gauge = 0.0;
    double term = 0.0;
    double partial_sum = 0.0;
};

/// Per-atom table of the materialized head: gauge and the term the regime's
/// test consumes (series term, limit term or L^1 statistic).
[[nodiscard]] std::vector<AtomRow> atom_rows(const AtomProfile& profile, const Exponents& exps,
                                             const CriteriaOptions& opts = {});

}  // namespace lambert
