#include "lambert/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lambert {

double checked_abs_pow(double x, double s) {
    if (s == 0.0) return 1.0;
    const double r = std::pow(std::abs(x), s);
    if (!std::isfinite(r)) {
        throw EvaluationError("|" + std::to_string(x) + "|^" + std::to_string(s) +
                              " overflows double precision");
    }
    return r;
}

void AtomStat::validate() const {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("AtomStat: mu must be finite and > 0");
    if (!(eu >= 0.0) || !std::isfinite(eu)) throw DomainError("AtomStat: eu must be finite and >= 0");
    if (!(ew >= 0.0) || !std::isfinite(ew)) throw DomainError("AtomStat: ew must be finite and >= 0");
}

TailCertificate TailCertificate::finitely_supported(std::size_t last_nonzero, TailTarget target) {
    TailCertificate c;
    c.kind = TailKind::finitely_supported;
    c.from = last_nonzero + 1;
    c.target = target;
    return c;
}

TailCertificate TailCertificate::power_law(double c_lower, double c_upper, double exponent,
                                           std::size_t from, TailTarget target) {
    TailCertificate c{TailKind::power_law, c_lower, c_upper, exponent, from, target};
    c.validate();
    return c;
}

TailCertificate TailCertificate::geometric(double c_lower, double c_upper, double ratio,
                                           std::size_t from, TailTarget target) {
    TailCertificate c{TailKind::geometric, c_lower, c_upper, ratio, from, target};
    c.validate();
    return c;
}

double TailCertificate::envelope(std::size_t n) const {
    const double x = static_cast<double>(n);
    switch (kind) {
        case TailKind::finitely_supported:
            return 0.0;
        case TailKind::power_law:
            return std::pow(x, -rate);
        case TailKind::geometric:
            return std::pow(rate, x);
    }
    return 0.0;
}

void TailCertificate::validate() const {
    if (from == 0) throw DomainError("tail certificate: 'from' index is 1-based");
    if (kind == TailKind::finitely_supported) return;
    if (!(c_lower >= 0.0) || !std::isfinite(c_lower)) {
        throw DomainError("tail certificate: c_lower must be finite and >= 0");
    }
    if (!(c_upper >= c_lower) || !std::isfinite(c_upper)) {
        throw DomainError("tail certificate: c_upper must be finite and >= c_lower");
    }
    if (!std::isfinite(rate)) throw DomainError("tail certificate: rate must be finite");
    if (kind == TailKind::geometric && !(rate > 0.0 && rate < 1.0)) {
        throw DomainError("tail certificate: geometric ratio must lie in (0, 1)");
    }
}

AtomProfile AtomProfile::finite(std::vector<AtomStat> head) {
    for (const auto& a : head) a.validate();
    AtomProfile p;
    p.head_ = std::move(head);
    p.finite_ = true;
    return p;
}

AtomProfile AtomProfile::unbounded(std::vector<AtomStat> head, AtomRule rule,
                                   std::optional<TailCertificate> tail) {
    for (const auto& a : head) a.validate();
    if (tail) tail->validate();
    if (rule) {
        const auto close = [](double a, double b) {
            return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
        };
        for (std::size_t i = 0; i < head.size(); ++i) {
            const AtomStat r = rule(i + 1);
            if (!close(r.mu, head[i].mu) || !close(r.eu, head[i].eu) || !close(r.ew, head[i].ew)) {
                throw DomainError("AtomProfile: head atom " + std::to_string(i + 1) +
                                  " disagrees with the evaluation rule");
            }
        }
    }
    AtomProfile p;
    p.head_ = std::move(head);
    p.rule_ = std::move(rule);
    p.tail_ = std::move(tail);
    p.finite_ = false;
    return p;
}

AtomStat AtomProfile::at(std::size_t n) const {
    if (n == 0) throw DomainError("AtomProfile: atom indices are 1-based");
    if (n <= head_.size()) return head_[n - 1];
    if (!rule_) {
        throw DomainError("AtomProfile: atom " + std::to_string(n) +
                          " is not materialized and no rule is available");
    }
    AtomStat a = rule_(n);
    a.validate();
    return a;
}

std::size_t AtomProfile::evaluable(std::size_t n_max) const noexcept {
    if (rule_) return std::max(head_.size(), n_max);
    return head_.size();
}

AtomProfile AtomProfile::without_first(std::size_t keep) const {
    if (!finite_) throw DomainError("AtomProfile: truncation requires a finite profile");
    if (keep > head_.size()) {
        throw DomainError("AtomProfile: cannot drop " + std::to_string(keep) + " of " +
                          std::to_string(head_.size()) + " atoms");
    }
    return finite(std::vector<AtomStat>(head_.begin() + static_cast<std::ptrdiff_t>(keep),
                                        head_.end()));
}

AtomProfile AtomProfile::with_tail(std::optional<TailCertificate> tail) const {
    if (tail) tail->validate();
    AtomProfile p = *this;
    p.tail_ = std::move(tail);
    if (p.tail_) p.finite_ = false;
    return p;
}

void SampledRegion::validate() const {
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!(s.mass > 0.0) || !std::isfinite(s.mass)) {
            throw DomainError("region sample " + std::to_string(i) + ": mass must be finite and > 0");
        }
        if (!(s.ew >= 0.0) || !(s.eu >= 0.0) || !std::isfinite(s.ew) || !std::isfinite(s.eu)) {
            throw DomainError("region sample " + std::to_string(i) +
                              ": ew and eu must be finite and >= 0");
        }
    }
}

AtomProfile profile_from_points(const PointSpace& space, const Partition& partition,
                                const MeasurableFunction& u, const MeasurableFunction& w,
                                const Exponents& exps, AggregateMode mode) {
    if (partition.point_count() != space.size()) {
        throw DomainError("profile_from_points: partition does not match the space");
    }
    if (u.size() != space.size() || w.size() != space.size()) {
        throw DomainError("profile_from_points: weights must be defined on every point");
    }
    const double s = mode == AggregateMode::source_conjugate ? exps.p_conj() : exps.q_conj();
    if (std::isinf(s)) {
        throw DomainError(
            "profile_from_points: conjugate exponent is infinite; p = 1 needs target-conjugate "
            "aggregates");
    }
    const double q = exps.q();

    std::vector<AtomStat> atoms;
    atoms.reserve(partition.block_count());
    for (std::size_t n = 1; n <= partition.block_count(); ++n) {
        CompensatedSum mass;
        for (std::size_t pos : partition.block(n)) mass += space.mass(pos);
        const double mu = mass.value();
        CompensatedSum su;
        CompensatedSum sw;
        for (std::size_t pos : partition.block(n)) {
            su += checked_abs_pow(u[pos], s) * space.mass(pos);
            sw += checked_abs_pow(w[pos], q) * space.mass(pos);
        }
        AtomStat a{mu, su.value() / mu, sw.value() / mu};
        if (!std::isfinite(a.eu) || !std::isfinite(a.ew)) {
            throw EvaluationError("profile_from_points: aggregate of atom " + std::to_string(n) +
                                  " overflows");
        }
        atoms.push_back(a);
    }
    return AtomProfile::finite(std::move(atoms));
}

}  // namespace lambert
