#include "lambert/criteria.hpp"

#include "lambert/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lambert {

const char* to_string(Status s) noexcept {
    switch (s) {
        case Status::Compact: return "Compact";
        case Status::NotCompact: return "NotCompact";
        case Status::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const char* to_string(Certainty c) noexcept {
    return c == Certainty::Certified ? "Certified" : "Heuristic";
}

const char* to_string(CaseTag c) noexcept {
    switch (c) {
        case CaseTag::q_lt_p: return "q_lt_p";
        case CaseTag::p_lt_q: return "p_lt_q";
        case CaseTag::p_eq_q: return "p_eq_q";
        case CaseTag::q_eq_1: return "q_eq_1";
        case CaseTag::p_eq_1: return "p_eq_1";
        case CaseTag::nonatomic_A: return "nonatomic_A";
    }
    return "?";
}

const char* to_string(Truth t) noexcept {
    switch (t) {
        case Truth::holds: return "holds";
        case Truth::fails: return "fails";
        case Truth::unknown: return "unknown";
    }
    return "?";
}

std::optional<double> ConditionOutcome::diagnostic(const std::string& key) const {
    for (const auto& [k, v] : diagnostics) {
        if (k == key) return v;
    }
    return std::nullopt;
}

const ConditionOutcome* Verdict::condition(const std::string& name) const {
    for (const auto& c : conditions) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

namespace {

double finite_or_throw(double x, const char* what) {
    if (!std::isfinite(x)) throw EvaluationError(std::string(what) + " overflows double precision");
    return x;
}

void require_source_gt_1(const Exponents& exps, const char* who) {
    if (!(exps.p() > 1.0)) throw DomainError(std::string(who) + ": requires p > 1");
}

}  // namespace

double series_exponent(const Exponents& exps) {
    if (!(exps.q() < exps.p())) throw DomainError("series exponent requires q < p");
    return 1.0 / (1.0 / exps.q() - 1.0 / exps.p());
}

double gauge(const AtomStat& a, const Exponents& exps) {
    require_source_gt_1(exps, "gauge");
    const double pc = exps.p_conj();
    const double q = exps.q();
    return finite_or_throw(std::pow(a.eu, 1.0 / pc) * std::pow(a.ew, 1.0 / q) *
                               std::pow(a.mu, 1.0 / pc + 1.0 / q - 1.0),
                           "atom gauge");
}

double atom_gauge(const AtomProfile& profile, const Exponents& exps, std::size_t n) {
    return gauge(profile.at(n), exps);
}

double series_term(const AtomStat& a, const Exponents& exps) {
    const double r = series_exponent(exps);
    const double pc = exps.p_conj();
    return finite_or_throw(std::pow(a.eu * std::pow(a.ew, pc / exps.q()), r / pc) * a.mu,
                           "series term");
}

double series_term_printed(const AtomStat& a, const Exponents& exps) {
    const double r = series_exponent(exps);
    const double pc = exps.p_conj();
    return finite_or_throw(std::pow(a.ew, r) * std::pow(a.eu, r / pc) * a.mu,
                           "printed series term");
}

double limit_term(const AtomStat& a, const Exponents& exps) {
    require_source_gt_1(exps, "limit term");
    if (!(exps.q() > 1.0)) throw DomainError("limit term: requires q > 1");
    const double pc = exps.p_conj();
    const double qc = exps.q_conj();
    return finite_or_throw(a.eu * std::pow(a.ew, pc / exps.q()) / std::pow(a.mu, (pc - qc) / qc),
                           "limit term");
}

double l1_statistic(const AtomStat& a, double q) {
    if (!(q > 1.0) || !std::isfinite(q)) throw DomainError("L1 statistic: requires 1 < q < inf");
    const double qc = conjugate_exponent(q);
    return finite_or_throw(a.eu * std::pow(a.ew, qc / q) / a.mu, "L1 statistic");
}

GaugeSequence gauge_sequence(const AtomProfile& profile, const Exponents& exps,
                             std::size_t count) {
    GaugeSequence g;
    g.terms.reserve(count);
    for (std::size_t n = 1; n <= count; ++n) g.terms.push_back(atom_gauge(profile, exps, n));
    if (exps.q() < exps.p()) g.r_exponent = series_exponent(exps);
    return g;
}

namespace {

struct SequenceInput {
    std::vector<double> terms;
    bool finite = false;
    std::optional<TailCertificate> cert;
};

void add_heuristics_series(ConditionOutcome& c, const std::vector<double>& t) {
    if (t.empty()) return;
    const std::size_t n = t.size();
    const std::size_t mid = std::max<std::size_t>(1, n / 2);
    c.diagnostics.emplace_back("n_times_term_mid", static_cast<double>(mid) * t[mid - 1]);
    c.diagnostics.emplace_back("n_times_term_last", static_cast<double>(n) * t[n - 1]);
}

void add_heuristics_limit(ConditionOutcome& c, const std::vector<double>& t) {
    if (t.empty()) return;
    const std::size_t window = std::max<std::size_t>(1, (t.size() + 99) / 100);
    double mx = 0.0;
    for (std::size_t i = t.size() - window; i < t.size(); ++i) mx = std::max(mx, t[i]);
    c.diagnostics.emplace_back("max_last_1pct", mx);
}

void check_certificate(const TailCertificate& cert, const std::vector<double>& terms) {
    if (const auto bad = first_envelope_violation(cert, terms)) {
        throw DomainError("tail certificate contradicts materialized term " +
                          std::to_string(*bad) + " (value " +
                          std::to_string(terms[*bad - 1]) + ")");
    }
}

ConditionOutcome decide_series(std::string name, const SequenceInput& in) {
    ConditionOutcome c;
    c.name = std::move(name);
    CompensatedSum s;
    for (double t : in.terms) s += t;
    c.diagnostics.emplace_back("atoms_evaluated", static_cast<double>(in.terms.size()));
    c.diagnostics.emplace_back("partial_sum", s.value());
    c.diagnostics.emplace_back("last_term", in.terms.empty() ? 0.0 : in.terms.back());
    if (in.finite) {
        c.truth = Truth::holds;
        c.certified = true;
        c.detail = "finitely many atoms; the partial sum is the whole series";
        return c;
    }
    if (in.cert) {
        const auto& cert = *in.cert;
        check_certificate(cert, in.terms);
        if (upper_summable(cert)) {
            c.truth = Truth::holds;
            c.certified = true;
            c.detail = "tail certificate upper envelope is summable";
            if (cert.from <= in.terms.size() + 1) {
                const double tail = tail_sum_bound(cert, in.terms.size());
                c.diagnostics.emplace_back("tail_sum_bound", tail);
                c.diagnostics.emplace_back("series_upper_bound", s.value() + tail);
            }
            return c;
        }
        if (lower_divergent(cert)) {
            c.truth = Truth::fails;
            c.certified = true;
            c.violation_index = cert.from;
            c.detail = "tail certificate lower envelope is not summable from index " +
                       std::to_string(cert.from);
            return c;
        }
        c.detail = "tail certificate decides neither convergence nor divergence";
    } else {
        c.detail = "no tail certificate; partial sums only";
    }
    c.truth = Truth::unknown;
    c.certified = false;
    add_heuristics_series(c, in.terms);
    return c;
}

ConditionOutcome decide_limit(std::string name, const SequenceInput& in) {
    ConditionOutcome c;
    c.name = std::move(name);
    c.diagnostics.emplace_back("atoms_evaluated", static_cast<double>(in.terms.size()));
    c.diagnostics.emplace_back("last_term", in.terms.empty() ? 0.0 : in.terms.back());
    if (in.finite) {
        c.truth = Truth::holds;
        c.certified = true;
        c.detail = "finitely many atoms; the limit condition is vacuous";
        return c;
    }
    if (in.cert) {
        const auto& cert = *in.cert;
        check_certificate(cert, in.terms);
        if (upper_vanishes(cert)) {
            c.truth = Truth::holds;
            c.certified = true;
            c.detail = "tail certificate upper envelope tends to 0";
            return c;
        }
        if (lower_persists(cert)) {
            c.truth = Truth::fails;
            c.certified = true;
            c.violation_index = cert.from;
            c.diagnostics.emplace_back("lower_bound", cert.c_lower * cert.envelope(cert.from));
            c.detail = "tail certificate keeps the sequence above " +
                       std::to_string(cert.c_lower * cert.envelope(cert.from)) + " from index " +
                       std::to_string(cert.from);
            return c;
        }
        c.detail = "tail certificate decides neither limit";
    } else {
        c.detail = "no tail certificate; the limit is not decidable from finitely many terms";
    }
    c.truth = Truth::unknown;
    c.certified = false;
    add_heuristics_limit(c, in.terms);
    return c;
}

bool decisive_series(const std::optional<TailCertificate>& c) {
    return c && (upper_summable(*c) || lower_divergent(*c));
}

bool decisive_limit(const std::optional<TailCertificate>& c) {
    return c && (upper_vanishes(*c) || lower_persists(*c));
}

std::size_t evaluation_count(const AtomProfile& profile, bool decisive,
                             const CriteriaOptions& opts) {
    if (profile.is_finite() || !profile.has_rule() || decisive) return profile.head_size();
    return profile.evaluable(opts.n_max);
}

Verdict from_condition(ConditionOutcome c, CaseTag tag) {
    Verdict v;
    v.case_tag = tag;
    switch (c.truth) {
        case Truth::holds:
            v.status = Status::Compact;
            v.certainty = Certainty::Certified;
            break;
        case Truth::fails:
            v.status = Status::NotCompact;
            v.certainty = Certainty::Certified;
            v.violation_index = c.violation_index;
            v.violating_sample = c.violating_sample;
            break;
        case Truth::unknown:
            v.status = Status::Inconclusive;
            v.certainty = Certainty::Heuristic;
            break;
    }
    v.conditions.push_back(std::move(c));
    return v;
}

ConditionOutcome vacuous(std::string name, std::string detail) {
    ConditionOutcome c;
    c.name = std::move(name);
    c.truth = Truth::holds;
    c.certified = true;
    c.detail = std::move(detail);
    return c;
}

ConditionOutcome unknown_condition(std::string name, std::string detail) {
    ConditionOutcome c;
    c.name = std::move(name);
    c.truth = Truth::unknown;
    c.detail = std::move(detail);
    return c;
}

}  // namespace

Verdict series_criterion(const AtomProfile& profile, const Exponents& exps,
                         const CriteriaOptions& opts) {
    if (!(exps.q() < exps.p())) {
        throw DomainError("series_criterion: requires 1 <= q < p, got p = " +
                          std::to_string(exps.p()) + ", q = " + std::to_string(exps.q()));
    }
    const double r = series_exponent(exps);
    std::optional<TailCertificate> cert = profile.tail();
    if (cert && cert->target == TailTarget::gauge) {
        if (opts.printed_exponent) {
            throw DomainError("series_criterion: the printed-exponent variant needs a term-level "
                              "certificate");
        }
        cert = raise_certificate(*cert, r);
    }
    SequenceInput in;
    in.finite = profile.is_finite();
    in.cert = cert;
    const std::size_t count = evaluation_count(profile, decisive_series(cert), opts);
    in.terms.reserve(count);
    for (std::size_t n = 1; n <= count; ++n) {
        const AtomStat a = profile.at(n);
        in.terms.push_back(opts.printed_exponent ? series_term_printed(a, exps)
                                                 : series_term(a, exps));
    }
    ConditionOutcome c = decide_series("atomic_series", in);
    c.diagnostics.emplace_back("r_exponent", r);
    return from_condition(std::move(c), exps.q() == 1.0 ? CaseTag::q_eq_1 : CaseTag::q_lt_p);
}

Verdict limit_criterion(const AtomProfile& profile, const Exponents& exps,
                        const CriteriaOptions& opts) {
    if (!(exps.p() > 1.0 && exps.p() <= exps.q())) {
        throw DomainError("limit_criterion: requires 1 < p <= q, got p = " +
                          std::to_string(exps.p()) + ", q = " + std::to_string(exps.q()));
    }
    const double pc = exps.p_conj();
    std::optional<TailCertificate> cert = profile.tail();
    if (cert && cert->target == TailTarget::term) cert = raise_certificate(*cert, 1.0 / pc);

    SequenceInput in;
    in.finite = profile.is_finite();
    in.cert = cert;
    const std::size_t count = evaluation_count(profile, decisive_limit(cert), opts);
    in.terms.reserve(count);
    double cross = 0.0;
    for (std::size_t n = 1; n <= count; ++n) {
        const AtomStat a = profile.at(n);
        const double g = gauge(a, exps);
        const double b = limit_term(a, exps);
        const double gp = std::pow(g, pc);
        cross = std::max(cross, std::abs(b - gp) / std::max({b, gp, 1e-300}));
        in.terms.push_back(g);
    }
    ConditionOutcome c = decide_limit("atomic_limit", in);
    c.diagnostics.emplace_back("limit_term_cross_check", cross);
    return from_condition(std::move(c),
                          exps.p() == exps.q() ? CaseTag::p_eq_q : CaseTag::p_lt_q);
}

ConditionOutcome essential_zero_on_region(const SampledRegion& region, const Exponents& exps,
                                          double tol) {
    if (!(tol >= 0.0)) throw DomainError("essential_zero_on_region: tol must be >= 0");
    region.validate();
    const double s = exps.p() > 1.0 ? exps.p_conj() : exps.q_conj();
    ConditionOutcome c;
    c.name = "regional_zero";
    c.certified = true;
    c.truth = Truth::holds;
    double worst = 0.0;
    for (std::size_t i = 0; i < region.samples.size(); ++i) {
        const auto& smp = region.samples[i];
        const double product = std::pow(smp.ew, 1.0 / exps.q()) * std::pow(smp.eu, 1.0 / s);
        worst = std::max(worst, product);
        if (product > tol && c.truth == Truth::holds) {
            c.truth = Truth::fails;
            c.violation_index = i;
            c.violating_sample = smp;
            c.detail = "sample " + std::to_string(i) + " (mass " + std::to_string(smp.mass) +
                       ") has gauge " + std::to_string(product);
        }
    }
    c.diagnostics.emplace_back("samples", static_cast<double>(region.samples.size()));
    c.diagnostics.emplace_back("max_sample_gauge", worst);
    if (c.truth == Truth::holds) {
        c.detail = region.samples.empty() ? "no samples; vacuous" : "all samples within tolerance";
    }
    return c;
}

namespace {

SequenceInput l1_sequence(std::vector<double> terms, bool finite,
                          const std::optional<TailCertificate>& cert) {
    SequenceInput in;
    in.terms = std::move(terms);
    in.finite = finite;
    in.cert = cert;
    return in;
}

Verdict combine_l1(ConditionOutcome nec_region, ConditionOutcome nec_limit,
                   ConditionOutcome suf_region, ConditionOutcome suf_limit) {
    Verdict v;
    v.case_tag = CaseTag::p_eq_1;
    const auto fails = [](const ConditionOutcome& c) {
        return c.truth == Truth::fails && c.certified;
    };
    const auto holds = [](const ConditionOutcome& c) { return c.truth == Truth::holds; };
    if (fails(nec_region) || fails(nec_limit)) {
        const ConditionOutcome& bad = fails(nec_region) ? nec_region : nec_limit;
        v.status = Status::NotCompact;
        v.certainty = Certainty::Certified;
        v.violation_index = bad.violation_index;
        v.violating_sample = bad.violating_sample;
    } else if (holds(suf_region) && holds(suf_limit)) {
        v.status = Status::Compact;
        v.certainty = Certainty::Certified;
    } else if (holds(nec_region) && holds(nec_limit) &&
               (fails(suf_region) || fails(suf_limit))) {
        // Necessary holds, sufficient fails: no characterization exists here.
        v.status = Status::Inconclusive;
        v.certainty = Certainty::Certified;
    } else {
        v.status = Status::Inconclusive;
        v.certainty = Certainty::Heuristic;
    }
    v.conditions = {std::move(nec_region), std::move(nec_limit), std::move(suf_region),
                    std::move(suf_limit)};
    return v;
}

std::pair<ConditionOutcome, ConditionOutcome> l1_regions(
    const std::optional<SampledRegion>& region, const Exponents& exps, double tol) {
    if (!region) {
        return {vacuous("necessary_regional", "no non-atomic part"),
                vacuous("sufficient_regional", "no non-atomic part")};
    }
    ConditionOutcome c = essential_zero_on_region(*region, exps, tol);
    if (region->level == RegionLevel::A_level) {
        c.name = "necessary_regional";
        return {std::move(c),
                unknown_condition("sufficient_regional", "no Sigma-level samples supplied")};
    }
    c.name = "sufficient_regional";
    return {unknown_condition("necessary_regional", "no A-level samples supplied"), std::move(c)};
}

}  // namespace

Verdict l1_source_criterion(const PointSpace& space, const Partition& partition,
                            const MeasurableFunction& u, const MeasurableFunction& w, double q,
                            const std::optional<TailCertificate>& a_tail,
                            const std::optional<TailCertificate>& sigma_tail,
                            const CriteriaOptions& opts,
                            const std::optional<SampledRegion>& region) {
    if (!(q > 1.0) || !std::isfinite(q)) {
        throw DomainError("l1_source_criterion: requires 1 < q < inf, got q = " +
                          std::to_string(q));
    }
    const Exponents exps(1.0, q);
    const AtomProfile atoms =
        profile_from_points(space, partition, u, w, exps, AggregateMode::target_conjugate);

    std::vector<double> atom_terms;
    atom_terms.reserve(atoms.head_size());
    for (const auto& a : atoms.head()) atom_terms.push_back(l1_statistic(a, q));

    std::vector<double> point_terms(space.size());
    for (std::size_t pos = 0; pos < space.size(); ++pos) {
        AtomStat at = atoms.head()[partition.atom_of(pos) - 1];
        at.mu = space.mass(pos);
        point_terms[pos] = l1_statistic(at, q);
    }

    const bool finite = !a_tail && !sigma_tail;
    ConditionOutcome nec_limit = decide_limit("necessary_limit", l1_sequence(atom_terms, finite, a_tail));
    ConditionOutcome suf_limit;
    if (!finite && !sigma_tail) {
        suf_limit = unknown_condition("sufficient_limit",
                                      "infinitely many points but no point-level certificate");
        add_heuristics_limit(suf_limit, point_terms);
    } else {
        suf_limit = decide_limit("sufficient_limit", l1_sequence(point_terms, finite, sigma_tail));
    }
    if (!finite && !a_tail) {
        nec_limit = unknown_condition("necessary_limit", "no atom-level certificate");
        add_heuristics_limit(nec_limit, atom_terms);
    }
    auto [nec_region, suf_region] = l1_regions(region, exps, opts.zero_tol);
    return combine_l1(std::move(nec_region), std::move(nec_limit), std::move(suf_region),
                      std::move(suf_limit));
}

CaseTag classify(const Exponents& exps) {
    const double p = exps.p();
    const double q = exps.q();
    if (p == 1.0) return CaseTag::p_eq_1;
    if (q == 1.0) return CaseTag::q_eq_1;
    if (q < p) return CaseTag::q_lt_p;
    if (p < q) return CaseTag::p_lt_q;
    return CaseTag::p_eq_q;
}

namespace {

Verdict unsupported_l1_l1() {
    Verdict v;
    v.case_tag = CaseTag::p_eq_1;
    v.status = Status::Inconclusive;
    v.certainty = Certainty::Heuristic;
    v.conditions.push_back(
        unknown_condition("unsupported", "no compactness characterization for L^1 -> L^1"));
    return v;
}

Verdict nonatomic(const std::optional<SampledRegion>& region, const Exponents& exps,
                  const CriteriaOptions& opts) {
    ConditionOutcome c =
        region ? essential_zero_on_region(*region, exps, opts.zero_tol)
               : vacuous("regional_zero", "empty space");
    c.name = "zero_operator";
    if (c.truth == Truth::holds) c.detail = "gauge vanishes on every sample: zero operator";
    return from_condition(std::move(c), CaseTag::nonatomic_A);
}

Verdict l1_from_profile(const AtomProfile& profile, const Exponents& exps,
                        const std::optional<SampledRegion>& region, const CriteriaOptions& opts) {
    std::vector<double> terms;
    const std::size_t count =
        evaluation_count(profile, decisive_limit(profile.tail()), opts);
    terms.reserve(count);
    for (std::size_t n = 1; n <= count; ++n) terms.push_back(l1_statistic(profile.at(n), exps.q()));
    ConditionOutcome nec_limit = decide_limit(
        "necessary_limit", l1_sequence(std::move(terms), profile.is_finite(), profile.tail()));
    auto [nec_region, ignored] = l1_regions(region, exps, opts.zero_tol);
    (void)ignored;
    return combine_l1(std::move(nec_region), std::move(nec_limit),
                      unknown_condition("sufficient_regional", "atom profile has no point data"),
                      unknown_condition("sufficient_limit", "atom profile has no point data"));
}

Verdict conjoin_region(Verdict atomic, const std::optional<SampledRegion>& region,
                       const Exponents& exps, const CriteriaOptions& opts) {
    if (!region) return atomic;
    if (region->level != RegionLevel::A_level) {
        throw DomainError("check_compactness: p > 1 needs an A-level region (the part B)");
    }
    ConditionOutcome c = essential_zero_on_region(*region, exps, opts.zero_tol);
    if (c.truth == Truth::fails) {
        atomic.status = Status::NotCompact;
        atomic.certainty = Certainty::Certified;
        atomic.violating_sample = c.violating_sample;
        atomic.violation_index.reset();
    }
    atomic.conditions.insert(atomic.conditions.begin(), std::move(c));
    return atomic;
}

}  // namespace

Verdict check_compactness(const CheckInput& input, const std::optional<SampledRegion>& region,
                          const Exponents& exps, const CriteriaOptions& opts) {
    if (exps.p() == 1.0 && exps.q() == 1.0) return unsupported_l1_l1();
    const CaseTag tag = classify(exps);

    if (const auto* pi = std::get_if<PointInput>(&input)) {
        const LambertOperator& T = pi->op;
        if (tag == CaseTag::p_eq_1) {
            return l1_source_criterion(T.space(), T.partition(), T.u(), T.w(), exps.q(),
                                       pi->atom_tail, pi->point_tail, opts, region);
        }
        AtomProfile profile = profile_from_points(T.space(), T.partition(), T.u(), T.w(), exps);
        if (pi->atom_tail) profile = profile.with_tail(pi->atom_tail);
        return check_compactness(ProfileInput{std::move(profile)}, region, exps, opts);
    }

    const AtomProfile& profile = std::get<ProfileInput>(input).profile;
    if (profile.is_finite() && profile.head_size() == 0) return nonatomic(region, exps, opts);
    if (tag == CaseTag::p_eq_1) return l1_from_profile(profile, exps, region, opts);
    Verdict atomic = (tag == CaseTag::q_lt_p || tag == CaseTag::q_eq_1)
                         ? series_criterion(profile, exps, opts)
                         : limit_criterion(profile, exps, opts);
    return conjoin_region(std::move(atomic), region, exps, opts);
}

std::vector<AtomRow> atom_rows(const AtomProfile& profile, const Exponents& exps,
                               const CriteriaOptions& opts) {
    std::vector<AtomRow> rows;
    if (exps.p() == 1.0 && exps.q() == 1.0) return rows;
    const CaseTag tag = classify(exps);
    rows.reserve(profile.head_size());
    CompensatedSum s;
    for (std::size_t n = 1; n <= profile.head_size(); ++n) {
        AtomRow row;
        row.n = n;
        row.stat = profile.at(n);
        switch (tag) {
            case CaseTag::p_eq_1:
                row.term = l1_statistic(row.stat, exps.q());
                row.gauge = std::pow(row.term, 1.0 / exps.q_conj());
                break;
            case CaseTag::q_lt_p:
            case CaseTag::q_eq_1:
                row.gauge = gauge(row.stat, exps);
                row.term = opts.printed_exponent ? series_term_printed(row.stat, exps)
                                                 : series_term(row.stat, exps);
                break;
            default:
                row.gauge = gauge(row.stat, exps);
                row.term = limit_term(row.stat, exps);
                break;
        }
        s += row.term;
        row.partial_sum = s.value();
        rows.push_back(row);
    }
    return rows;
}

}  // namespace lambert
