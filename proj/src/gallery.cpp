#include "lambert/gallery.hpp"

#include "lambert/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace lambert {

double PowerRule::operator()(std::size_t n) const {
    return coef * std::pow(static_cast<double>(n), exp);
}

namespace {

AggregateMode mode_for(const Exponents& exps) {
    return exps.p() > 1.0 ? AggregateMode::source_conjugate : AggregateMode::target_conjugate;
}

double eu_exponent(const Exponents& exps) {
    return exps.p() > 1.0 ? exps.p_conj() : exps.q_conj();
}

/// Unit-mass block statistic, summed in the order given (matches profile_from_points).
AtomStat unit_block_stat(const std::vector<std::size_t>& points, const std::function<double(std::size_t)>& u,
                         const std::function<double(std::size_t)>& w, const Exponents& exps) {
    const double s = eu_exponent(exps);
    CompensatedSum mass;
    CompensatedSum su;
    CompensatedSum sw;
    for (std::size_t x : points) {
        mass += 1.0;
        su += checked_abs_pow(u(x), s);
        sw += checked_abs_pow(w(x), exps.q());
    }
    const double mu = mass.value();
    return AtomStat{mu, su.value() / mu, sw.value() / mu};
}

class MergedPairModel final : public InstanceModel {
public:
    MergedPairModel(Instance base, PowerRule u, PowerRule w)
        : base_(std::move(base)), u_(u), w_(w) {}

    AtomProfile profile(const Exponents& exps) const override {
        AtomProfile head =
            profile_from_points(base_.space, base_.partition, base_.u, base_.w, exps, mode_for(exps));
        const PowerRule u = u_;
        const PowerRule w = w_;
        AtomRule rule = [u, w, exps](std::size_t j) {
            if (j == 1) return unit_block_stat({1, 2}, u, w, exps);
            return unit_block_stat({j + 1}, u, w, exps);
        };
        std::optional<TailCertificate> tail;
        if (exps.p() > 1.0) tail = gauge_tail();
        return AtomProfile::unbounded(std::vector<AtomStat>(head.head().begin(), head.head().end()),
                                      std::move(rule), tail);
    }

    std::optional<TailCertificate> l1_atom_tail(double q) const override {
        return raise_certificate(gauge_tail(), conjugate_exponent(q));
    }

    std::optional<TailCertificate> l1_point_tail(double q) const override {
        // Point c >= 3 is a singleton unit-mass atom: statistic (|c_u c_w| c^sigma)^{q'}.
        const double qc = conjugate_exponent(q);
        const double c = std::pow(std::abs(u_.coef * w_.coef), qc);
        return TailCertificate::power_law(c, c, -(u_.exp + w_.exp) * qc, 3, TailTarget::term);
    }

private:
    // Atom j >= 2 is the point j + 1 with gauge |c_u c_w| (j+1)^sigma, and
    // j <= j + 1 <= 1.5 j on that range.
    TailCertificate gauge_tail() const {
        const double c = std::abs(u_.coef * w_.coef);
        const double sigma = u_.exp + w_.exp;
        const double stretch = std::pow(1.5, sigma);
        const double lo = sigma <= 0.0 ? c * stretch : c;
        const double hi = sigma <= 0.0 ? c : c * stretch;
        return TailCertificate::power_law(lo, hi, -sigma, 2, TailTarget::gauge);
    }

    Instance base_;
    PowerRule u_;
    PowerRule w_;
};

double growing_u(std::size_t n) { return static_cast<double>(n); }
double growing_w(std::size_t n) { return std::pow(static_cast<double>(n), -3.0); }

/// Number of even atoms whose smallest point is <= m.
std::size_t even_atoms_upto(std::size_t m) {
    const std::size_t half = m / 2;
    if (half == 0) return 0;
    auto j = static_cast<std::size_t>(
        (1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(half - 1))) / 2.0);
    while (j > 0 && growing_block_offset(j) > half) --j;
    while (growing_block_offset(j + 1) <= half) ++j;
    return j;
}

std::size_t atoms_upto(std::size_t m) { return (m + 1) / 2 + even_atoms_upto(m); }

class GrowingBlocksModel final : public InstanceModel {
public:
    explicit GrowingBlocksModel(Instance base) : base_(std::move(base)) {}

    AtomProfile profile(const Exponents& exps) const override {
        AtomProfile head =
            profile_from_points(base_.space, base_.partition, base_.u, base_.w, exps, mode_for(exps));
        AtomRule rule = [exps](std::size_t n) {
            return unit_block_stat(growing_blocks_atom(n), growing_u, growing_w, exps);
        };
        std::optional<TailCertificate> tail;
        // a_n <= 1/n on every atom.
        if (exps.p() > 1.0) tail = TailCertificate::power_law(0.0, 1.0, 1.0, 1, TailTarget::gauge);
        return AtomProfile::unbounded(std::vector<AtomStat>(head.head().begin(), head.head().end()),
                                      std::move(rule), tail);
    }

    std::optional<TailCertificate> l1_atom_tail(double q) const override {
        const double qc = conjugate_exponent(q);
        return TailCertificate::power_law(0.0, std::pow(2.0, qc), 2.0 * qc, 1, TailTarget::term);
    }

    std::optional<TailCertificate> l1_point_tail(double q) const override {
        const double qc = conjugate_exponent(q);
        return TailCertificate::power_law(0.0, std::pow(8.0, qc), 2.0 * qc, 1, TailTarget::term);
    }

private:
    Instance base_;
};

}  // namespace

Instance merged_pair_instance(std::size_t n_points, PowerRule u, PowerRule w) {
    if (n_points < 2) throw DomainError("merged_pair_instance: needs at least 2 points");
    PointSpace space = PointSpace::counting(n_points);
    Partition partition = partition_from_map(space, [](PointId n) -> std::optional<std::int64_t> {
        return n == 1 ? 1 : n - 1;
    });
    std::vector<double> uv(n_points);
    std::vector<double> wv(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        uv[i] = u(i + 1);
        wv[i] = w(i + 1);
    }
    Instance inst{std::move(space), std::move(partition), MeasurableFunction(std::move(uv)),
                  MeasurableFunction(std::move(wv)), std::nullopt,
                  "example_2_5_b(n_points=" + std::to_string(n_points) + ")", nullptr};
    inst.model = std::make_shared<MergedPairModel>(inst, u, w);
    return inst;
}

std::size_t growing_block_offset(std::size_t j) { return 1 + j * (j - 1) / 2; }

std::vector<std::size_t> growing_blocks_atom(std::size_t n) {
    if (n == 0) throw DomainError("growing_blocks_atom: atom indices are 1-based");
    std::size_t lo = 1;
    std::size_t hi = 2 * n;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (atoms_upto(mid) >= n) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    const std::size_t first = lo;
    if (first % 2 == 1) return {first};
    const std::size_t j = even_atoms_upto(first);
    std::vector<std::size_t> pts(j);
    for (std::size_t i = 0; i < j; ++i) pts[i] = first + 2 * i;
    return pts;
}

Instance growing_blocks_instance(std::size_t n_atoms) {
    if (n_atoms == 0) throw DomainError("growing_blocks_instance: needs at least one atom");
    const std::size_t top = 2 * (growing_block_offset(n_atoms) + n_atoms - 1);
    PointSpace space = PointSpace::counting(top);
    Partition partition = partition_from_map(space, [](PointId id) -> std::optional<std::int64_t> {
        const auto m = static_cast<std::size_t>(id);
        if (m % 2 == 1) return id;
        // Even points are labelled by the smallest point 2 k_j of their atom.
        return static_cast<std::int64_t>(2 * growing_block_offset(even_atoms_upto(m)));
    });
    std::vector<double> uv(top);
    std::vector<double> wv(top);
    for (std::size_t i = 0; i < top; ++i) {
        uv[i] = growing_u(i + 1);
        wv[i] = growing_w(i + 1);
    }
    Instance inst{std::move(space), std::move(partition), MeasurableFunction(std::move(uv)),
                  MeasurableFunction(std::move(wv)), std::nullopt,
                  "example_2_5_c(n_atoms=" + std::to_string(n_atoms) + ")", nullptr};
    inst.model = std::make_shared<GrowingBlocksModel>(inst);
    return inst;
}

Instance random_instance(std::uint64_t seed, std::size_t n_points, std::size_t n_blocks,
                         double weight_scale) {
    if (n_points == 0 || n_blocks == 0) throw DomainError("random_instance: sizes must be positive");
    if (n_blocks > n_points) {
        throw DomainError("random_instance: n_blocks = " + std::to_string(n_blocks) +
                          " exceeds n_points = " + std::to_string(n_points));
    }
    if (!(weight_scale > 0.0) || !std::isfinite(weight_scale)) {
        throw DomainError("random_instance: weight_scale must be finite and > 0");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mass_dist(0.1, 10.0);
    std::uniform_real_distribution<double> weight_dist(-weight_scale, weight_scale);
    std::uniform_int_distribution<std::size_t> block_dist(0, n_blocks - 1);

    std::vector<double> masses(n_points);
    for (double& m : masses) m = mass_dist(rng);
    std::vector<std::size_t> order(n_points);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::int64_t> label(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        label[order[i]] = static_cast<std::int64_t>(i < n_blocks ? i : block_dist(rng));
    }
    std::vector<double> uv(n_points);
    std::vector<double> wv(n_points);
    for (double& x : uv) x = weight_dist(rng);
    for (double& x : wv) x = weight_dist(rng);

    std::vector<PointId> ids(n_points);
    std::iota(ids.begin(), ids.end(), PointId{1});
    PointSpace space(std::move(ids), std::move(masses));
    Partition partition = partition_from_map(space, [&label](PointId id) -> std::optional<std::int64_t> {
        return label[static_cast<std::size_t>(id - 1)];
    });
    return Instance{std::move(space), std::move(partition), MeasurableFunction(std::move(uv)),
                    MeasurableFunction(std::move(wv)), std::nullopt,
                    "random(seed=" + std::to_string(seed) + ")", nullptr};
}

}  // namespace lambert
