#include "lambert/norm_lab.hpp"

#include "lambert/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

namespace lambert {

namespace {

void require_interior(const Exponents& exps, const char* who) {
    if (!(exps.p() > 1.0) || !(exps.q() > 1.0)) {
        throw DomainError(std::string(who) + ": requires 1 < p, q < inf");
    }
}

}  // namespace

double closed_form_norm(const AtomProfile& profile, const Exponents& exps) {
    require_interior(exps, "closed_form_norm");
    if (!profile.is_finite()) throw DomainError("closed_form_norm: requires a finite profile");
    double top = 0.0;
    std::vector<double> a;
    a.reserve(profile.head_size());
    for (const auto& stat : profile.head()) {
        a.push_back(gauge(stat, exps));
        top = std::max(top, a.back());
    }
    if (exps.p() <= exps.q() || top == 0.0) return top;
    const double r = series_exponent(exps);
    CompensatedSum s;
    for (double x : a) s += std::pow(x / top, r);
    return top * std::pow(s.value(), 1.0 / r);
}

MeasurableFunction duality_map(const MeasurableFunction& f, double r) {
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = f[i];
        out[i] = x == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(x), r - 1.0), x);
    }
    return MeasurableFunction(std::move(out));
}

namespace {

struct RunResult {
    double value = 0.0;
    MeasurableFunction f;
    std::size_t iterations = 0;
    bool converged = false;
};

std::optional<MeasurableFunction> normalized(const MeasurableFunction& f, double p,
                                             const PointSpace& space) {
    const double n = lp_norm(f, p, space);
    if (!(n > 0.0) || !std::isfinite(n)) return std::nullopt;
    return (1.0 / n) * f;
}

RunResult iterate(const LambertOperator& T, const LambertOperator& Tstar, const Exponents& exps,
                  MeasurableFunction start, const PowerOptions& opts) {
    const PointSpace& space = T.space();
    const double p = exps.p();
    const double q = exps.q();
    const double pc = exps.p_conj();

    RunResult res;
    auto f0 = normalized(start, p, space);
    if (!f0) {
        res.f = MeasurableFunction::constant(space.size(), 0.0);
        res.converged = true;
        return res;
    }
    res.f = std::move(*f0);
    MeasurableFunction g = apply(T, res.f);
    res.value = lp_norm(g, q, space);
    std::size_t quiet = 0;
    while (res.iterations < opts.max_iter) {
        if (res.value == 0.0) {
            res.converged = true;
            break;
        }
        const MeasurableFunction h = apply(Tstar, duality_map(g, q));
        auto next = normalized(duality_map(h, pc), p, space);
        if (!next) {
            res.converged = true;
            break;
        }
        MeasurableFunction g_next = apply(T, *next);
        const double value = lp_norm(g_next, q, space);
        ++res.iterations;
        if (value < res.value * (1.0 - 1e-9)) {
            throw std::logic_error("power_method_norm: objective decreased from " +
                                   std::to_string(res.value) + " to " + std::to_string(value));
        }
        const bool small = std::abs(value - res.value) <= opts.tol * value;
        if (value >= res.value) {
            res.value = value;
            res.f = std::move(*next);
            g = std::move(g_next);
        }
        quiet = small ? quiet + 1 : 0;
        if (quiet >= 3) {
            res.converged = true;
            break;
        }
    }
    return res;
}

MeasurableFunction random_start(std::size_t n, std::uint64_t seed, std::size_t restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return MeasurableFunction(std::move(v));
}

MeasurableFunction atom_start(const LambertOperator& T, std::size_t n, double pc) {
    std::vector<double> v(T.space().size(), 0.0);
    for (std::size_t pos : T.partition().block(n)) {
        const double x = T.u()[pos];
        v[pos] = x == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(x), pc - 1.0), x);
    }
    return MeasurableFunction(std::move(v));
}

}  // namespace

NormEstimate power_method_norm(const LambertOperator& T, const Exponents& exps,
                               const PowerOptions& opts) {
    require_interior(exps, "power_method_norm");
    const LambertOperator Tstar = adjoint(T);
    const std::size_t atoms = opts.atom_seeds ? T.partition().block_count() : 0;

    NormEstimate best;
    best.maximizer = MeasurableFunction::constant(T.space().size(), 0.0);
    best.value = -1.0;
    const std::size_t total = opts.restarts + atoms;
    for (std::size_t k = 0; k < total; ++k) {
        MeasurableFunction start = k < opts.restarts
                                       ? random_start(T.space().size(), opts.seed, k)
                                       : atom_start(T, k - opts.restarts + 1, exps.p_conj());
        RunResult r = iterate(T, Tstar, exps, std::move(start), opts);
        if (r.value > best.value) {
            best.value = r.value;
            best.maximizer = std::move(r.f);
            best.iterations = r.iterations;
            best.converged = r.converged;
            best.best_restart = k;
        }
    }
    best.restarts_used = total;
    if (best.value < 0.0) best.value = 0.0;
    best.value = lp_norm(apply(T, best.maximizer), exps.q(), T.space());
    return best;
}

double tail_norm(const AtomProfile& profile, const Exponents& exps, std::size_t keep) {
    return closed_form_norm(profile.without_first(keep), exps);
}

std::vector<double> approximation_decay_probe(const LambertOperator& T, const Exponents& exps,
                                              std::size_t horizon) {
    if (horizon > T.partition().block_count()) {
        throw DomainError("approximation_decay_probe: horizon " + std::to_string(horizon) +
                          " exceeds " + std::to_string(T.partition().block_count()) + " atoms");
    }
    require_interior(exps, "approximation_decay_probe");
    const AtomProfile profile = profile_from_points(T.space(), T.partition(), T.u(), T.w(), exps);
    const std::size_t count = profile.head_size();
    std::vector<double> a(count);
    double top = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        a[i] = gauge(profile.head()[i], exps);
        top = std::max(top, a[i]);
    }
    // Plain suffix sums: exactly non-increasing in k.
    std::vector<double> suffix(count + 1, 0.0);
    const bool summed = exps.q() < exps.p();
    const double r = summed ? series_exponent(exps) : 1.0;
    for (std::size_t i = count; i-- > 0;) {
        suffix[i] = summed ? suffix[i + 1] + (top > 0.0 ? std::pow(a[i] / top, r) : 0.0)
                           : std::max(suffix[i + 1], a[i]);
    }
    std::vector<double> out;
    out.reserve(horizon + 1);
    for (std::size_t k = 0; k <= horizon; ++k) {
        out.push_back(summed ? top * std::pow(suffix[k], 1.0 / r) : suffix[k]);
    }
    return out;
}

}  // namespace lambert
