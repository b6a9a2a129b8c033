#include "lambert/config.hpp"

#include <json.hpp>

#include <cmath>
#include <set>

namespace lambert {

using nlohmann::json;

namespace {

/// Strict view of a JSON object: every key must be consumed.
class Fields {
public:
    Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    [[nodiscard]] std::string child(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

    [[nodiscard]] bool has(const std::string& key) const { return j_.contains(key); }

    const json& required(const std::string& key) {
        if (!j_.contains(key)) throw ConfigError(child(key), "missing required field");
        used_.insert(key);
        return j_.at(key);
    }

    const json* optional(const std::string& key) {
        if (!j_.contains(key)) return nullptr;
        used_.insert(key);
        return &j_.at(key);
    }

    void finish() const {
        for (const auto& [key, value] : j_.items()) {
            if (!used_.count(key)) throw ConfigError(child(key), "unknown field");
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
    return x;
}

std::size_t count(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
        throw ConfigError(path, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

std::string text(const json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError(path, "expected a string");
    return j.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<PointId> point_ids(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array of point ids");
    std::vector<PointId> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer()) {
            throw ConfigError(path + "[" + std::to_string(i) + "]", "expected an integer point id");
        }
        out.push_back(j[i].get<PointId>());
    }
    return out;
}

PowerRule parse_rule(const json& j, const std::string& path) {
    Fields f(j, path);
    const std::string kind = text(f.required("kind"), f.child("kind"));
    if (kind != "power") throw ConfigError(f.child("kind"), "unknown rule kind '" + kind + "'");
    PowerRule r;
    if (const auto* c = f.optional("coef")) r.coef = number(*c, f.child("coef"));
    if (const auto* e = f.optional("exp")) r.exp = number(*e, f.child("exp"));
    f.finish();
    return r;
}

json emit_rule(const PowerRule& r) {
    return json{{"kind", "power"}, {"coef", r.coef}, {"exp", r.exp}};
}

TailCertificate parse_tail(const json& j, const std::string& path) {
    Fields f(j, path);
    const std::string kind = text(f.required("kind"), f.child("kind"));
    TailTarget target = TailTarget::gauge;
    if (const auto* t = f.optional("applies_to")) {
        const std::string s = text(*t, f.child("applies_to"));
        if (s == "gauge") {
            target = TailTarget::gauge;
        } else if (s == "term") {
            target = TailTarget::term;
        } else {
            throw ConfigError(f.child("applies_to"), "expected 'gauge' or 'term'");
        }
    }
    TailCertificate c;
    try {
        if (kind == "finitely_supported") {
            c = TailCertificate::finitely_supported(count(f.required("support"), f.child("support")),
                                                    target);
        } else if (kind == "power_law" || kind == "geometric") {
            const double lo = number(f.required("c_lower"), f.child("c_lower"));
            const double hi = number(f.required("c_upper"), f.child("c_upper"));
            const double rate = number(f.required("rate"), f.child("rate"));
            std::size_t from = 1;
            if (const auto* x = f.optional("from")) from = count(*x, f.child("from"));
            c = kind == "power_law" ? TailCertificate::power_law(lo, hi, rate, from, target)
                                    : TailCertificate::geometric(lo, hi, rate, from, target);
        } else {
            throw ConfigError(f.child("kind"), "unknown certificate kind '" + kind + "'");
        }
    } catch (const DomainError& e) {
        throw ConfigError(path, e.what());
    }
    f.finish();
    return c;
}

json emit_tail(const TailCertificate& c) {
    json j;
    j["applies_to"] = c.target == TailTarget::gauge ? "gauge" : "term";
    switch (c.kind) {
        case TailKind::finitely_supported:
            j["kind"] = "finitely_supported";
            j["support"] = c.from - 1;
            return j;
        case TailKind::power_law:
            j["kind"] = "power_law";
            break;
        case TailKind::geometric:
            j["kind"] = "geometric";
            break;
    }
    j["c_lower"] = c.c_lower;
    j["c_upper"] = c.c_upper;
    j["rate"] = c.rate;
    j["from"] = c.from;
    return j;
}

AtomStat parse_atom(const json& j, const std::string& path) {
    Fields f(j, path);
    AtomStat a;
    a.mu = number(f.required("mu"), f.child("mu"));
    a.eu = number(f.required("eu"), f.child("eu"));
    a.ew = number(f.required("ew"), f.child("ew"));
    f.finish();
    try {
        a.validate();
    } catch (const DomainError& e) {
        throw ConfigError(path, e.what());
    }
    return a;
}

InstanceSpec parse_gallery(Fields& f) {
    const std::string name = text(f.required("name"), f.child("name"));
    static const json empty = json::object();
    const json* params_json = f.optional("params");
    Fields p(params_json ? *params_json : empty, f.child("params"));
    InstanceSpec out;
    if (name == "example_2_5_b") {
        MergedPairSpec s;
        if (const auto* x = p.optional("n_points")) s.n_points = count(*x, p.child("n_points"));
        if (s.n_points < 2) throw ConfigError(p.child("n_points"), "must be at least 2");
        if (const auto* x = p.optional("u")) s.u = parse_rule(*x, p.child("u"));
        if (const auto* x = p.optional("w")) s.w = parse_rule(*x, p.child("w"));
        out = s;
    } else if (name == "example_2_5_c") {
        GrowingBlocksSpec s;
        if (const auto* x = p.optional("n_atoms")) s.n_atoms = count(*x, p.child("n_atoms"));
        if (s.n_atoms < 1) throw ConfigError(p.child("n_atoms"), "must be at least 1");
        out = s;
    } else if (name == "random") {
        RandomSpec s;
        if (const auto* x = p.optional("seed")) s.seed = count(*x, p.child("seed"));
        if (const auto* x = p.optional("n_points")) s.n_points = count(*x, p.child("n_points"));
        if (const auto* x = p.optional("n_blocks")) s.n_blocks = count(*x, p.child("n_blocks"));
        if (const auto* x = p.optional("weight_scale")) {
            s.weight_scale = number(*x, p.child("weight_scale"));
        }
        if (s.n_points == 0) throw ConfigError(p.child("n_points"), "must be positive");
        if (s.n_blocks == 0 || s.n_blocks > s.n_points) {
            throw ConfigError(p.child("n_blocks"), "must lie in 1..n_points");
        }
        if (!(s.weight_scale > 0.0)) throw ConfigError(p.child("weight_scale"), "must be > 0");
        out = s;
    } else {
        throw ConfigError(f.child("name"), "unknown gallery instance '" + name + "'");
    }
    p.finish();
    return out;
}

InstanceSpec parse_instance(const json& j, const std::string& path) {
    Fields f(j, path);
    const std::string kind = text(f.required("kind"), f.child("kind"));
    InstanceSpec out;
    if (kind == "gallery") {
        out = parse_gallery(f);
    } else if (kind == "points") {
        PointsSpec s;
        if (const auto* x = f.optional("ids")) s.ids = point_ids(*x, f.child("ids"));
        s.masses = numbers(f.required("masses"), f.child("masses"));
        const json& blocks = f.required("blocks");
        if (!blocks.is_array()) throw ConfigError(f.child("blocks"), "expected an array of blocks");
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            s.blocks.push_back(point_ids(blocks[i], f.child("blocks") + "[" + std::to_string(i) + "]"));
        }
        s.u = numbers(f.required("u"), f.child("u"));
        s.w = numbers(f.required("w"), f.child("w"));
        if (!s.ids.empty() && s.ids.size() != s.masses.size()) {
            throw ConfigError(f.child("ids"), "length differs from masses");
        }
        if (s.u.size() != s.masses.size()) throw ConfigError(f.child("u"), "length differs from masses");
        if (s.w.size() != s.masses.size()) throw ConfigError(f.child("w"), "length differs from masses");
        out = s;
    } else if (kind == "profile") {
        ProfileSpec s;
        const json& atoms = f.required("atoms");
        if (!atoms.is_array()) throw ConfigError(f.child("atoms"), "expected an array of atoms");
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            s.atoms.push_back(parse_atom(atoms[i], f.child("atoms") + "[" + std::to_string(i) + "]"));
        }
        if (const auto* x = f.optional("rule")) {
            Fields r(*x, f.child("rule"));
            ProfileRuleSpec rule;
            rule.mu = parse_rule(r.required("mu"), r.child("mu"));
            rule.eu = parse_rule(r.required("eu"), r.child("eu"));
            rule.ew = parse_rule(r.required("ew"), r.child("ew"));
            r.finish();
            s.rule = rule;
        }
        if (const auto* x = f.optional("tail")) s.tail = parse_tail(*x, f.child("tail"));
        if (const auto* x = f.optional("finite")) {
            if (!x->is_boolean()) throw ConfigError(f.child("finite"), "expected a boolean");
            s.finite = x->get<bool>();
            if (*s.finite && (s.rule || s.tail)) {
                throw ConfigError(f.child("finite"), "a finite profile cannot carry a rule or tail");
            }
        }
        out = s;
    } else {
        throw ConfigError(f.child("kind"), "unknown instance kind '" + kind + "'");
    }
    f.finish();
    return out;
}

SampledRegion parse_region(const json& j, const std::string& path) {
    Fields f(j, path);
    SampledRegion r;
    if (const auto* x = f.optional("level")) {
        const std::string s = text(*x, f.child("level"));
        if (s == "A") {
            r.level = RegionLevel::A_level;
        } else if (s == "Sigma") {
            r.level = RegionLevel::Sigma_level;
        } else {
            throw ConfigError(f.child("level"), "expected 'A' or 'Sigma'");
        }
    }
    const json& samples = f.required("samples");
    if (!samples.is_array()) throw ConfigError(f.child("samples"), "expected an array");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::string sp = f.child("samples") + "[" + std::to_string(i) + "]";
        Fields s(samples[i], sp);
        RegionSample smp;
        smp.mass = number(s.required("mass"), s.child("mass"));
        smp.ew = number(s.required("ew"), s.child("ew"));
        smp.eu = number(s.required("eu"), s.child("eu"));
        s.finish();
        if (!(smp.mass > 0.0)) throw ConfigError(s.child("mass"), "must be > 0");
        if (smp.ew < 0.0) throw ConfigError(s.child("ew"), "must be >= 0");
        if (smp.eu < 0.0) throw ConfigError(s.child("eu"), "must be >= 0");
        r.samples.push_back(smp);
    }
    f.finish();
    return r;
}

RunOptions parse_options(const json& j, const std::string& path) {
    Fields f(j, path);
    RunOptions o;
    if (const auto* x = f.optional("n_max")) {
        o.n_max = count(*x, f.child("n_max"));
        if (o.n_max == 0) throw ConfigError(f.child("n_max"), "must be positive");
    }
    if (const auto* x = f.optional("tol")) {
        o.tol = number(*x, f.child("tol"));
        if (o.tol < 0.0) throw ConfigError(f.child("tol"), "must be >= 0");
    }
    if (const auto* x = f.optional("seed")) o.seed = count(*x, f.child("seed"));
    if (const auto* x = f.optional("format")) {
        const std::string s = text(*x, f.child("format"));
        if (s == "text") {
            o.format = OutputFormat::text;
        } else if (s == "csv") {
            o.format = OutputFormat::csv;
        } else {
            throw ConfigError(f.child("format"), "expected 'text' or 'csv'");
        }
    }
    if (const auto* x = f.optional("restarts")) o.restarts = count(*x, f.child("restarts"));
    if (const auto* x = f.optional("printed_exponent")) {
        if (!x->is_boolean()) throw ConfigError(f.child("printed_exponent"), "expected a boolean");
        o.printed_exponent = x->get<bool>();
    }
    if (const auto* x = f.optional("f")) o.f = numbers(*x, f.child("f"));
    f.finish();
    return o;
}

Exponents parse_exponents(const json& j, const std::string& path) {
    Fields f(j, path);
    const double p = number(f.required("p"), f.child("p"));
    const double q = number(f.required("q"), f.child("q"));
    f.finish();
    if (!(p >= 1.0)) throw ConfigError(f.child("p"), "must be >= 1, got " + std::to_string(p));
    if (!(q >= 1.0)) throw ConfigError(f.child("q"), "must be >= 1, got " + std::to_string(q));
    return Exponents(p, q);
}

}  // namespace

RunConfig parse_config(const std::string& text_in) {
    json doc;
    try {
        doc = json::parse(text_in);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
    }
    Fields root(doc, "");
    RunConfig cfg;
    cfg.instance = parse_instance(root.required("instance"), "instance");
    cfg.exponents = parse_exponents(root.required("exponents"), "exponents");
    if (const auto* r = root.optional("region"); r && !r->is_null()) {
        cfg.region = parse_region(*r, "region");
    }
    if (const auto* o = root.optional("options")) cfg.options = parse_options(*o, "options");
    root.finish();
    return cfg;
}

namespace {

json emit_instance(const InstanceSpec& spec) {
    struct Visitor {
        json operator()(const MergedPairSpec& s) const {
            return json{{"kind", "gallery"},
                        {"name", "example_2_5_b"},
                        {"params", {{"n_points", s.n_points}, {"u", emit_rule(s.u)}, {"w", emit_rule(s.w)}}}};
        }
        json operator()(const GrowingBlocksSpec& s) const {
            return json{{"kind", "gallery"}, {"name", "example_2_5_c"}, {"params", {{"n_atoms", s.n_atoms}}}};
        }
        json operator()(const RandomSpec& s) const {
            json params{{"n_points", s.n_points},
                        {"n_blocks", s.n_blocks},
                        {"weight_scale", s.weight_scale}};
            if (s.seed) params["seed"] = *s.seed;
            return json{{"kind", "gallery"}, {"name", "random"}, {"params", params}};
        }
        json operator()(const PointsSpec& s) const {
            json j{{"kind", "points"}, {"masses", s.masses}, {"blocks", s.blocks}, {"u", s.u}, {"w", s.w}};
            if (!s.ids.empty()) j["ids"] = s.ids;
            return j;
        }
        json operator()(const ProfileSpec& s) const {
            json atoms = json::array();
            for (const auto& a : s.atoms) atoms.push_back({{"mu", a.mu}, {"eu", a.eu}, {"ew", a.ew}});
            json j{{"kind", "profile"}, {"atoms", atoms}};
            if (s.rule) {
                j["rule"] = {{"mu", emit_rule(s.rule->mu)},
                             {"eu", emit_rule(s.rule->eu)},
                             {"ew", emit_rule(s.rule->ew)}};
            }
            if (s.tail) j["tail"] = emit_tail(*s.tail);
            if (s.finite) j["finite"] = *s.finite;
            return j;
        }
    };
    return std::visit(Visitor{}, spec);
}

}  // namespace

std::string emit_config(const RunConfig& cfg) {
    json j;
    j["instance"] = emit_instance(cfg.instance);
    j["exponents"] = {{"p", cfg.exponents.p()}, {"q", cfg.exponents.q()}};
    if (cfg.region) {
        json samples = json::array();
        for (const auto& s : cfg.region->samples) {
            samples.push_back({{"mass", s.mass}, {"ew", s.ew}, {"eu", s.eu}});
        }
        j["region"] = {{"level", cfg.region->level == RegionLevel::A_level ? "A" : "Sigma"},
                       {"samples", samples}};
    }
    const RunOptions& o = cfg.options;
    j["options"] = {{"n_max", o.n_max},
                    {"tol", o.tol},
                    {"seed", o.seed},
                    {"format", o.format == OutputFormat::csv ? "csv" : "text"},
                    {"restarts", o.restarts},
                    {"printed_exponent", o.printed_exponent}};
    if (o.f) j["options"]["f"] = *o.f;
    return j.dump(2);
}

AtomProfile build_profile(const ProfileSpec& spec) {
    const bool finite = spec.finite.value_or(!spec.rule && !spec.tail);
    if (finite) return AtomProfile::finite(spec.atoms);
    AtomRule rule;
    if (spec.rule) {
        const ProfileRuleSpec r = *spec.rule;
        rule = [r](std::size_t n) { return AtomStat{r.mu(n), r.eu(n), r.ew(n)}; };
    }
    return AtomProfile::unbounded(spec.atoms, std::move(rule), spec.tail);
}

std::optional<Instance> build_instance(const RunConfig& cfg) {
    struct Visitor {
        std::uint64_t default_seed;
        std::optional<Instance> operator()(const MergedPairSpec& s) const {
            return merged_pair_instance(s.n_points, s.u, s.w);
        }
        std::optional<Instance> operator()(const GrowingBlocksSpec& s) const {
            return growing_blocks_instance(s.n_atoms);
        }
        std::optional<Instance> operator()(const RandomSpec& s) const {
            return random_instance(s.seed.value_or(default_seed), s.n_points, s.n_blocks,
                                   s.weight_scale);
        }
        std::optional<Instance> operator()(const PointsSpec& s) const {
            std::vector<PointId> ids = s.ids;
            if (ids.empty()) {
                for (std::size_t i = 0; i < s.masses.size(); ++i) ids.push_back(static_cast<PointId>(i + 1));
            }
            PointSpace space(ids, s.masses);
            Partition partition(space, s.blocks);
            return Instance{std::move(space), std::move(partition), MeasurableFunction(s.u),
                            MeasurableFunction(s.w), std::nullopt, "points", nullptr};
        }
        std::optional<Instance> operator()(const ProfileSpec&) const { return std::nullopt; }
    };
    std::optional<Instance> inst = std::visit(Visitor{cfg.options.seed}, cfg.instance);
    if (inst) inst->region = cfg.region;
    return inst;
}

}  // namespace lambert
