#pragma once

// Run configuration: a JSON document with top-level keys "instance",
// "exponents", "region" and "options".

#include "lambert/gallery.hpp"
#include "lambert/measure.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lambert {

/// Parse failure; path() names the offending field, e.g. "exponents.p".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
    [[nodiscard]] const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

struct MergedPairSpec {
    std::size_t n_points = 1000;
    PowerRule u;
    PowerRule w;
    friend bool operator==(const MergedPairSpec&, const MergedPairSpec&) = default;
};

struct GrowingBlocksSpec {
    std::size_t n_atoms = 30;
    friend bool operator==(const GrowingBlocksSpec&, const GrowingBlocksSpec&) = default;
};

struct RandomSpec {
    std::optional<std::uint64_t> seed;  ///< falls back to options.seed
    std::size_t n_points = 20;
    std::size_t n_blocks = 5;
    double weight_scale = 1.0;
    friend bool operator==(const RandomSpec&, const RandomSpec&) = default;
};

struct PointsSpec {
    std::vector<PointId> ids;  ///< empty means 1..N
    std::vector<double> masses;
    std::vector<std::vector<PointId>> blocks;
    std::vector<double> u;
    std::vector<double> w;
    friend bool operator==(const PointsSpec&, const PointsSpec&) = default;
};

struct ProfileRuleSpec {
    PowerRule mu;
    PowerRule eu;
    PowerRule ew;
    friend bool operator==(const ProfileRuleSpec&, const ProfileRuleSpec&) = default;
};

struct ProfileSpec {
    std::vector<AtomStat> atoms;
    std::optional<ProfileRuleSpec> rule;
    std::optional<TailCertificate> tail;
    /// Default: finite iff neither rule nor tail is given.
    std::optional<bool> finite;
    friend bool operator==(const ProfileSpec&, const ProfileSpec&) = default;
};

using InstanceSpec =
    std::variant<MergedPairSpec, GrowingBlocksSpec, RandomSpec, PointsSpec, ProfileSpec>;

enum class OutputFormat { text, csv };

struct RunOptions {
    std::size_t n_max = 100000;
    double tol = 1e-12;
    std::uint64_t seed = 0;
    OutputFormat format = OutputFormat::text;
    std::size_t restarts = 16;
    bool printed_exponent = false;
    std::optional<std::vector<double>> f;  ///< input for `expect` / `apply`
    friend bool operator==(const RunOptions&, const RunOptions&) = default;
};

struct RunConfig {
    InstanceSpec instance;
    Exponents exponents{2.0, 2.0};
    std::optional<SampledRegion> region;
    RunOptions options;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

[[nodiscard]] RunConfig parse_config(const std::string& text);
[[nodiscard]] std::string emit_config(const RunConfig& config);

[[nodiscard]] AtomProfile build_profile(const ProfileSpec& spec);
/// Point-level instance for every source except "profile".
[[nodiscard]] std::optional<Instance> build_instance(const RunConfig& config);

}  // namespace lambert
