#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dunkl/verify.hpp"

namespace dunkl {

/// Invalid configuration; maps to exit code 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GridSpec {
    enum class Kind { linear, geometric };
    Kind kind = Kind::linear;
    double lo = 0.0;
    double hi = 1.0;
    int count = 2;

    std::vector<double> values() const;
};

/// Run parameters. Precedence: command-line flags over the JSON file over
/// these defaults.
struct RunConfig {
    double lambda = 1.0;
    double p = 0.8;
    std::optional<int> kappa = 2;  // nullopt means auto
    double x0 = 2.0;
    double delta0 = 0.25;
    std::map<std::string, GridSpec> grids;
    std::map<std::string, double> tolerances;
    std::uint64_t seed = 0;
    std::string profile = "gaussian";  // input of `eval transform`: gaussian, bump or atom

    RunConfig();

    int resolved_kappa() const;
    const GridSpec& grid(const std::string& name) const;
    /// Throws ConfigError or DomainError on any violated module precondition.
    void validate() const;
    SuiteConfig suite_config() const;
};

/// Applies the keys of a JSON document onto cfg; unknown keys are errors.
void merge_config(RunConfig& cfg, const std::string& json_text);

/// `dunkl eval|atom|verify ...`; returns the process exit code
/// (0 ok, 1 verification failures, 2 configuration or range error, 3 numeric failure).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dunkl
