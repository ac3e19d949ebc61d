#ifndef EPI_CONFIG_HPP
#define EPI_CONFIG_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "epi/fit.hpp"
#include "epi/model.hpp"
#include "epi/policy.hpp"
#include "epi/priors.hpp"

namespace epi {

/// Everything one run needs, with every field defaulted. See README for the
/// config file schema (INI-style sections [model] [rates] [priors] [fit]
/// [forecast] [policy]).
struct RunConfig {
    ModelSpec model;
    DiseaseParams params;
    PriorSpec prior;
    FitConfig fit;
    PolicySearchConfig policy;
    int horizon_days = 365;    // simulation horizon for simulate/sweep
    int forecast_horizon = 30; // days past the observed window
    int forecast_draws = 500;
    std::string region;
    std::string period;

    void validate() const;
};

/// Parse an INI-style config. Schema violations (unknown sections/keys,
/// unparsable or out-of-range values) are collected and reported together
/// in one error. With allow_unknown, unknown keys become warnings instead.
/// Keys that do not apply to the chosen model family (e.g. sigma for SIR)
/// are warnings, never errors.
RunConfig parse_config(std::istream& in, const std::string& source_name,
                       bool allow_unknown = false,
                       std::vector<std::string>* warnings = nullptr);

RunConfig load_config(const std::string& path, bool allow_unknown = false,
                      std::vector<std::string>* warnings = nullptr);

/// Render the fully-resolved config (defaults filled in) in the same format
/// parse_config reads; parse(serialize(c)) reproduces c exactly.
std::string serialize_config(const RunConfig& config);

} // namespace epi

#endif
