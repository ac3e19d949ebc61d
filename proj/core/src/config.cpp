#include "epi/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "epi/errors.hpp"
#include "epi/format.hpp"

namespace epi {

void RunConfig::validate() const {
    model.validate();
    params.validate(model.family);
    prior.validate();
    fit.validate();
    policy.validate();
    if (horizon_days < 1) {
        throw ValidationError("config: horizon must be >= 1 day");
    }
    if (forecast_horizon < 0) {
        throw ValidationError("config: forecast horizon must be >= 0");
    }
    if (forecast_draws < 1) {
        throw ValidationError("config: forecast draws must be >= 1");
    }
}

namespace {

struct Entry {
    std::string section;
    std::string key;
    std::string value;
    std::size_t line = 0;
};

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = text.find_last_not_of(" \t");
    return text.substr(begin, end - begin + 1);
}

constexpr std::array<const char*, 6> kSections = {
    "model", "rates", "priors", "fit", "forecast", "policy"};

bool known_section(const std::string& name) {
    return std::find_if(kSections.begin(), kSections.end(),
                        [&](const char* s) { return name == s; }) !=
           kSections.end();
}

// Accumulates parsed entries plus every violation seen, so the caller can
// report all schema problems at once instead of failing on the first.
struct ParseState {
    const std::string& source;
    bool allow_unknown;
    std::vector<std::string>* warnings;
    std::vector<std::string> violations;

    void violation(std::size_t line, const std::string& what) {
        violations.push_back(source + ":" + std::to_string(line) + ": " + what);
    }

    void warn(const std::string& what) {
        if (warnings != nullptr) {
            warnings->push_back(source + ": " + what);
        }
    }
};

bool parse_double_value(const Entry& e, ParseState& state, double& out) {
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    double parsed = 0.0;
    const auto result = std::from_chars(first, last, parsed);
    if (result.ec != std::errc() || result.ptr != last) {
        state.violation(e.line, "[" + e.section + "] " + e.key +
                                    ": expected a number, got '" + e.value + "'");
        return false;
    }
    out = parsed;
    return true;
}

bool parse_int_value(const Entry& e, ParseState& state, int& out) {
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    int parsed = 0;
    const auto result = std::from_chars(first, last, parsed);
    if (result.ec != std::errc() || result.ptr != last) {
        state.violation(e.line, "[" + e.section + "] " + e.key +
                                    ": expected an integer, got '" + e.value + "'");
        return false;
    }
    out = parsed;
    return true;
}

bool parse_u64_value(const Entry& e, ParseState& state, std::uint64_t& out) {
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    std::uint64_t parsed = 0;
    const auto result = std::from_chars(first, last, parsed);
    if (result.ec != std::errc() || result.ptr != last) {
        state.violation(e.line, "[" + e.section + "] " + e.key +
                                    ": expected a non-negative integer, got '" +
                                    e.value + "'");
        return false;
    }
    out = parsed;
    return true;
}

bool parse_bool_value(const Entry& e, ParseState& state, bool& out) {
    if (e.value == "true") {
        out = true;
        return true;
    }
    if (e.value == "false") {
        out = false;
        return true;
    }
    state.violation(e.line, "[" + e.section + "] " + e.key +
                                ": expected true or false, got '" + e.value + "'");
    return false;
}

bool parse_grid_value(const Entry& e, ParseState& state,
                      std::vector<double>& out) {
    std::vector<double> grid;
    std::size_t begin = 0;
    while (begin <= e.value.size()) {
        const auto comma = e.value.find(',', begin);
        const std::string field = trim(
            e.value.substr(begin, comma == std::string::npos ? std::string::npos
                                                             : comma - begin));
        const char* first = field.data();
        const char* last = first + field.size();
        double parsed = 0.0;
        const auto result = std::from_chars(first, last, parsed);
        if (field.empty() || result.ec != std::errc() || result.ptr != last) {
            state.violation(e.line, "[" + e.section + "] " + e.key +
                                        ": bad grid entry '" + field + "'");
            return false;
        }
        grid.push_back(parsed);
        if (comma == std::string::npos) {
            break;
        }
        begin = comma + 1;
    }
    out = std::move(grid);
    return true;
}

void unknown_key(const Entry& e, ParseState& state) {
    const std::string what =
        "unknown key '" + e.key + "' in section [" + e.section + "]";
    if (state.allow_unknown) {
        state.warn(what + " (ignored)");
    } else {
        state.violation(e.line, what);
    }
}

void family_ignored(const Entry& e, ParseState& state, ModelFamily family) {
    state.warn("key '" + e.key + "' does not apply to " + to_string(family) +
               " and was ignored");
}

void apply_model_entry(const Entry& e, ParseState& state, RunConfig& config) {
    if (e.key == "family") {
        try {
            config.model.family = model_family_from_string(e.value);
        } catch (const ValidationError& err) {
            state.violation(e.line, err.what());
        }
    } else if (e.key == "refined") {
        parse_bool_value(e, state, config.model.refined);
    } else if (e.key == "population") {
        parse_double_value(e, state, config.model.population);
    } else if (e.key == "horizon") {
        parse_int_value(e, state, config.horizon_days);
    } else if (e.key == "region") {
        config.region = e.value;
    } else if (e.key == "period") {
        config.period = e.value;
    } else {
        unknown_key(e, state);
    }
}

void apply_rates_entry(const Entry& e, ParseState& state, RunConfig& config) {
    const ModelFamily family = config.model.family;
    DiseaseParams& p = config.params;
    if (e.key == "r0") {
        parse_double_value(e, state, p.r0);
    } else if (e.key == "gamma") {
        parse_double_value(e, state, p.gamma);
    } else if (e.key == "rho") {
        parse_double_value(e, state, p.rho);
    } else if (e.key == "iota") {
        parse_double_value(e, state, p.iota);
    } else if (e.key == "sigma") {
        if (family == ModelFamily::SIR) {
            family_ignored(e, state, family);
        } else {
            parse_double_value(e, state, p.sigma);
        }
    } else if (e.key == "p1" || e.key == "p2" || e.key == "g1" ||
               e.key == "g2" || e.key == "g3" || e.key == "delta" ||
               e.key == "w1" || e.key == "w2" || e.key == "w3") {
        if (family != ModelFamily::SEI3RD) {
            family_ignored(e, state, family);
            return;
        }
        StageParams& s = p.stage;
        double* target = nullptr;
        if (e.key == "p1") target = &s.p1;
        else if (e.key == "p2") target = &s.p2;
        else if (e.key == "g1") target = &s.g1;
        else if (e.key == "g2") target = &s.g2;
        else if (e.key == "g3") target = &s.g3;
        else if (e.key == "delta") target = &s.delta;
        else if (e.key == "w1") target = &s.w1;
        else if (e.key == "w2") target = &s.w2;
        else target = &s.w3;
        parse_double_value(e, state, *target);
    } else {
        unknown_key(e, state);
    }
}

void apply_priors_entry(const Entry& e, ParseState& state, RunConfig& config) {
    if (e.key == "r0_location") {
        parse_double_value(e, state, config.prior.r0_prior.location);
    } else if (e.key == "r0_scale") {
        parse_double_value(e, state, config.prior.r0_prior.scale);
    } else if (e.key == "rho_alpha") {
        parse_double_value(e, state, config.prior.rho_prior.alpha);
    } else if (e.key == "rho_beta") {
        parse_double_value(e, state, config.prior.rho_prior.beta);
    } else {
        unknown_key(e, state);
    }
}

void apply_fit_entry(const Entry& e, ParseState& state, RunConfig& config) {
    if (e.key == "chains") {
        parse_int_value(e, state, config.fit.chains);
    } else if (e.key == "iterations") {
        parse_int_value(e, state, config.fit.iterations);
    } else if (e.key == "burn_in") {
        parse_int_value(e, state, config.fit.burn_in);
    } else if (e.key == "proposal_scale") {
        parse_double_value(e, state, config.fit.proposal_scale);
    } else if (e.key == "seed") {
        parse_u64_value(e, state, config.fit.seed);
    } else if (e.key == "map_restarts") {
        parse_int_value(e, state, config.fit.map_restarts);
    } else {
        unknown_key(e, state);
    }
}

void apply_forecast_entry(const Entry& e, ParseState& state, RunConfig& config) {
    if (e.key == "horizon") {
        parse_int_value(e, state, config.forecast_horizon);
    } else if (e.key == "draws") {
        parse_int_value(e, state, config.forecast_draws);
    } else {
        unknown_key(e, state);
    }
}

void apply_policy_entry(const Entry& e, ParseState& state, RunConfig& config,
                        bool& policy_horizon_set) {
    if (e.key == "threshold") {
        parse_double_value(e, state, config.policy.threshold);
    } else if (e.key == "decision_interval") {
        parse_int_value(e, state, config.policy.decision_interval);
    } else if (e.key == "lookahead") {
        int days = 0;
        if (parse_int_value(e, state, days)) {
            config.policy.lookahead = days;
        }
    } else if (e.key == "horizon") {
        if (parse_int_value(e, state, config.policy.horizon)) {
            policy_horizon_set = true;
        }
    } else if (e.key == "u_grid") {
        parse_grid_value(e, state, config.policy.u_grid);
    } else {
        unknown_key(e, state);
    }
}

} // namespace

RunConfig parse_config(std::istream& in, const std::string& source_name,
                       bool allow_unknown,
                       std::vector<std::string>* warnings) {
    ParseState state{source_name, allow_unknown, warnings, {}};

    std::vector<Entry> entries;
    std::string section;
    bool in_ignored_section = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const std::string text = trim(line);
        if (text.empty() || text.front() == '#' || text.front() == ';') {
            continue;
        }
        if (text.front() == '[') {
            if (text.back() != ']' || text.size() < 3) {
                state.violation(line_no, "malformed section header '" + text + "'");
                continue;
            }
            section = trim(text.substr(1, text.size() - 2));
            in_ignored_section = false;
            if (!known_section(section)) {
                const std::string what = "unknown section [" + section + "]";
                if (allow_unknown) {
                    state.warn(what + " (ignored)");
                } else {
                    state.violation(line_no, what);
                }
                section = "";
                in_ignored_section = true;
            }
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            state.violation(line_no, "expected 'key = value', got '" + text + "'");
            continue;
        }
        if (section.empty()) {
            // Entries inside an unknown section were covered by the report on
            // its header; entries before any header are their own mistake.
            if (!in_ignored_section) {
                state.violation(line_no, "entry before any section header: '" +
                                             text + "'");
            }
            continue;
        }
        entries.push_back(Entry{section, trim(text.substr(0, eq)),
                                trim(text.substr(eq + 1)), line_no});
    }

    RunConfig config;
    bool policy_horizon_set = false;

    // Family-dependent keys need the family known first, regardless of the
    // order sections appear in the file.
    for (const auto& e : entries) {
        if (e.section == "model") {
            apply_model_entry(e, state, config);
        }
    }
    for (const auto& e : entries) {
        if (e.section == "model") {
            continue;
        } else if (e.section == "rates") {
            apply_rates_entry(e, state, config);
        } else if (e.section == "priors") {
            apply_priors_entry(e, state, config);
        } else if (e.section == "fit") {
            apply_fit_entry(e, state, config);
        } else if (e.section == "forecast") {
            apply_forecast_entry(e, state, config);
        } else if (e.section == "policy") {
            apply_policy_entry(e, state, config, policy_horizon_set);
        }
    }

    // An explicit simulation horizon carries over to policy search unless the
    // policy section sets its own.
    if (!policy_horizon_set) {
        config.policy.horizon = config.horizon_days;
    }

    // Semantic checks, collected so one report covers everything wrong.
    if (state.violations.empty()) {
        const auto check = [&](const auto& fn) {
            try {
                fn();
            } catch (const ValidationError& err) {
                state.violations.push_back(source_name + ": " + err.what());
            }
        };
        check([&] { config.model.validate(); });
        check([&] { config.params.validate(config.model.family); });
        check([&] { config.prior.validate(); });
        check([&] { config.fit.validate(); });
        check([&] { config.policy.validate(); });
        check([&] {
            if (config.horizon_days < 1) {
                throw ValidationError("config: horizon must be >= 1 day");
            }
            if (config.forecast_horizon < 0) {
                throw ValidationError("config: forecast horizon must be >= 0");
            }
            if (config.forecast_draws < 1) {
                throw ValidationError("config: forecast draws must be >= 1");
            }
        });
    }

    if (!state.violations.empty()) {
        std::ostringstream message;
        message << source_name << ": " << state.violations.size()
                << " config error(s):";
        for (const auto& v : state.violations) {
            message << "\n  " << v;
        }
        throw ValidationError(message.str());
    }

    return config;
}

RunConfig load_config(const std::string& path, bool allow_unknown,
                      std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open config file: " + path);
    }
    return parse_config(in, path, allow_unknown, warnings);
}

std::string serialize_config(const RunConfig& config) {
    std::ostringstream out;
    out << "[model]\n";
    out << "family = " << to_string(config.model.family) << "\n";
    out << "refined = " << (config.model.refined ? "true" : "false") << "\n";
    out << "population = " << format_double(config.model.population) << "\n";
    out << "horizon = " << config.horizon_days << "\n";
    out << "region = " << config.region << "\n";
    out << "period = " << config.period << "\n";

    out << "\n[rates]\n";
    out << "r0 = " << format_double(config.params.r0) << "\n";
    out << "gamma = " << format_double(config.params.gamma) << "\n";
    out << "rho = " << format_double(config.params.rho) << "\n";
    out << "iota = " << format_double(config.params.iota) << "\n";
    if (config.model.family != ModelFamily::SIR) {
        out << "sigma = " << format_double(config.params.sigma) << "\n";
    }
    if (config.model.family == ModelFamily::SEI3RD) {
        const StageParams& s = config.params.stage;
        out << "p1 = " << format_double(s.p1) << "\n";
        out << "p2 = " << format_double(s.p2) << "\n";
        out << "g1 = " << format_double(s.g1) << "\n";
        out << "g2 = " << format_double(s.g2) << "\n";
        out << "g3 = " << format_double(s.g3) << "\n";
        out << "delta = " << format_double(s.delta) << "\n";
        out << "w1 = " << format_double(s.w1) << "\n";
        out << "w2 = " << format_double(s.w2) << "\n";
        out << "w3 = " << format_double(s.w3) << "\n";
    }

    out << "\n[priors]\n";
    out << "r0_location = " << format_double(config.prior.r0_prior.location) << "\n";
    out << "r0_scale = " << format_double(config.prior.r0_prior.scale) << "\n";
    out << "rho_alpha = " << format_double(config.prior.rho_prior.alpha) << "\n";
    out << "rho_beta = " << format_double(config.prior.rho_prior.beta) << "\n";

    out << "\n[fit]\n";
    out << "chains = " << config.fit.chains << "\n";
    out << "iterations = " << config.fit.iterations << "\n";
    out << "burn_in = " << config.fit.burn_in << "\n";
    out << "proposal_scale = " << format_double(config.fit.proposal_scale) << "\n";
    out << "seed = " << config.fit.seed << "\n";
    out << "map_restarts = " << config.fit.map_restarts << "\n";

    out << "\n[forecast]\n";
    out << "horizon = " << config.forecast_horizon << "\n";
    out << "draws = " << config.forecast_draws << "\n";

    out << "\n[policy]\n";
    out << "threshold = " << format_double(config.policy.threshold) << "\n";
    out << "decision_interval = " << config.policy.decision_interval << "\n";
    if (config.policy.lookahead.has_value()) {
        out << "lookahead = " << *config.policy.lookahead << "\n";
    }
    out << "horizon = " << config.policy.horizon << "\n";
    out << "u_grid = ";
    for (std::size_t i = 0; i < config.policy.u_grid.size(); ++i) {
        if (i > 0) {
            out << ",";
        }
        out << format_double(config.policy.u_grid[i]);
    }
    out << "\n";

    return out.str();
}

} // namespace epi
