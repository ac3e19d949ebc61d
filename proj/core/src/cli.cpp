#include "epi/cli.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"

#include "epi/cases.hpp"
#include "epi/config.hpp"
#include "epi/errors.hpp"
#include "epi/fit.hpp"
#include "epi/forecast.hpp"
#include "epi/format.hpp"
#include "epi/outputs.hpp"
#include "epi/policy.hpp"
#include "epi/svg.hpp"

namespace epi {

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
    bool allow_unknown = false;
    bool zero_fill = false;

    std::string schedule_path;
    std::string cases_path;
    std::string posterior_path;
    std::string u_list;
    bool svg = false;
    bool no_noise = false;
};

/// Exclusive marker so two commands cannot interleave writes in one out_dir.
/// Taken just before the write phase; validation failures never touch disk.
class OutDirLock {
public:
    explicit OutDirLock(const std::string& dir)
        : path_((std::filesystem::path(dir) / ".lock").string()) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) {
            throw Error("cannot create output directory " + dir + ": " +
                        ec.message());
        }
        fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
        if (fd_ < 0) {
            if (errno == EEXIST) {
                throw ValidationError(
                    "output directory " + dir + " is in use (" + path_ +
                    " exists; remove it if no other run is active)");
            }
            throw Error("cannot create lock file " + path_ + ": " +
                        std::strerror(errno));
        }
    }

    ~OutDirLock() {
        if (fd_ >= 0) {
            ::close(fd_);
            ::unlink(path_.c_str());
        }
    }

    OutDirLock(const OutDirLock&) = delete;
    OutDirLock& operator=(const OutDirLock&) = delete;

private:
    std::string path_;
    int fd_ = -1;
};

std::string fixed6(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6f", v);
    return buffer;
}

std::string fixed3(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.3f", v);
    return buffer;
}

RunConfig load_run_config(const CliOptions& opts,
                          std::vector<std::string>& warnings) {
    RunConfig config = load_config(opts.config_path, opts.allow_unknown,
                                   &warnings);
    if (opts.seed.has_value()) {
        config.fit.seed = *opts.seed;
    }
    return config;
}

Manifest finish_outputs(RunArtifacts& artifacts, const RunConfig& config,
                        const CliOptions& opts) {
    artifacts.config_echo = serialize_config(config);
    artifacts.seed = config.fit.seed;
    OutDirLock lock(opts.out_dir);
    return write_outputs(artifacts, opts.out_dir);
}

CommandOutcome cmd_simulate(const CliOptions& opts,
                            std::vector<std::string>& warnings) {
    const RunConfig config = load_run_config(opts, warnings);

    InterventionSchedule schedule;
    if (!opts.schedule_path.empty()) {
        std::ifstream in(opts.schedule_path);
        if (!in) {
            throw ValidationError("cannot open schedule file: " +
                                  opts.schedule_path);
        }
        schedule = read_schedule_csv(in, opts.schedule_path,
                                     config.horizon_days);
    } else {
        schedule = InterventionSchedule::constant(0.0, config.horizon_days);
    }

    const Trajectory trajectory =
        simulate(config.model, config.params, schedule, config.horizon_days);

    const auto& final_state = trajectory.states.back().values;
    std::ostringstream summary;
    summary << "model " << config.model.label() << " | peak infected "
            << fixed6(trajectory.peak_infected()) << " on day "
            << trajectory.peak_day() << " | final R ";
    switch (config.model.family) {
    case ModelFamily::SIR:
        summary << fixed6(final_state[2]);
        break;
    case ModelFamily::SEIR:
        summary << fixed6(final_state[3]);
        break;
    case ModelFamily::SEI3RD:
        summary << fixed6(final_state[5]) << " | final D "
                << fixed6(final_state[6]);
        break;
    }

    RunArtifacts artifacts;
    artifacts.trajectory = trajectory;
    if (!opts.schedule_path.empty()) {
        artifacts.schedule = schedule;
    }
    if (opts.svg) {
        artifacts.extra_files.push_back(
            {"trajectory.svg", trajectory_svg(trajectory)});
    }
    finish_outputs(artifacts, config, opts);

    return CommandOutcome{0, summary.str(),
                          (std::filesystem::path(opts.out_dir) / "manifest.json")
                              .string()};
}

CommandOutcome cmd_sweep(const CliOptions& opts,
                         std::vector<std::string>& warnings) {
    const RunConfig config = load_run_config(opts, warnings);

    std::vector<double> u_values;
    std::size_t begin = 0;
    const std::string& list = opts.u_list;
    while (begin <= list.size() && !list.empty()) {
        const auto comma = list.find(',', begin);
        const std::string field =
            list.substr(begin, comma == std::string::npos ? std::string::npos
                                                          : comma - begin);
        try {
            std::size_t used = 0;
            const double u = std::stod(field, &used);
            if (used != field.size()) {
                throw std::invalid_argument(field);
            }
            u_values.push_back(u);
        } catch (const std::exception&) {
            throw ValidationError("sweep: bad intervention level '" + field +
                                  "'");
        }
        if (comma == std::string::npos) {
            break;
        }
        begin = comma + 1;
    }
    if (u_values.empty()) {
        throw ValidationError("sweep: --u needs at least one level");
    }

    const std::vector<Trajectory> runs =
        sweep(config.model, config.params, u_values, config.horizon_days);

    RunArtifacts artifacts;
    std::ostringstream summary;
    summary << "u        peak          day\n";
    bool monotone = true;
    double previous_peak = 0.0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const double peak = runs[i].peak_infected();
        char row[64];
        std::snprintf(row, sizeof(row), "%-8s %-13s %d\n",
                      format_double(u_values[i]).c_str(), fixed6(peak).c_str(),
                      runs[i].peak_day());
        summary << row;
        if (i > 0 && peak > previous_peak + 1e-12) {
            monotone = false;
        }
        previous_peak = peak;
        artifacts.sweep_trajectories.push_back({u_values[i], runs[i]});
    }
    summary << "peak non-increasing in u: " << (monotone ? "yes" : "no");

    artifacts.sweep_table = true;
    finish_outputs(artifacts, config, opts);

    return CommandOutcome{0, summary.str(),
                          (std::filesystem::path(opts.out_dir) / "manifest.json")
                              .string()};
}

ObservedSeries load_cases_for(const CliOptions& opts, const RunConfig& config,
                              std::vector<std::string>& warnings) {
    return load_cases(opts.cases_path, config.model.population,
                      opts.zero_fill ? MissingDatePolicy::ZeroFill
                                     : MissingDatePolicy::Error,
                      &warnings);
}

CommandOutcome cmd_fit(const CliOptions& opts,
                       std::vector<std::string>& warnings) {
    const RunConfig config = load_run_config(opts, warnings);
    const ObservedSeries data = load_cases_for(opts, config, warnings);

    const PosteriorSamples posterior =
        fit_mcmc(config.model, config.params, data, config.prior, config.fit);
    const PosteriorSummary summary = summarize(posterior);

    std::ostringstream row;
    row << config.model.label() << " | R0 " << fixed3(summary.r0.mean)
        << " +/- " << fixed3(summary.r0.sd) << " | rho "
        << fixed3(summary.rho.mean) << " +/- " << fixed3(summary.rho.sd)
        << " | draws " << summary.n_draws;

    SummaryMeta meta;
    meta.model = config.model.label();
    meta.region = config.region;
    meta.period = config.period;
    meta.chains = posterior.chains;
    meta.acceptance_rate = posterior.acceptance_rate;
    meta.seed = config.fit.seed;
    meta.warnings = posterior.warnings;

    for (const auto& w : posterior.warnings) {
        warnings.push_back(w);
    }

    RunArtifacts artifacts;
    artifacts.posterior = posterior;
    artifacts.summary = {summary, meta};
    finish_outputs(artifacts, config, opts);

    return CommandOutcome{0, row.str(),
                          (std::filesystem::path(opts.out_dir) / "manifest.json")
                              .string()};
}

CommandOutcome cmd_forecast(const CliOptions& opts,
                            std::vector<std::string>& warnings) {
    const RunConfig config = load_run_config(opts, warnings);
    const ObservedSeries data = load_cases_for(opts, config, warnings);

    PosteriorSamples posterior;
    bool fitted_here = false;
    if (!opts.posterior_path.empty()) {
        std::ifstream in(opts.posterior_path);
        if (!in) {
            throw ValidationError("cannot open posterior file: " +
                                  opts.posterior_path);
        }
        posterior.draws = read_posterior_csv(in, opts.posterior_path);
        posterior.chains = 1;
        posterior.seed = config.fit.seed;
        for (const auto& draw : posterior.draws) {
            if (!(draw[0] > 0.0) || !(draw[1] > 0.0) || !(draw[1] < 1.0)) {
                throw ValidationError(opts.posterior_path +
                                      ": draws must satisfy r0 > 0 and rho in "
                                      "(0, 1)");
            }
        }
    } else {
        posterior = fit_mcmc(config.model, config.params, data, config.prior,
                             config.fit);
        fitted_here = true;
        for (const auto& w : posterior.warnings) {
            warnings.push_back(w);
        }
    }

    ForecastOptions options;
    options.n_draws = config.forecast_draws;
    options.seed = config.fit.seed;
    options.observation_noise = !opts.no_noise;

    const ForecastBands bands =
        posterior_predictive(config.model, config.params, posterior, data,
                             config.forecast_horizon, options);

    std::ostringstream summary;
    summary << "forecast " << config.forecast_horizon << " day(s) beyond "
            << data.counts.size() << " observed day(s); 90% band from "
            << bands.draws_used << " draw(s)";

    RunArtifacts artifacts;
    artifacts.forecast = bands;
    artifacts.observed = data;
    if (fitted_here) {
        artifacts.posterior = posterior;
    }
    if (opts.svg) {
        artifacts.extra_files.push_back(
            {"forecast.svg", forecast_svg(bands, &data)});
    }
    finish_outputs(artifacts, config, opts);

    return CommandOutcome{0, summary.str(),
                          (std::filesystem::path(opts.out_dir) / "manifest.json")
                              .string()};
}

CommandOutcome cmd_policy(const CliOptions& opts,
                          std::vector<std::string>& warnings) {
    const RunConfig config = load_run_config(opts, warnings);

    const PolicySearchResult result =
        greedy_search(config.model, config.params, config.policy);
    const Trajectory replay = simulate(config.model, config.params,
                                       result.schedule, config.policy.horizon);

    std::ostringstream summary;
    summary << "feasible: " << (result.feasible ? "yes" : "no") << "\n";
    for (std::size_t i = 0; i < result.schedule.breakpoints.size(); ++i) {
        summary << "day " << result.schedule.breakpoints[i]
                << ": u = " << format_double(result.schedule.levels[i]) << "\n";
    }
    summary << "max infected fraction " << fixed6(replay.peak_infected())
            << " (threshold " << fixed6(config.policy.threshold) << ")";

    RunArtifacts artifacts;
    artifacts.schedule = result.schedule;
    artifacts.trajectory = replay;
    finish_outputs(artifacts, config, opts);

    return CommandOutcome{0, summary.str(),
                          (std::filesystem::path(opts.out_dir) / "manifest.json")
                              .string()};
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
    CliOptions opts;

    CLI::App app{
        "Compartmental epidemic simulation, fitting, forecasting, and "
        "policy search"};
    app.require_subcommand(1);
    // Global flags may appear before or after the subcommand name.
    app.fallthrough();

    app.add_option("--config", opts.config_path,
                   "Run configuration file (INI sections [model] [rates] "
                   "[priors] [fit] [forecast] [policy])")
        ->required();
    app.add_option("--out", opts.out_dir,
                   "Output directory (default: $EPIKIT_OUT or ./out)");
    auto* seed_opt = app.add_option(
        "--seed", "Override the config seed for stochastic commands");
    app.add_flag("--quiet", opts.quiet, "Suppress the summary on stdout");
    app.add_flag("--allow-unknown", opts.allow_unknown,
                 "Accept unknown config keys with a warning instead of "
                 "failing");

    auto* sim = app.add_subcommand(
        "simulate", "Integrate one trajectory under an intervention schedule");
    sim->add_option("--schedule", opts.schedule_path,
                    "Schedule CSV (day,u); default is no intervention");
    sim->add_flag("--svg", opts.svg, "Also write trajectory.svg");

    auto* swp = app.add_subcommand(
        "sweep", "Run constant-u trajectories across intervention levels");
    swp->add_option("--u", opts.u_list,
                    "Comma-separated intervention levels, e.g. 0,0.5,1")
        ->required();

    auto* fit = app.add_subcommand(
        "fit", "Posterior inference for (R0, rho) from daily case counts");
    fit->add_option("--cases", opts.cases_path, "Cases CSV (date,new_cases)")
        ->required();
    fit->add_flag("--zero-fill", opts.zero_fill,
                  "Fill missing dates with zero counts instead of failing");

    auto* fc = app.add_subcommand(
        "forecast", "Posterior-predictive case-count bands past the data");
    fc->add_option("--cases", opts.cases_path, "Cases CSV (date,new_cases)")
        ->required();
    fc->add_option("--posterior", opts.posterior_path,
                   "Reuse a posterior CSV instead of fitting");
    fc->add_flag("--zero-fill", opts.zero_fill,
                 "Fill missing dates with zero counts instead of failing");
    fc->add_flag("--svg", opts.svg, "Also write forecast.svg");
    fc->add_flag("--no-noise", opts.no_noise,
                 "Disable observation noise on future days (parameter "
                 "uncertainty only)");

    auto* pol = app.add_subcommand(
        "policy", "Greedy search for the weakest schedule keeping infections "
                  "under the threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    if (seed_opt->count() > 0) {
        opts.seed = seed_opt->as<std::uint64_t>();
    }
    if (opts.out_dir.empty()) {
        const char* env = std::getenv("EPIKIT_OUT");
        opts.out_dir = (env != nullptr && *env != '\0') ? env : "out";
    }

    std::vector<std::string> warnings;
    CommandOutcome outcome;
    try {
        if (sim->parsed()) {
            outcome = cmd_simulate(opts, warnings);
        } else if (swp->parsed()) {
            outcome = cmd_sweep(opts, warnings);
        } else if (fit->parsed()) {
            outcome = cmd_fit(opts, warnings);
        } else if (fc->parsed()) {
            outcome = cmd_forecast(opts, warnings);
        } else if (pol->parsed()) {
            outcome = cmd_policy(opts, warnings);
        }
    } catch (const ValidationError& e) {
        for (const auto& w : warnings) {
            err << "warning: " << w << "\n";
        }
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        for (const auto& w : warnings) {
            err << "warning: " << w << "\n";
        }
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    for (const auto& w : warnings) {
        err << "warning: " << w << "\n";
    }
    if (!opts.quiet) {
        out << outcome.summary << "\n";
        out << "wrote " << outcome.manifest_path << "\n";
    }
    return outcome.exit_code;
}

} // namespace epi
