#ifndef EPI_OUTPUTS_HPP
#define EPI_OUTPUTS_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "epi/fit.hpp"
#include "epi/forecast.hpp"
#include "epi/schedule.hpp"
#include "epi/series.hpp"
#include "epi/simulate.hpp"

namespace epi {

/// FNV-1a 64-bit content hash; the manifest names this as "fnv1a-64".
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

// ---- serializers (pure; writers below put these on disk) ----

/// Header `t,<compartments>,incidence`; the final row's incidence field is
/// empty (incidence counts day t -> t+1 transitions).
std::string trajectory_csv(const Trajectory& trajectory);

/// Header `r0,rho`, one row per retained draw.
std::string posterior_csv(const PosteriorSamples& samples);

/// Labels and diagnostics attached to a posterior summary.
struct SummaryMeta {
    std::string model;
    std::string region;
    std::string period;
    int chains = 0;
    std::vector<double> acceptance_rate;
    std::uint64_t seed = 0;
    std::vector<std::string> warnings;
};

std::string summary_json(const PosteriorSummary& summary, const SummaryMeta& meta);

/// Header `day,lower,median,upper,observed`; observed is filled for history
/// days when a series is supplied and left empty otherwise.
std::string forecast_csv(const ForecastBands& bands,
                         const ObservedSeries* observed);

/// Header `day,u`, one row per segment start.
std::string schedule_csv(const InterventionSchedule& schedule);

/// Long-format `u,t,infected` across a sweep of constant-u runs.
std::string sweep_csv(const std::vector<std::pair<double, Trajectory>>& runs);

// ---- matching readers ----

Trajectory read_trajectory_csv(std::istream& in, const std::string& source_name);

std::vector<std::array<double, 2>> read_posterior_csv(
    std::istream& in, const std::string& source_name);

/// The CSV carries no horizon, so the caller supplies it.
InterventionSchedule read_schedule_csv(std::istream& in,
                                       const std::string& source_name,
                                       int horizon);

/// history_days is recovered as the number of rows with an observed value;
/// observed rows are appended to *observed_out when provided.
ForecastBands read_forecast_csv(
    std::istream& in, const std::string& source_name,
    std::vector<std::pair<int, std::int64_t>>* observed_out = nullptr);

struct SweepRow {
    double u = 0.0;
    int t = 0;
    double infected = 0.0;
};

std::vector<SweepRow> read_sweep_csv(std::istream& in,
                                     const std::string& source_name);

// ---- run output orchestration ----

/// Everything a command wants on disk; absent members are simply not written.
struct RunArtifacts {
    std::optional<std::string> config_echo;                       // config.ini
    std::optional<Trajectory> trajectory;                         // trajectory.csv
    std::vector<std::pair<double, Trajectory>> sweep_trajectories; // trajectory_u<u>.csv
    bool sweep_table = false;                                     // sweep.csv from sweep_trajectories
    std::optional<PosteriorSamples> posterior;                    // posterior.csv
    std::optional<std::pair<PosteriorSummary, SummaryMeta>> summary; // summary.json
    std::optional<ForecastBands> forecast;                        // forecast.csv
    std::optional<ObservedSeries> observed;                       // observed column of forecast.csv
    std::optional<InterventionSchedule> schedule;                 // schedule.csv
    std::vector<std::pair<std::string, std::string>> extra_files; // (name, content), e.g. SVG
    std::optional<std::uint64_t> seed;                            // echoed into the manifest
};

struct Manifest {
    std::string algorithm = "fnv1a-64";
    std::vector<std::pair<std::string, std::string>> files; // name -> hex hash
    std::optional<std::uint64_t> seed;
};

std::string manifest_json(const Manifest& manifest);

/// Write every present artifact into out_dir (created if missing) plus
/// manifest.json; returns the manifest. A failed write reports which files
/// had already been written.
Manifest write_outputs(const RunArtifacts& artifacts, const std::string& out_dir);

} // namespace epi

#endif
