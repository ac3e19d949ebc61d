#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "epi/errors.hpp"
#include "epi/outputs.hpp"
#include "epi/policy.hpp"
#include "json.hpp"
#include "support.hpp"

using epi::InterventionSchedule;
using epi::ModelFamily;
using epi::ModelSpec;

namespace {

epi::Trajectory small_trajectory(ModelFamily family) {
    ModelSpec spec;
    spec.family = family;
    spec.refined = true;
    epi::DiseaseParams params;
    params.r0 = 2.5;
    return epi::simulate(spec, params, InterventionSchedule::constant(0.0, 20),
                         20);
}

} // namespace

TEST_SUITE("outputs") {

TEST_CASE("content hashing matches the published test vectors") {
    CHECK(epi::fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(epi::fnv1a64_hex("a") == "af63dc4c8601ec8c");
    CHECK(epi::fnv1a64_hex("foobar") == "85944171f73967e8");
    CHECK(epi::fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("trajectory CSV headers name the compartments") {
    const auto sir = epi::trajectory_csv(small_trajectory(ModelFamily::SIR));
    CHECK(sir.rfind("t,S,I,R,incidence\n", 0) == 0);

    const auto seir = epi::trajectory_csv(small_trajectory(ModelFamily::SEIR));
    CHECK(seir.rfind("t,S,E,I,R,incidence\n", 0) == 0);

    const auto staged =
        epi::trajectory_csv(small_trajectory(ModelFamily::SEI3RD));
    CHECK(staged.rfind("t,S,E,I1,I2,I3,R,D,incidence\n", 0) == 0);
}

TEST_CASE("the last trajectory row has an empty incidence field") {
    const auto text = epi::trajectory_csv(small_trajectory(ModelFamily::SIR));
    // 1 header + 21 day rows, trailing newline.
    std::istringstream lines(text);
    std::string line;
    std::vector<std::string> all;
    while (std::getline(lines, line)) {
        all.push_back(line);
    }
    REQUIRE(all.size() == 22);
    CHECK(all.back().back() == ','); // empty final field
    CHECK(all[1].back() != ',');
}

TEST_CASE("trajectory CSV round-trips bit-exactly") {
    for (const auto family :
         {ModelFamily::SIR, ModelFamily::SEIR, ModelFamily::SEI3RD}) {
        const auto original = small_trajectory(family);
        const auto text = epi::trajectory_csv(original);
        std::istringstream in(text);
        const auto parsed = epi::read_trajectory_csv(in, "traj.csv");
        CHECK(parsed.family == original.family);
        REQUIRE(parsed.states.size() == original.states.size());
        CHECK(parsed.times == original.times);
        for (std::size_t i = 0; i < parsed.states.size(); ++i) {
            CHECK(parsed.states[i].values == original.states[i].values);
        }
        CHECK(parsed.incidence == original.incidence);
        // Re-serializing reproduces the exact bytes.
        CHECK(epi::trajectory_csv(parsed) == text);
    }
}

TEST_CASE("malformed trajectory CSV is rejected with its source named") {
    std::istringstream bad_header("t,X,Y,incidence\n0,1,0,\n");
    CHECK_THROWS_AS(epi::read_trajectory_csv(bad_header, "x.csv"),
                    epi::ValidationError);
    std::istringstream bad_row("t,S,I,R,incidence\n0,0.9,0.1,zero,\n");
    try {
        epi::read_trajectory_csv(bad_row, "x.csv");
        FAIL("expected ValidationError");
    } catch (const epi::ValidationError& err) {
        CHECK(std::string(err.what()).find("x.csv") != std::string::npos);
    }
}

TEST_CASE("posterior CSV round-trips") {
    epi::PosteriorSamples samples;
    samples.chains = 1;
    samples.acceptance_rate = {0.31};
    samples.draws = {{2.0, 0.5}, {3.25, 0.125}, {2.875, 0.75}};
    const auto text = epi::posterior_csv(samples);
    CHECK(text.rfind("r0,rho\n", 0) == 0);
    std::istringstream in(text);
    const auto parsed = epi::read_posterior_csv(in, "posterior.csv");
    REQUIRE(parsed.size() == 3);
    CHECK(parsed == samples.draws);
}

TEST_CASE("schedule CSV round-trips through the horizon-supplying reader") {
    InterventionSchedule schedule;
    schedule.breakpoints = {0, 14, 35};
    schedule.levels = {0.0, 0.45, 0.1};
    schedule.horizon = 90;
    const auto text = epi::schedule_csv(schedule);
    CHECK(text.rfind("day,u\n", 0) == 0);
    std::istringstream in(text);
    const auto parsed = epi::read_schedule_csv(in, "schedule.csv", 90);
    CHECK(parsed.breakpoints == schedule.breakpoints);
    CHECK(parsed.levels == schedule.levels);
    CHECK(parsed.horizon == 90);
}

TEST_CASE("forecast CSV carries observations for history days only") {
    epi::ForecastBands bands;
    for (int t = 0; t < 6; ++t) {
        bands.days.push_back(t);
        bands.lower.push_back(10.0 * t);
        bands.median.push_back(10.0 * t + 1.0);
        bands.upper.push_back(10.0 * t + 2.5);
    }
    bands.history_days = 4;
    bands.draws_used = 100;

    epi::ObservedSeries observed;
    observed.population = 1e6;
    auto day = epi::Date{2020, 3, 1};
    for (int t = 0; t < 4; ++t) {
        observed.dates.push_back(day);
        observed.counts.push_back(7 * t);
        day = day.next_day();
    }

    const auto text = epi::forecast_csv(bands, &observed);
    CHECK(text.rfind("day,lower,median,upper,observed\n", 0) == 0);

    std::istringstream in(text);
    std::vector<std::pair<int, std::int64_t>> seen;
    const auto parsed = epi::read_forecast_csv(in, "forecast.csv", &seen);
    CHECK(parsed.history_days == 4);
    CHECK(parsed.days == bands.days);
    CHECK(parsed.lower == bands.lower);
    CHECK(parsed.median == bands.median);
    CHECK(parsed.upper == bands.upper);
    REQUIRE(seen.size() == 4);
    CHECK(seen[3] == std::pair<int, std::int64_t>{3, 21});

    // Without a series the observed column is entirely empty.
    const auto bare = epi::forecast_csv(bands, nullptr);
    std::istringstream bare_in(bare);
    const auto bare_parsed = epi::read_forecast_csv(bare_in, "forecast.csv");
    CHECK(bare_parsed.history_days == 0);
}

TEST_CASE("sweep CSV is long-format and round-trips") {
    std::vector<std::pair<double, epi::Trajectory>> runs;
    runs.emplace_back(0.0, small_trajectory(ModelFamily::SIR));
    runs.emplace_back(0.5, small_trajectory(ModelFamily::SIR));
    const auto text = epi::sweep_csv(runs);
    CHECK(text.rfind("u,t,infected\n", 0) == 0);
    std::istringstream in(text);
    const auto rows = epi::read_sweep_csv(in, "sweep.csv");
    REQUIRE(rows.size() == 2 * 21);
    CHECK(rows[0].u == 0.0);
    CHECK(rows[0].t == 0);
    CHECK(rows[21].u == 0.5);
    CHECK(rows[5].infected ==
          doctest::Approx(runs[0].second.infected_at(5)).epsilon(1e-15));
}

TEST_CASE("summary JSON is machine-readable and complete") {
    epi::PosteriorSummary summary;
    summary.r0 = {3.01, 0.11, 2.8, 3.0, 3.2};
    summary.rho = {0.84, 0.04, 0.77, 0.84, 0.9};
    summary.n_draws = 12000;
    epi::SummaryMeta meta;
    meta.model = "SIR(i)";
    meta.region = "region-a";
    meta.period = "2020-03-01..2020-06-28";
    meta.chains = 4;
    meta.acceptance_rate = {0.3, 0.29, 0.31, 0.3};
    meta.seed = 42;
    meta.warnings = {"demo warning"};

    const auto text = epi::summary_json(summary, meta);
    const auto parsed = nlohmann::json::parse(text);
    CHECK(parsed["model"] == "SIR(i)");
    CHECK(parsed["region"] == "region-a");
    CHECK(parsed["r0_mean"] == doctest::Approx(3.01));
    CHECK(parsed["r0_sd"] == doctest::Approx(0.11));
    CHECK(parsed["r0_q05"] == doctest::Approx(2.8));
    CHECK(parsed["r0_q50"] == doctest::Approx(3.0));
    CHECK(parsed["r0_q95"] == doctest::Approx(3.2));
    CHECK(parsed["rho_mean"] == doctest::Approx(0.84));
    CHECK(parsed["rho_q95"] == doctest::Approx(0.9));
    CHECK(parsed["n_draws"] == 12000);
    CHECK(parsed["chains"] == 4);
    CHECK(parsed["seed"] == 42);
    CHECK(parsed["acceptance_rate"].size() == 4);
    CHECK(parsed["warnings"][0] == "demo warning");
    CHECK(text.back() == '\n');
}

TEST_CASE("manifest JSON lists files with their hashes") {
    epi::Manifest manifest;
    manifest.files = {{"a.csv", epi::fnv1a64_hex("alpha")},
                      {"b.csv", epi::fnv1a64_hex("beta")}};
    manifest.seed = 7;
    const auto text = epi::manifest_json(manifest);
    const auto parsed = nlohmann::json::parse(text);
    CHECK(parsed["algorithm"] == "fnv1a-64");
    CHECK(parsed["seed"] == 7);
    CHECK(parsed["files"]["a.csv"] == epi::fnv1a64_hex("alpha"));
    CHECK(parsed["files"]["b.csv"] == epi::fnv1a64_hex("beta"));
}

TEST_CASE("write_outputs materializes exactly the present artifacts") {
    testutil::TempDir dir;
    const auto out = (dir.path() / "run").string();

    epi::RunArtifacts artifacts;
    artifacts.config_echo = "[model]\nfamily = SIR\n";
    artifacts.trajectory = small_trajectory(ModelFamily::SIR);
    InterventionSchedule schedule;
    schedule.breakpoints = {0};
    schedule.levels = {0.2};
    schedule.horizon = 20;
    artifacts.schedule = schedule;
    artifacts.seed = 99;

    const auto manifest = epi::write_outputs(artifacts, out);

    namespace fs = std::filesystem;
    CHECK(fs::exists(fs::path(out) / "config.ini"));
    CHECK(fs::exists(fs::path(out) / "trajectory.csv"));
    CHECK(fs::exists(fs::path(out) / "schedule.csv"));
    CHECK(fs::exists(fs::path(out) / "manifest.json"));
    CHECK_FALSE(fs::exists(fs::path(out) / "posterior.csv"));
    CHECK_FALSE(fs::exists(fs::path(out) / "forecast.csv"));

    // The manifest covers every file except itself and matches the bytes.
    REQUIRE(manifest.files.size() == 3);
    for (const auto& [name, hash] : manifest.files) {
        const auto content = testutil::read_file((fs::path(out) / name).string());
        CHECK(epi::fnv1a64_hex(content) == hash);
    }
    CHECK(manifest.seed == 99);

    // The on-disk manifest parses and agrees.
    const auto manifest_text =
        testutil::read_file((fs::path(out) / "manifest.json").string());
    const auto parsed = nlohmann::json::parse(manifest_text);
    CHECK(parsed["files"].size() == 3);
    CHECK(parsed["seed"] == 99);
}

TEST_CASE("an empty artifact set still writes a well-formed manifest") {
    testutil::TempDir dir;
    const auto out = (dir.path() / "empty").string();
    const auto manifest = epi::write_outputs(epi::RunArtifacts{}, out);
    CHECK(manifest.files.empty());
    const auto text =
        testutil::read_file((std::filesystem::path(out) / "manifest.json").string());
    const auto parsed = nlohmann::json::parse(text);
    CHECK(parsed["files"].empty());
}

TEST_CASE("identical runs produce byte-identical manifests") {
    testutil::TempDir dir;
    epi::RunArtifacts artifacts;
    artifacts.trajectory = small_trajectory(ModelFamily::SEIR);
    artifacts.seed = 5;

    epi::write_outputs(artifacts, (dir.path() / "a").string());
    epi::write_outputs(artifacts, (dir.path() / "b").string());
    const auto a = testutil::read_file((dir.path() / "a/manifest.json").string());
    const auto b = testutil::read_file((dir.path() / "b/manifest.json").string());
    CHECK(a == b);
}

TEST_CASE("sweep artifacts write one file per level plus the table") {
    testutil::TempDir dir;
    const auto out = (dir.path() / "sweep").string();
    epi::RunArtifacts artifacts;
    artifacts.sweep_trajectories.emplace_back(0.0,
                                              small_trajectory(ModelFamily::SIR));
    artifacts.sweep_trajectories.emplace_back(0.5,
                                              small_trajectory(ModelFamily::SIR));
    artifacts.sweep_table = true;
    const auto manifest = epi::write_outputs(artifacts, out);

    namespace fs = std::filesystem;
    CHECK(fs::exists(fs::path(out) / "sweep.csv"));
    int trajectory_files = 0;
    for (const auto& [name, hash] : manifest.files) {
        if (name.rfind("trajectory_u", 0) == 0) {
            ++trajectory_files;
        }
    }
    CHECK(trajectory_files == 2);
}

} // TEST_SUITE
