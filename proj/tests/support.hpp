#ifndef EPIKIT_TESTS_SUPPORT_HPP
#define EPIKIT_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "epi/likelihood.hpp"
#include "epi/model.hpp"
#include "epi/series.hpp"
#include "epi/simulate.hpp"

namespace testutil {

/// Forward-Euler at a fine step, sampled daily. Independent integration
/// scheme for cross-checking the RK4 stepping (shares only the public
/// derivative field).
inline std::vector<epi::CompartmentState> euler_daily(
    const epi::ModelSpec& spec, const epi::DiseaseParams& params, double u,
    int days, double dt) {
    epi::CompartmentState state = epi::init_state(spec, params);
    std::vector<epi::CompartmentState> out{state};
    const int substeps = static_cast<int>(std::lround(1.0 / dt));
    for (int day = 0; day < days; ++day) {
        for (int s = 0; s < substeps; ++s) {
            const auto d = epi::derivatives(spec, params, state, u);
            for (std::size_t i = 0; i < state.values.size(); ++i) {
                state.values[i] += dt * d[i];
            }
        }
        out.push_back(state);
    }
    return out;
}

/// Daily counts ~ Poisson(rho * incidence * N) from a known generator.
inline epi::ObservedSeries poisson_series(const epi::ModelSpec& spec,
                                          const epi::DiseaseParams& fixed,
                                          double r0_true, double rho_true,
                                          int days, std::uint64_t seed) {
    const epi::DiseaseParams truth = epi::with_theta(fixed, r0_true, rho_true);
    const auto lambda =
        epi::expected_counts(spec, truth, spec.population, days);
    std::mt19937_64 rng(seed);
    epi::ObservedSeries data;
    data.population = spec.population;
    epi::Date day{2020, 3, 1};
    for (int t = 0; t < days; ++t) {
        std::int64_t count = 0;
        if (lambda[static_cast<std::size_t>(t)] > 0.0) {
            std::poisson_distribution<std::int64_t> noise(
                lambda[static_cast<std::size_t>(t)]);
            count = noise(rng);
        }
        data.dates.push_back(day);
        data.counts.push_back(count);
        day = day.next_day();
    }
    return data;
}

/// Same generator but noise-free rounded counts.
inline epi::ObservedSeries rounded_series(const epi::ModelSpec& spec,
                                          const epi::DiseaseParams& fixed,
                                          double r0_true, double rho_true,
                                          int days) {
    const epi::DiseaseParams truth = epi::with_theta(fixed, r0_true, rho_true);
    const auto lambda =
        epi::expected_counts(spec, truth, spec.population, days);
    epi::ObservedSeries data;
    data.population = spec.population;
    epi::Date day{2020, 3, 1};
    for (int t = 0; t < days; ++t) {
        data.dates.push_back(day);
        data.counts.push_back(static_cast<std::int64_t>(
            std::llround(lambda[static_cast<std::size_t>(t)])));
        day = day.next_day();
    }
    return data;
}

/// Monte-Carlo standard error of the mean by batch means; robust to the
/// autocorrelation of MCMC output.
inline double batch_means_se(const std::vector<double>& x,
                             std::size_t n_batches = 30) {
    if (x.size() < n_batches * 2) {
        throw std::runtime_error("batch_means_se: series too short");
    }
    const std::size_t batch = x.size() / n_batches;
    std::vector<double> means;
    means.reserve(n_batches);
    for (std::size_t b = 0; b < n_batches; ++b) {
        double sum = 0.0;
        for (std::size_t i = b * batch; i < (b + 1) * batch; ++i) {
            sum += x[i];
        }
        means.push_back(sum / static_cast<double>(batch));
    }
    double grand = 0.0;
    for (const double m : means) {
        grand += m;
    }
    grand /= static_cast<double>(n_batches);
    double var = 0.0;
    for (const double m : means) {
        var += (m - grand) * (m - grand);
    }
    var /= static_cast<double>(n_batches - 1);
    return std::sqrt(var / static_cast<double>(n_batches));
}

/// Self-deleting unique directory for file-based tests.
class TempDir {
public:
    TempDir() {
        std::string tmpl =
            (std::filesystem::temp_directory_path() / "epikit-test-XXXXXX")
                .string();
        if (::mkdtemp(tmpl.data()) == nullptr) {
            throw std::runtime_error("mkdtemp failed");
        }
        path_ = tmpl;
    }

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

    std::string file(const std::string& name) const {
        return (path_ / name).string();
    }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace testutil

#endif
