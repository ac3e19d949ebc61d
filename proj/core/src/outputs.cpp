#include "epi/outputs.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>

#include "json.hpp"

#include "epi/errors.hpp"
#include "epi/format.hpp"

namespace epi {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (const char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::string fnv1a64_hex(std::string_view bytes) {
    const std::uint64_t hash = fnv1a64(bytes);
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx",
                  static_cast<unsigned long long>(hash));
    return std::string(buffer, 16);
}

// ---- serializers ----

std::string trajectory_csv(const Trajectory& trajectory) {
    std::ostringstream out;
    out << "t";
    for (const char* name : compartment_names(trajectory.family)) {
        out << "," << name;
    }
    out << ",incidence\n";
    for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
        out << trajectory.times[i];
        for (const double v : trajectory.states[i].values) {
            out << "," << format_double(v);
        }
        out << ",";
        if (i < trajectory.incidence.size()) {
            out << format_double(trajectory.incidence[i]);
        }
        out << "\n";
    }
    return out.str();
}

std::string posterior_csv(const PosteriorSamples& samples) {
    std::ostringstream out;
    out << "r0,rho\n";
    for (const auto& draw : samples.draws) {
        out << format_double(draw[0]) << "," << format_double(draw[1]) << "\n";
    }
    return out.str();
}

std::string summary_json(const PosteriorSummary& summary, const SummaryMeta& meta) {
    nlohmann::ordered_json doc;
    doc["model"] = meta.model;
    doc["region"] = meta.region;
    doc["period"] = meta.period;
    doc["r0_mean"] = summary.r0.mean;
    doc["r0_sd"] = summary.r0.sd;
    doc["rho_mean"] = summary.rho.mean;
    doc["rho_sd"] = summary.rho.sd;
    doc["r0_q05"] = summary.r0.q05;
    doc["r0_q50"] = summary.r0.q50;
    doc["r0_q95"] = summary.r0.q95;
    doc["rho_q05"] = summary.rho.q05;
    doc["rho_q50"] = summary.rho.q50;
    doc["rho_q95"] = summary.rho.q95;
    doc["n_draws"] = summary.n_draws;
    doc["chains"] = meta.chains;
    doc["acceptance_rate"] = meta.acceptance_rate;
    doc["seed"] = meta.seed;
    doc["warnings"] = meta.warnings;
    return doc.dump(2) + "\n";
}

std::string forecast_csv(const ForecastBands& bands,
                         const ObservedSeries* observed) {
    std::ostringstream out;
    out << "day,lower,median,upper,observed\n";
    for (std::size_t i = 0; i < bands.days.size(); ++i) {
        const int day = bands.days[i];
        out << day << "," << format_double(bands.lower[i]) << ","
            << format_double(bands.median[i]) << ","
            << format_double(bands.upper[i]) << ",";
        if (observed != nullptr && day >= 0 &&
            static_cast<std::size_t>(day) < observed->counts.size()) {
            out << observed->counts[static_cast<std::size_t>(day)];
        }
        out << "\n";
    }
    return out.str();
}

std::string schedule_csv(const InterventionSchedule& schedule) {
    std::ostringstream out;
    out << "day,u\n";
    for (std::size_t i = 0; i < schedule.breakpoints.size(); ++i) {
        out << schedule.breakpoints[i] << ","
            << format_double(schedule.levels[i]) << "\n";
    }
    return out.str();
}

std::string sweep_csv(const std::vector<std::pair<double, Trajectory>>& runs) {
    std::ostringstream out;
    out << "u,t,infected\n";
    for (const auto& [u, trajectory] : runs) {
        for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
            out << format_double(u) << "," << trajectory.times[i] << ","
                << format_double(trajectory.infected_at(i)) << "\n";
        }
    }
    return out.str();
}

// ---- readers ----

namespace {

[[noreturn]] void csv_error(const std::string& source, std::size_t line,
                            const std::string& what) {
    throw ValidationError(source + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t begin = 0;
    while (true) {
        const auto comma = line.find(',', begin);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(begin));
            break;
        }
        fields.push_back(line.substr(begin, comma - begin));
        begin = comma + 1;
    }
    return fields;
}

double field_double(const std::string& field, const std::string& source,
                    std::size_t line) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    const auto result = std::from_chars(first, last, value);
    if (result.ec != std::errc() || result.ptr != last) {
        csv_error(source, line, "expected a number, got '" + field + "'");
    }
    return value;
}

int field_int(const std::string& field, const std::string& source,
              std::size_t line) {
    int value = 0;
    const char* first = field.data();
    const char* last = first + field.size();
    const auto result = std::from_chars(first, last, value);
    if (result.ec != std::errc() || result.ptr != last) {
        csv_error(source, line, "expected an integer, got '" + field + "'");
    }
    return value;
}

std::int64_t field_i64(const std::string& field, const std::string& source,
                       std::size_t line) {
    std::int64_t value = 0;
    const char* first = field.data();
    const char* last = first + field.size();
    const auto result = std::from_chars(first, last, value);
    if (result.ec != std::errc() || result.ptr != last) {
        csv_error(source, line, "expected an integer, got '" + field + "'");
    }
    return value;
}

// Reads one CSV line into fields, stripping a trailing CR; false at EOF.
bool next_row(std::istream& in, std::vector<std::string>& fields) {
    std::string line;
    if (!std::getline(in, line)) {
        return false;
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    fields = split_fields(line);
    return true;
}

void expect_header(std::istream& in, const std::string& source,
                   const std::string& wanted) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ValidationError(source + ": empty file");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != wanted) {
        csv_error(source, 1, "expected header '" + wanted + "', got '" + line + "'");
    }
}

std::string header_for(ModelFamily family) {
    std::string header = "t";
    for (const char* name : compartment_names(family)) {
        header += ",";
        header += name;
    }
    header += ",incidence";
    return header;
}

} // namespace

Trajectory read_trajectory_csv(std::istream& in, const std::string& source_name) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ValidationError(source_name + ": empty file");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }

    ModelFamily family = ModelFamily::SIR;
    bool matched = false;
    for (const ModelFamily candidate :
         {ModelFamily::SIR, ModelFamily::SEIR, ModelFamily::SEI3RD}) {
        if (line == header_for(candidate)) {
            family = candidate;
            matched = true;
            break;
        }
    }
    if (!matched) {
        csv_error(source_name, 1, "unrecognized trajectory header '" + line + "'");
    }
    const std::size_t n_comp =
        static_cast<std::size_t>(compartment_count(family));

    Trajectory trajectory;
    trajectory.family = family;
    std::vector<std::string> fields;
    std::size_t line_no = 1;
    while (next_row(in, fields)) {
        ++line_no;
        if (fields.size() != n_comp + 2) {
            csv_error(source_name, line_no, "wrong field count");
        }
        trajectory.times.push_back(field_int(fields[0], source_name, line_no));
        CompartmentState state;
        state.values.reserve(n_comp);
        for (std::size_t c = 0; c < n_comp; ++c) {
            state.values.push_back(
                field_double(fields[1 + c], source_name, line_no));
        }
        trajectory.states.push_back(std::move(state));
        const std::string& inc = fields.back();
        if (!inc.empty()) {
            trajectory.incidence.push_back(field_double(inc, source_name, line_no));
        }
    }
    if (trajectory.times.empty()) {
        throw ValidationError(source_name + ": no data rows");
    }
    if (trajectory.incidence.size() + 1 != trajectory.times.size()) {
        throw ValidationError(
            source_name + ": incidence must be present on all rows but the last");
    }
    trajectory.validate();
    return trajectory;
}

std::vector<std::array<double, 2>> read_posterior_csv(
    std::istream& in, const std::string& source_name) {
    expect_header(in, source_name, "r0,rho");
    std::vector<std::array<double, 2>> draws;
    std::vector<std::string> fields;
    std::size_t line_no = 1;
    while (next_row(in, fields)) {
        ++line_no;
        if (fields.size() != 2) {
            csv_error(source_name, line_no, "expected two fields");
        }
        draws.push_back({field_double(fields[0], source_name, line_no),
                         field_double(fields[1], source_name, line_no)});
    }
    return draws;
}

InterventionSchedule read_schedule_csv(std::istream& in,
                                       const std::string& source_name,
                                       int horizon) {
    expect_header(in, source_name, "day,u");
    InterventionSchedule schedule;
    schedule.horizon = horizon;
    std::vector<std::string> fields;
    std::size_t line_no = 1;
    while (next_row(in, fields)) {
        ++line_no;
        if (fields.size() != 2) {
            csv_error(source_name, line_no, "expected two fields");
        }
        schedule.breakpoints.push_back(field_int(fields[0], source_name, line_no));
        schedule.levels.push_back(field_double(fields[1], source_name, line_no));
    }
    schedule.validate();
    return schedule;
}

ForecastBands read_forecast_csv(
    std::istream& in, const std::string& source_name,
    std::vector<std::pair<int, std::int64_t>>* observed_out) {
    expect_header(in, source_name, "day,lower,median,upper,observed");
    ForecastBands bands;
    std::vector<std::string> fields;
    std::size_t line_no = 1;
    int observed_rows = 0;
    while (next_row(in, fields)) {
        ++line_no;
        if (fields.size() != 5) {
            csv_error(source_name, line_no, "expected five fields");
        }
        const int day = field_int(fields[0], source_name, line_no);
        bands.days.push_back(day);
        bands.lower.push_back(field_double(fields[1], source_name, line_no));
        bands.median.push_back(field_double(fields[2], source_name, line_no));
        bands.upper.push_back(field_double(fields[3], source_name, line_no));
        if (!fields[4].empty()) {
            ++observed_rows;
            if (observed_out != nullptr) {
                observed_out->push_back(
                    {day, field_i64(fields[4], source_name, line_no)});
            }
        }
    }
    bands.history_days = observed_rows;
    bands.validate();
    return bands;
}

std::vector<SweepRow> read_sweep_csv(std::istream& in,
                                     const std::string& source_name) {
    expect_header(in, source_name, "u,t,infected");
    std::vector<SweepRow> rows;
    std::vector<std::string> fields;
    std::size_t line_no = 1;
    while (next_row(in, fields)) {
        ++line_no;
        if (fields.size() != 3) {
            csv_error(source_name, line_no, "expected three fields");
        }
        rows.push_back(SweepRow{field_double(fields[0], source_name, line_no),
                                field_int(fields[1], source_name, line_no),
                                field_double(fields[2], source_name, line_no)});
    }
    return rows;
}

// ---- run output orchestration ----

std::string manifest_json(const Manifest& manifest) {
    nlohmann::ordered_json doc;
    doc["algorithm"] = manifest.algorithm;
    if (manifest.seed.has_value()) {
        doc["seed"] = *manifest.seed;
    }
    nlohmann::ordered_json files = nlohmann::ordered_json::object();
    for (const auto& [name, hash] : manifest.files) {
        files[name] = hash;
    }
    doc["files"] = files;
    return doc.dump(2) + "\n";
}

Manifest write_outputs(const RunArtifacts& artifacts, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw Error("cannot create output directory " + out_dir + ": " +
                    ec.message());
    }

    Manifest manifest;
    manifest.seed = artifacts.seed;

    std::vector<std::string> written;
    const auto emit = [&](const std::string& name, const std::string& content) {
        const fs::path path = fs::path(out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        out.write(content.data(),
                  static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::string message = "failed writing " + path.string();
            if (!written.empty()) {
                message += "; files written so far:";
                for (const auto& w : written) {
                    message += " " + w;
                }
            }
            throw Error(message);
        }
        written.push_back(name);
        manifest.files.push_back({name, fnv1a64_hex(content)});
    };

    if (artifacts.config_echo.has_value()) {
        emit("config.ini", *artifacts.config_echo);
    }
    if (artifacts.trajectory.has_value()) {
        emit("trajectory.csv", trajectory_csv(*artifacts.trajectory));
    }
    for (const auto& [u, trajectory] : artifacts.sweep_trajectories) {
        emit("trajectory_u" + format_double(u) + ".csv",
             trajectory_csv(trajectory));
    }
    if (artifacts.sweep_table && !artifacts.sweep_trajectories.empty()) {
        emit("sweep.csv", sweep_csv(artifacts.sweep_trajectories));
    }
    if (artifacts.posterior.has_value()) {
        emit("posterior.csv", posterior_csv(*artifacts.posterior));
    }
    if (artifacts.summary.has_value()) {
        emit("summary.json",
             summary_json(artifacts.summary->first, artifacts.summary->second));
    }
    if (artifacts.forecast.has_value()) {
        const ObservedSeries* observed =
            artifacts.observed.has_value() ? &*artifacts.observed : nullptr;
        emit("forecast.csv", forecast_csv(*artifacts.forecast, observed));
    }
    if (artifacts.schedule.has_value()) {
        emit("schedule.csv", schedule_csv(*artifacts.schedule));
    }
    for (const auto& [name, content] : artifacts.extra_files) {
        emit(name, content);
    }

    std::sort(manifest.files.begin(), manifest.files.end());
    emit("manifest.json", manifest_json(manifest));
    manifest.files.pop_back(); // manifest.json cannot list its own hash

    return manifest;
}

} // namespace epi
