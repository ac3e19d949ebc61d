#ifndef EPI_MODEL_HPP
#define EPI_MODEL_HPP

#include <span>
#include <string>
#include <vector>

namespace epi {

enum class ModelFamily { SIR, SEIR, SEI3RD };

std::string to_string(ModelFamily family);
ModelFamily model_family_from_string(const std::string& name);

/// Number of compartments: 3 (SIR), 4 (SEIR), or 7 (SEI3RD).
int compartment_count(ModelFamily family);

/// Compartment labels in state-vector order, e.g. {"S","E","I1","I2","I3","R","D"}.
std::span<const char* const> compartment_names(ModelFamily family);

/// Which compartmental structure to run and how it is seeded.
struct ModelSpec {
    ModelFamily family = ModelFamily::SIR;
    /// Refined variant: seed with a fixed initial infected fraction instead
    /// of a single index case.
    bool refined = false;
    /// Absolute head-count N. Converts a single index case to a fraction and
    /// scales reported counts.
    double population = 1e6;

    /// Label such as "SIR" or "SEI3RD(i)".
    std::string label() const;

    void validate() const;
};

/// Progression/recovery structure of the three-stage infectious ladder.
/// Stages I1 -> I2 -> I3 with per-stage recovery; deaths only from I3.
struct StageParams {
    double p1 = 1.0 / 5.0;  // I1 -> I2 progression rate (1/day)
    double p2 = 1.0 / 6.0;  // I2 -> I3 progression rate (1/day)
    double g1 = 1.0 / 6.0;  // I1 -> R recovery rate (1/day)
    double g2 = 1.0 / 8.0;  // I2 -> R recovery rate (1/day)
    double g3 = 1.0 / 10.0; // I3 -> R recovery rate (1/day)
    double delta = 1.0 / 15.0; // I3 -> D death rate (1/day)
    // Infectiousness weights of I1..I3; must sum to 1 within 1e-12.
    double w1 = 0.6;
    double w2 = 0.3;
    double w3 = 0.1;

    void validate() const;
};

/// Disease parameters. beta is never stored; it is derived as R0 * gamma.
struct DiseaseParams {
    double r0 = 2.0;          // basic reproduction number
    double gamma = 0.1;       // recovery rate (1/day)
    double sigma = 1.0 / 5.1; // incubation rate E -> I (1/day); SEIR/SEI3RD
    StageParams stage;        // SEI3RD only
    double rho = 1.0;         // response rate, fraction of infections observed, in (0,1]
    double iota = 1e-4;       // initial infected fraction for refined variants, in [0,1)

    double beta() const { return r0 * gamma; }

    void validate(ModelFamily family) const;
};

/// Population fractions per compartment. Entries are non-negative and sum
/// to 1 within 1e-9.
struct CompartmentState {
    std::vector<double> values;

    void validate() const;
};

/// Seeded initial state. Refined variants place params.iota in I (or I1),
/// otherwise a single index case of 1/population.
CompartmentState init_state(const ModelSpec& spec, const DiseaseParams& params);

/// Time derivative of each compartment fraction under intervention level u,
/// with beta_eff = (1-u) * r0 * gamma. Entries sum to zero.
void derivatives_into(const ModelSpec& spec, const DiseaseParams& params,
                      std::span<const double> state, double u,
                      std::span<double> out);

std::vector<double> derivatives(const ModelSpec& spec, const DiseaseParams& params,
                                const CompartmentState& state, double u);

/// Currently-infected fraction: I for SIR/SEIR (E excluded), I1+I2+I3 for SEI3RD.
double infected_fraction(ModelFamily family, std::span<const double> state);

} // namespace epi

#endif
