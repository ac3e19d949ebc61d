#include "epi/model.hpp"

#include <cmath>
#include <sstream>

#include "epi/errors.hpp"

namespace epi {

namespace {

constexpr const char* kSirNames[] = {"S", "I", "R"};
constexpr const char* kSeirNames[] = {"S", "E", "I", "R"};
constexpr const char* kSei3rdNames[] = {"S", "E", "I1", "I2", "I3", "R", "D"};

// SEI3RD state-vector indices.
constexpr int kS = 0, kE = 1, kI1 = 2, kI2 = 3, kI3 = 4, kR = 5, kD = 6;

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

} // namespace

std::string to_string(ModelFamily family) {
    switch (family) {
    case ModelFamily::SIR: return "SIR";
    case ModelFamily::SEIR: return "SEIR";
    case ModelFamily::SEI3RD: return "SEI3RD";
    }
    throw ValidationError("unknown model family");
}

ModelFamily model_family_from_string(const std::string& name) {
    if (name == "SIR") return ModelFamily::SIR;
    if (name == "SEIR") return ModelFamily::SEIR;
    if (name == "SEI3RD") return ModelFamily::SEI3RD;
    throw ValidationError("unknown model family '" + name +
                          "' (expected SIR, SEIR, or SEI3RD)");
}

int compartment_count(ModelFamily family) {
    switch (family) {
    case ModelFamily::SIR: return 3;
    case ModelFamily::SEIR: return 4;
    case ModelFamily::SEI3RD: return 7;
    }
    throw ValidationError("unknown model family");
}

std::span<const char* const> compartment_names(ModelFamily family) {
    switch (family) {
    case ModelFamily::SIR: return kSirNames;
    case ModelFamily::SEIR: return kSeirNames;
    case ModelFamily::SEI3RD: return kSei3rdNames;
    }
    throw ValidationError("unknown model family");
}

std::string ModelSpec::label() const {
    return to_string(family) + (refined ? "(i)" : "");
}

void ModelSpec::validate() const {
    require(std::isfinite(population) && population > 0.0,
            "model population must be > 0");
}

void StageParams::validate() const {
    require(p1 > 0 && p2 > 0, "stage progression rates p1, p2 must be > 0");
    require(g1 > 0 && g2 > 0 && g3 > 0, "stage recovery rates g1..g3 must be > 0");
    require(delta > 0, "stage death rate delta must be > 0");
    require(w1 >= 0 && w2 >= 0 && w3 >= 0,
            "infectiousness weights w1..w3 must be non-negative");
    require(std::abs(w1 + w2 + w3 - 1.0) <= 1e-12,
            "infectiousness weights w1+w2+w3 must sum to 1 within 1e-12");
}

void DiseaseParams::validate(ModelFamily family) const {
    require(std::isfinite(r0) && r0 > 0, "r0 must be > 0");
    require(std::isfinite(gamma) && gamma > 0, "gamma must be > 0");
    if (family != ModelFamily::SIR) {
        require(std::isfinite(sigma) && sigma > 0, "sigma must be > 0");
    }
    if (family == ModelFamily::SEI3RD) {
        stage.validate();
    }
    require(rho > 0.0 && rho <= 1.0, "rho must lie in (0, 1]");
    require(iota >= 0.0 && iota < 1.0, "iota must lie in [0, 1)");
}

void CompartmentState::validate() const {
    double sum = 0.0;
    for (double v : values) {
        require(std::isfinite(v) && v >= 0.0,
                "compartment fractions must be finite and non-negative");
        sum += v;
    }
    require(std::abs(sum - 1.0) <= 1e-9,
            "compartment fractions must sum to 1 within 1e-9");
}

CompartmentState init_state(const ModelSpec& spec, const DiseaseParams& params) {
    spec.validate();
    params.validate(spec.family);

    double infected;
    if (spec.refined) {
        infected = params.iota;
    } else {
        infected = 1.0 / spec.population;
        if (infected >= 1.0) {
            throw ValidationError(
                "population too small to seed a single index case as a fraction");
        }
    }

    CompartmentState state;
    state.values.assign(compartment_count(spec.family), 0.0);
    state.values[0] = 1.0 - infected;
    // The seed goes into the first infectious compartment: I for SIR/SEIR,
    // I1 for SEI3RD.
    switch (spec.family) {
    case ModelFamily::SIR: state.values[1] = infected; break;
    case ModelFamily::SEIR: state.values[2] = infected; break;
    case ModelFamily::SEI3RD: state.values[kI1] = infected; break;
    }
    return state;
}

void derivatives_into(const ModelSpec& spec, const DiseaseParams& params,
                      std::span<const double> state, double u,
                      std::span<double> out) {
    const double beta_eff = (1.0 - u) * params.beta();

    switch (spec.family) {
    case ModelFamily::SIR: {
        const double infection = beta_eff * state[0] * state[1];
        const double recovery = params.gamma * state[1];
        out[0] = -infection;
        out[1] = infection - recovery;
        out[2] = recovery;
        break;
    }
    case ModelFamily::SEIR: {
        const double infection = beta_eff * state[0] * state[2];
        const double progression = params.sigma * state[1];
        const double recovery = params.gamma * state[2];
        out[0] = -infection;
        out[1] = infection - progression;
        out[2] = progression - recovery;
        out[3] = recovery;
        break;
    }
    case ModelFamily::SEI3RD: {
        const StageParams& st = params.stage;
        // Force of infection weighted across the three infectious stages.
        const double lambda = beta_eff * (st.w1 * state[kI1] + st.w2 * state[kI2] +
                                          st.w3 * state[kI3]);
        const double infection = lambda * state[kS];
        const double incubation = params.sigma * state[kE];
        const double prog12 = st.p1 * state[kI1];
        const double prog23 = st.p2 * state[kI2];
        const double rec1 = st.g1 * state[kI1];
        const double rec2 = st.g2 * state[kI2];
        const double rec3 = st.g3 * state[kI3];
        const double death = st.delta * state[kI3];
        out[kS] = -infection;
        out[kE] = infection - incubation;
        out[kI1] = incubation - prog12 - rec1;
        out[kI2] = prog12 - prog23 - rec2;
        out[kI3] = prog23 - rec3 - death;
        out[kR] = rec1 + rec2 + rec3;
        out[kD] = death;
        break;
    }
    }
}

std::vector<double> derivatives(const ModelSpec& spec, const DiseaseParams& params,
                                const CompartmentState& state, double u) {
    if (u < 0.0 || u > 1.0) {
        throw ValidationError("intervention level u must lie in [0, 1]");
    }
    const int n = compartment_count(spec.family);
    if (static_cast<int>(state.values.size()) != n) {
        std::ostringstream msg;
        msg << "state has " << state.values.size() << " compartments, expected " << n;
        throw ValidationError(msg.str());
    }
    std::vector<double> out(n);
    derivatives_into(spec, params, state.values, u, out);
    return out;
}

double infected_fraction(ModelFamily family, std::span<const double> state) {
    switch (family) {
    case ModelFamily::SIR: return state[1];
    case ModelFamily::SEIR: return state[2];
    case ModelFamily::SEI3RD: return state[kI1] + state[kI2] + state[kI3];
    }
    throw ValidationError("unknown model family");
}

} // namespace epi
