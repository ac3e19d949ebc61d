#include <cmath>
#include <random>
#include <string_view>

#include "doctest.h"
#include "epi/errors.hpp"
#include "epi/model.hpp"

using epi::CompartmentState;
using epi::DiseaseParams;
using epi::ModelFamily;
using epi::ModelSpec;

TEST_SUITE("model") {

TEST_CASE("family names round-trip and bad names are rejected") {
    CHECK(epi::to_string(ModelFamily::SIR) == "SIR");
    CHECK(epi::to_string(ModelFamily::SEIR) == "SEIR");
    CHECK(epi::to_string(ModelFamily::SEI3RD) == "SEI3RD");
    for (const auto* name : {"SIR", "SEIR", "SEI3RD"}) {
        CHECK(epi::to_string(epi::model_family_from_string(name)) == name);
    }
    CHECK_THROWS_AS(epi::model_family_from_string("SEIRS"),
                    epi::ValidationError);
    CHECK_THROWS_AS(epi::model_family_from_string("sir"),
                    epi::ValidationError);
    CHECK_THROWS_AS(epi::model_family_from_string(""), epi::ValidationError);
}

TEST_CASE("compartment layout per family") {
    CHECK(epi::compartment_count(ModelFamily::SIR) == 3);
    CHECK(epi::compartment_count(ModelFamily::SEIR) == 4);
    CHECK(epi::compartment_count(ModelFamily::SEI3RD) == 7);

    const auto sir = epi::compartment_names(ModelFamily::SIR);
    REQUIRE(sir.size() == 3);
    CHECK(std::string_view(sir[0]) == "S");
    CHECK(std::string_view(sir[1]) == "I");
    CHECK(std::string_view(sir[2]) == "R");

    const auto seir = epi::compartment_names(ModelFamily::SEIR);
    REQUIRE(seir.size() == 4);
    CHECK(std::string_view(seir[1]) == "E");

    const auto sei3rd = epi::compartment_names(ModelFamily::SEI3RD);
    REQUIRE(sei3rd.size() == 7);
    CHECK(std::string_view(sei3rd[2]) == "I1");
    CHECK(std::string_view(sei3rd[3]) == "I2");
    CHECK(std::string_view(sei3rd[4]) == "I3");
    CHECK(std::string_view(sei3rd[6]) == "D");
}

TEST_CASE("spec labels carry the variant tag") {
    ModelSpec spec;
    spec.family = ModelFamily::SIR;
    spec.refined = false;
    CHECK(spec.label() == "SIR");
    spec.refined = true;
    CHECK(spec.label() == "SIR(i)");
    spec.family = ModelFamily::SEI3RD;
    CHECK(spec.label() == "SEI3RD(i)");
}

TEST_CASE("spec validation rejects a non-positive population") {
    ModelSpec spec;
    spec.population = 0.0;
    CHECK_THROWS_AS(spec.validate(), epi::ValidationError);
    spec.population = -5.0;
    CHECK_THROWS_AS(spec.validate(), epi::ValidationError);
    spec.population = 1e6;
    CHECK_NOTHROW(spec.validate());
}

TEST_CASE("parameter validation catches out-of-range rates") {
    DiseaseParams params;

    SUBCASE("defaults pass for every family") {
        for (const auto family :
             {ModelFamily::SIR, ModelFamily::SEIR, ModelFamily::SEI3RD}) {
            CHECK_NOTHROW(params.validate(family));
        }
    }
    SUBCASE("r0 must be positive") {
        params.r0 = 0.0;
        CHECK_THROWS_AS(params.validate(ModelFamily::SIR),
                        epi::ValidationError);
    }
    SUBCASE("gamma must be positive") {
        params.gamma = -0.1;
        CHECK_THROWS_AS(params.validate(ModelFamily::SIR),
                        epi::ValidationError);
    }
    SUBCASE("sigma checked only when the model has a latent stage") {
        params.sigma = 0.0;
        CHECK_NOTHROW(params.validate(ModelFamily::SIR));
        CHECK_THROWS_AS(params.validate(ModelFamily::SEIR),
                        epi::ValidationError);
    }
    SUBCASE("rho must lie in (0, 1]") {
        params.rho = 0.0;
        CHECK_THROWS_AS(params.validate(ModelFamily::SIR),
                        epi::ValidationError);
        params.rho = 1.0000001;
        CHECK_THROWS_AS(params.validate(ModelFamily::SIR),
                        epi::ValidationError);
        params.rho = 1.0;
        CHECK_NOTHROW(params.validate(ModelFamily::SIR));
    }
    SUBCASE("iota may be zero but not one") {
        params.iota = 0.0;
        CHECK_NOTHROW(params.validate(ModelFamily::SIR));
        params.iota = 1.0;
        CHECK_THROWS_AS(params.validate(ModelFamily::SIR),
                        epi::ValidationError);
    }
    SUBCASE("severity weights must sum to one") {
        params.stage.w1 = 0.5;
        CHECK_NOTHROW(params.validate(ModelFamily::SIR));
        CHECK_THROWS_AS(params.validate(ModelFamily::SEI3RD),
                        epi::ValidationError);
    }
    SUBCASE("stage rates must be positive for the staged family") {
        params.stage.g3 = 0.0;
        CHECK_NOTHROW(params.validate(ModelFamily::SEIR));
        CHECK_THROWS_AS(params.validate(ModelFamily::SEI3RD),
                        epi::ValidationError);
    }
}

TEST_CASE("beta is derived, never stored") {
    DiseaseParams params;
    params.r0 = 2.5;
    params.gamma = 0.2;
    CHECK(params.beta() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("initial state seeds the first infectious compartment") {
    DiseaseParams params;
    params.iota = 1e-4;

    ModelSpec spec;
    spec.family = ModelFamily::SIR;
    spec.refined = true;
    auto state = epi::init_state(spec, params);
    REQUIRE(state.values.size() == 3);
    CHECK(state.values[0] == doctest::Approx(1.0 - 1e-4).epsilon(1e-15));
    CHECK(state.values[1] == 1e-4);
    CHECK(state.values[2] == 0.0);

    // Classical variant seeds a single index case out of N.
    spec.refined = false;
    spec.population = 1e6;
    state = epi::init_state(spec, params);
    CHECK(state.values[1] == 1e-6);
    CHECK(state.values[0] == doctest::Approx(1.0 - 1e-6).epsilon(1e-15));

    spec.family = ModelFamily::SEI3RD;
    spec.refined = true;
    state = epi::init_state(spec, params);
    REQUIRE(state.values.size() == 7);
    CHECK(state.values[2] == 1e-4); // I1 seeded
    CHECK(state.values[1] == 0.0);  // E stays empty
    CHECK(state.values[3] == 0.0);
    CHECK(state.values[6] == 0.0);
    double sum = 0.0;
    for (const double v : state.values) {
        sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));

    // SEIR seeds I (index 2), not E.
    spec.family = ModelFamily::SEIR;
    state = epi::init_state(spec, params);
    REQUIRE(state.values.size() == 4);
    CHECK(state.values[2] == 1e-4);
    CHECK(state.values[1] == 0.0);
}

TEST_CASE("a one-person population cannot seed an index case") {
    ModelSpec spec;
    spec.refined = false;
    spec.population = 1.0;
    DiseaseParams params;
    CHECK_THROWS_AS(epi::init_state(spec, params), epi::ValidationError);
}

TEST_CASE("basic SIR field matches a hand computation") {
    // S = 0.99, I = 0.01, r0 = 2, gamma = 0.1 (so beta = 0.2), u = 0:
    //   dS = -0.2 * 0.99 * 0.01 = -0.00198
    //   dI = 0.00198 - 0.1 * 0.01 = 0.00098
    //   dR = 0.001
    ModelSpec spec;
    spec.family = ModelFamily::SIR;
    DiseaseParams params;
    params.r0 = 2.0;
    params.gamma = 0.1;
    CompartmentState state;
    state.values = {0.99, 0.01, 0.0};

    const auto d = epi::derivatives(spec, params, state, 0.0);
    REQUIRE(d.size() == 3);
    CHECK(d[0] == doctest::Approx(-0.00198).epsilon(1e-12));
    CHECK(d[1] == doctest::Approx(0.00098).epsilon(1e-12));
    CHECK(d[2] == doctest::Approx(0.001).epsilon(1e-12));
}

TEST_CASE("intervention level is range-checked") {
    ModelSpec spec;
    DiseaseParams params;
    CompartmentState state;
    state.values = {0.99, 0.01, 0.0};
    CHECK_THROWS_AS(epi::derivatives(spec, params, state, -0.01),
                    epi::ValidationError);
    CHECK_THROWS_AS(epi::derivatives(spec, params, state, 1.01),
                    epi::ValidationError);
}

TEST_CASE("state length must match the family") {
    ModelSpec spec;
    spec.family = ModelFamily::SEIR;
    DiseaseParams params;
    CompartmentState state;
    state.values = {0.99, 0.01, 0.0};
    CHECK_THROWS_AS(epi::derivatives(spec, params, state, 0.0),
                    epi::ValidationError);
}

TEST_CASE("full intervention removes transmission exactly") {
    DiseaseParams params;
    for (const auto family :
         {ModelFamily::SIR, ModelFamily::SEIR, ModelFamily::SEI3RD}) {
        ModelSpec spec;
        spec.family = family;
        spec.refined = true;
        const auto state = epi::init_state(spec, params);
        const auto d = epi::derivatives(spec, params, state, 1.0);
        CHECK(d[0] == 0.0); // dS is exactly zero, not merely small
        if (family != ModelFamily::SIR) {
            // No new infections and an empty latent stage: dE = 0 exactly.
            CHECK(d[1] == 0.0);
        }
    }
}

TEST_CASE("disease-free states are equilibria") {
    DiseaseParams params;
    for (const auto family :
         {ModelFamily::SIR, ModelFamily::SEIR, ModelFamily::SEI3RD}) {
        ModelSpec spec;
        spec.family = family;
        CompartmentState state;
        state.values.assign(epi::compartment_count(family), 0.0);
        state.values[0] = 0.6;
        // Put the rest in R (index 5 for SEI3RD, last otherwise).
        const std::size_t r_index =
            family == ModelFamily::SEI3RD ? 5 : state.values.size() - 1;
        state.values[r_index] = 0.4;
        const auto d = epi::derivatives(spec, params, state, 0.3);
        for (const double v : d) {
            CHECK(v == 0.0);
        }
    }
}

TEST_CASE("derivatives conserve total mass across random states") {
    std::mt19937_64 rng(20240901);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> r0_draw(0.5, 8.0);
    std::uniform_real_distribution<double> rate(0.02, 0.6);
    const ModelFamily families[] = {ModelFamily::SIR, ModelFamily::SEIR,
                                    ModelFamily::SEI3RD};
    for (int trial = 0; trial < 1000; ++trial) {
        ModelSpec spec;
        spec.family = families[trial % 3];
        DiseaseParams params;
        params.r0 = r0_draw(rng);
        params.gamma = rate(rng);
        params.sigma = rate(rng);

        CompartmentState state;
        const int n = epi::compartment_count(spec.family);
        double total = 0.0;
        state.values.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            state.values[static_cast<std::size_t>(i)] = unit(rng);
            total += state.values[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < n; ++i) {
            state.values[static_cast<std::size_t>(i)] /= total;
        }

        const auto d = epi::derivatives(spec, params, state, unit(rng));
        double sum = 0.0;
        for (const double v : d) {
            sum += v;
        }
        CHECK(std::abs(sum) <= 1e-14);
    }
}

TEST_CASE("staged severity weights the force of infection") {
    ModelSpec spec;
    spec.family = ModelFamily::SEI3RD;
    DiseaseParams params;
    params.r0 = 2.0;
    params.gamma = 0.1; // beta = 0.2

    CompartmentState state;
    state.values = {0.9, 0.0, 0.04, 0.03, 0.03, 0.0, 0.0};
    const auto d = epi::derivatives(spec, params, state, 0.0);

    const double lambda = 0.2 * (0.6 * 0.04 + 0.3 * 0.03 + 0.1 * 0.03);
    CHECK(d[0] == doctest::Approx(-lambda * 0.9).epsilon(1e-12));

    // Deaths flow only out of the last infectious stage.
    CHECK(d[6] == doctest::Approx(params.stage.delta * 0.03).epsilon(1e-12));
}

TEST_CASE("infected fraction counts infectious compartments only") {
    const std::vector<double> seir = {0.7, 0.2, 0.06, 0.04};
    CHECK(epi::infected_fraction(ModelFamily::SEIR, seir) ==
          doctest::Approx(0.06)); // E excluded

    const std::vector<double> sei3rd = {0.7, 0.1, 0.08, 0.06, 0.02, 0.04, 0.0};
    CHECK(epi::infected_fraction(ModelFamily::SEI3RD, sei3rd) ==
          doctest::Approx(0.08 + 0.06 + 0.02));

    const std::vector<double> sir = {0.9, 0.07, 0.03};
    CHECK(epi::infected_fraction(ModelFamily::SIR, sir) ==
          doctest::Approx(0.07));
}

TEST_CASE("state validation checks sign and total mass") {
    CompartmentState state;
    state.values = {0.5, 0.4, 0.1};
    CHECK_NOTHROW(state.validate());
    state.values = {0.5, 0.6, -0.1};
    CHECK_THROWS_AS(state.validate(), epi::ValidationError);
    state.values = {0.5, 0.4, 0.2}; // sums to 1.1
    CHECK_THROWS_AS(state.validate(), epi::ValidationError);
}

} // TEST_SUITE
