#ifndef EPI_NELDER_MEAD_HPP
#define EPI_NELDER_MEAD_HPP

#include <functional>
#include <span>
#include <vector>

namespace epi {

struct NelderMeadOptions {
    int max_iterations = 2000;
    double f_tolerance = 1e-10; // simplex f-spread threshold
    // Also require the simplex itself to have collapsed. An f-spread test
    // alone declares victory on a simplex straddling the minimum of an even
    // function (equal f at both vertices, minimum in between).
    double x_tolerance = 1e-8;
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    bool converged = false; // both tolerance criteria met before the iteration cap
};

/// Derivative-free simplex minimization (Nelder-Mead). step gives the initial
/// simplex edge per coordinate. The objective may return +inf to mark
/// infeasible points.
NelderMeadResult nelder_mead_minimize(
    const std::function<double(std::span<const double>)>& objective,
    std::vector<double> x0, const std::vector<double>& step,
    const NelderMeadOptions& options = {});

} // namespace epi

#endif
