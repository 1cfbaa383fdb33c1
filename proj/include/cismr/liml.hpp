#pragma once

#include "cismr/moments.hpp"
#include "cismr/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace cismr {

struct LimlFit {
    double theta_hat = 0.0;
    double variance = 0.0; // (G' omega(theta_hat)^-1 G)^-1
    double objective_at_min = 0.0;
    int n_grid = 0;
    bool converged = false;
    bool multimodal = false;
    std::vector<std::pair<double, double>> trace;
};

/// g(theta)' omega(theta)^-1 g(theta), evaluated through the floored inverse
/// square root so indefiniteness beyond tolerance is reported, not hidden.
double liml_objective(const MomentSystem& ms, double theta);

/// Analytic derivative of liml_objective, validated against central finite
/// differences.
double liml_gradient(const MomentSystem& ms, double theta);

/// Componentwise ratio bracket: +-(10 * max|W'beta_y / W'beta_x| + 1).
std::pair<double, double> auto_bracket(const MomentSystem& ms);

/// Grid scan followed by golden-section refinement. The objective can be
/// multimodal under weak instruments; competing grid-local minima within
/// 1.01x of the global value set the multimodal flag.
LimlFit fit_liml(const MomentSystem& ms,
                 std::optional<std::pair<double, double>> bracket = std::nullopt,
                 int grid_points = 201, bool keep_trace = false);

std::pair<double, double> wald_interval(const LimlFit& fit, double alpha);

} // namespace cismr
