#include "cismr/liml.hpp"
#include "cismr/psd.hpp"
#include "cismr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cismr {

namespace {

double quadratic_form(const MomentSystem& ms, double theta, Matrix* omega_inv = nullptr) {
    const Matrix root = psd::inv_sqrt(ms.omega(theta));
    if (omega_inv) *omega_inv = root * root;
    const Vector s = root * ms.g(theta);
    return s.squaredNorm();
}

struct GoldenResult {
    double x;
    double fx;
    bool converged;
};

template <typename F>
GoldenResult golden_section(F f, double lo, double hi, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    int guard = 200;
    while ((b - a) > tol && guard-- > 0) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x), (b - a) <= tol};
}

} // namespace

double liml_objective(const MomentSystem& ms, double theta) {
    return quadratic_form(ms, theta);
}

double liml_gradient(const MomentSystem& ms, double theta) {
    Matrix omega_inv;
    quadratic_form(ms, theta, &omega_inv);
    const Vector g = ms.g(theta);
    const Vector w = omega_inv * g;
    return 2.0 * ms.big_g.dot(w) - 2.0 * theta * w.dot(ms.omega_xx * w);
}

std::pair<double, double> auto_bracket(const MomentSystem& ms) {
    double max_ratio = 0.0;
    bool any = false;
    const double scale = std::max(ms.g1.cwiseAbs().maxCoeff(), 1e-300);
    for (Index j = 0; j < ms.k(); ++j) {
        if (std::abs(ms.g1(j)) > 1e-12 * scale) {
            max_ratio = std::max(max_ratio, std::abs(ms.g0(j) / ms.g1(j)));
            any = true;
        }
    }
    const double half = any ? 10.0 * max_ratio + 1.0 : 11.0;
    return {-half, half};
}

LimlFit fit_liml(const MomentSystem& ms, std::optional<std::pair<double, double>> bracket,
                 int grid_points, bool keep_trace) {
    if (grid_points < 3) throw ValidationError("fit_liml: grid_points must be at least 3");
    auto [lo, hi] = bracket ? *bracket : auto_bracket(ms);
    if (lo > hi) std::swap(lo, hi);
    if (!(hi > lo)) throw ValidationError("fit_liml: degenerate bracket");

    LimlFit fit;
    fit.n_grid = grid_points;
    const double step = (hi - lo) / (grid_points - 1);
    std::vector<double> xs(grid_points), fs(grid_points);
    Index best = -1;
    for (int i = 0; i < grid_points; ++i) {
        xs[i] = lo + i * step;
        double v;
        try {
            v = liml_objective(ms, xs[i]);
        } catch (const NumericError&) {
            v = std::numeric_limits<double>::quiet_NaN();
        }
        fs[i] = v;
        if (std::isfinite(v) && (best < 0 || v < fs[best])) best = i;
        if (keep_trace) fit.trace.emplace_back(xs[i], v);
    }
    if (best < 0) throw NumericError("fit_liml: objective non-finite over entire bracket");

    const double ref_lo = xs[std::max<Index>(0, best - 1)];
    const double ref_hi = xs[std::min<Index>(grid_points - 1, best + 1)];
    auto obj = [&](double t) {
        try {
            return liml_objective(ms, t);
        } catch (const NumericError&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    GoldenResult gr = golden_section(obj, ref_lo, ref_hi, 1e-9);
    fit.theta_hat = gr.x;
    fit.objective_at_min = gr.fx;
    fit.converged = gr.converged && std::isfinite(gr.fx);

    // competing grid-local minima (plateaus collapsed to one)
    const double inf = std::numeric_limits<double>::infinity();
    auto at = [&](int i) {
        return (i >= 0 && i < grid_points && std::isfinite(fs[i])) ? fs[i] : inf;
    };
    int modes = 0;
    for (int i = 0; i < grid_points;) {
        if (!std::isfinite(fs[i])) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < grid_points && fs[j + 1] == fs[i]) ++j;
        if (fs[i] <= at(i - 1) && fs[i] <= at(j + 1) &&
            fs[i] <= 1.01 * fit.objective_at_min) {
            ++modes;
        }
        i = j + 1;
    }
    fit.multimodal = modes > 1;

    const Matrix omega_inv_root = psd::inv_sqrt(ms.omega(fit.theta_hat));
    const double info = (omega_inv_root * ms.big_g).squaredNorm();
    fit.variance = (info > 0.0) ? 1.0 / info : std::numeric_limits<double>::infinity();
    return fit;
}

std::pair<double, double> wald_interval(const LimlFit& fit, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ValidationError("wald_interval: alpha must lie in (0, 1]");
    }
    if (alpha == 1.0) return {fit.theta_hat, fit.theta_hat};
    const double z = stats::normal_quantile(1.0 - alpha / 2.0);
    const double half = z * std::sqrt(fit.variance);
    return {fit.theta_hat - half, fit.theta_hat + half};
}

} // namespace cismr
