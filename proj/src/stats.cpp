#include "cismr/stats.hpp"
#include "cismr/types.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace cismr::stats {

namespace {
const boost::math::normal_distribution<double> kStdNormal{0.0, 1.0};
}

double normal_cdf(double x) { return boost::math::cdf(kStdNormal, x); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.5) return 0.0;
        throw ValidationError("normal_quantile: p must lie in (0, 1)");
    }
    return boost::math::quantile(kStdNormal, p);
}

double chi2_cdf(double x, double df) {
    if (df <= 0.0) throw ValidationError("chi2_cdf: df must be positive");
    if (x <= 0.0) return 0.0;
    return boost::math::cdf(boost::math::chi_squared_distribution<double>(df), x);
}

double chi2_sf(double x, double df) {
    if (df <= 0.0) throw ValidationError("chi2_sf: df must be positive");
    if (x <= 0.0) return 1.0;
    return boost::math::cdf(boost::math::complement(
        boost::math::chi_squared_distribution<double>(df), x));
}

double two_sided_normal_critical(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ValidationError("two_sided_normal_critical: delta must lie in (0, 1)");
    }
    return normal_quantile(1.0 - delta / 2.0);
}

} // namespace cismr::stats
