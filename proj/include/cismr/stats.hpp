#pragma once

namespace cismr::stats {

double normal_cdf(double x);
double normal_quantile(double p);
double chi2_cdf(double x, double df);
double chi2_sf(double x, double df);

// Critical value of a two-sided level-delta normal test: Phi^{-1}(1 - delta/2).
double two_sided_normal_critical(double delta);

} // namespace cismr::stats
