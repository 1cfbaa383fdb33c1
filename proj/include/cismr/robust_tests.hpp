#pragma once

#include "cismr/moments.hpp"
#include "cismr/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace cismr {

/// Orthogonalized moment statistics at a hypothesized effect: s_bar carries
/// instrument validity, t_bar carries instrument strength, and the three
/// quadratic forms q_s, q_st, q_t feed every robust test statistic.
struct STDecomposition {
    Vector s_bar;
    Vector t_bar;
    double q_s = 0.0;
    double q_st = 0.0;
    double q_t = 0.0;
};

STDecomposition st_decomposition(const MomentSystem& ms, double theta0);

enum class RobustMethod { AR, LM, CLR };

const char* method_name(RobustMethod m);

struct TestResult {
    RobustMethod method = RobustMethod::AR;
    double statistic = 0.0;
    double p_value = 1.0;
    double df = 0.0;           // AR: k, LM: 1
    double conditioning = 0.0; // CLR: observed q_t
    long mc_draws = 0;         // CLR only
    double mc_se = 0.0;        // CLR only
};

TestResult ar_test(const MomentSystem& ms, double theta0);
TestResult lm_test(const MomentSystem& ms, double theta0);

/// Conditional likelihood ratio test. The p-value holds q_t fixed at its
/// observed value and is computed by Monte Carlo over independent
/// (chi2_1, chi2_{k-1}) pairs; for k = 1 it reduces to the chi2_1 tail of q_s.
TestResult clr_test(const MomentSystem& ms, double theta0, long mc_draws = 100000,
                    std::uint64_t seed = 20240901);

double clr_statistic(double q_s, double q_st, double q_t);

/// One pre-drawn set of CLR null draws, reused across a theta grid so interval
/// endpoints are free of Monte Carlo jitter.
struct ClrDraws {
    std::vector<double> chi1;
    std::vector<double> chik1; // zero-filled when k == 1
};

ClrDraws make_clr_draws(Index k, long mc_draws, std::uint64_t seed);
double clr_p_value(double statistic, double q_t, const ClrDraws& draws);

struct GridSpec {
    double lo = -1.0;
    double hi = 1.0;
    int n = 400;
};

struct ConfidenceSet {
    std::vector<std::pair<double, double>> intervals;
    bool empty_set = false;
    bool unbounded_low = false;
    bool unbounded_high = false;
    bool disjoint = false;
    double alpha = 0.05;
    GridSpec grid;
};

/// Collects maximal runs of non-rejected grid points into intervals.
ConfidenceSet invert_test(const MomentSystem& ms, RobustMethod method, double alpha,
                          GridSpec grid, long mc_draws = 100000,
                          std::uint64_t seed = 20240901);

/// Shared by test inversion here and in the selective module.
ConfidenceSet collect_intervals(const std::vector<double>& thetas,
                                const std::vector<bool>& rejected, double alpha, GridSpec grid);

} // namespace cismr
