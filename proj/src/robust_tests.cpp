#include "cismr/robust_tests.hpp"
#include "cismr/psd.hpp"
#include "cismr/rng.hpp"
#include "cismr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cismr {

const char* method_name(RobustMethod m) {
    switch (m) {
        case RobustMethod::AR: return "AR";
        case RobustMethod::LM: return "LM";
        case RobustMethod::CLR: return "CLR";
    }
    return "?";
}

STDecomposition st_decomposition(const MomentSystem& ms, double theta0) {
    const Vector g = ms.g(theta0);
    const Matrix omega_inv_root = psd::inv_sqrt(ms.omega(theta0));
    const Matrix omega_inv = omega_inv_root * omega_inv_root;
    const Matrix delta_g = theta0 * ms.omega_xx;

    STDecomposition d;
    d.s_bar = omega_inv_root * g;

    Matrix bracket = ms.omega_xx - delta_g * omega_inv * delta_g;
    bracket = 0.5 * (bracket + bracket.transpose()).eval();
    Matrix bracket_inv_root;
    try {
        bracket_inv_root = psd::inv_sqrt(bracket);
    } catch (const NumericError& e) {
        throw NumericError(std::string("st_decomposition: strength bracket matrix: ") + e.what());
    }
    d.t_bar = bracket_inv_root * (ms.big_g - delta_g * omega_inv * g);

    d.q_s = d.s_bar.squaredNorm();
    d.q_st = d.s_bar.dot(d.t_bar);
    d.q_t = d.t_bar.squaredNorm();
    return d;
}

TestResult ar_test(const MomentSystem& ms, double theta0) {
    const STDecomposition d = st_decomposition(ms, theta0);
    TestResult r;
    r.method = RobustMethod::AR;
    r.statistic = d.q_s;
    r.df = static_cast<double>(ms.k());
    r.p_value = stats::chi2_sf(r.statistic, r.df);
    return r;
}

TestResult lm_test(const MomentSystem& ms, double theta0) {
    const STDecomposition d = st_decomposition(ms, theta0);
    if (d.q_t <= 1e-12) {
        throw NumericError("lm_test: degenerate instrument strength (q_t ~ 0)");
    }
    TestResult r;
    r.method = RobustMethod::LM;
    r.statistic = d.q_st * d.q_st / d.q_t;
    r.df = 1.0;
    r.p_value = stats::chi2_sf(r.statistic, 1.0);
    return r;
}

double clr_statistic(double q_s, double q_st, double q_t) {
    const double disc = (q_s + q_t) * (q_s + q_t) - 4.0 * (q_s * q_t - q_st * q_st);
    if (disc < -1e-10) {
        std::ostringstream oss;
        oss << "clr_statistic: negative discriminant " << disc;
        throw NumericError(oss.str());
    }
    return 0.5 * (q_s - q_t + std::sqrt(std::max(disc, 0.0)));
}

ClrDraws make_clr_draws(Index k, long mc_draws, std::uint64_t seed) {
    if (k < 1) throw ValidationError("make_clr_draws: k must be positive");
    if (mc_draws < 1) throw ValidationError("make_clr_draws: mc_draws must be positive");
    ClrDraws draws;
    draws.chi1.resize(mc_draws);
    draws.chik1.assign(mc_draws, 0.0);
    Rng rng = Rng::substream(seed, 0x21a5u);
    for (long i = 0; i < mc_draws; ++i) {
        const double z = rng.normal();
        draws.chi1[i] = z * z;
        if (k > 1) draws.chik1[i] = rng.chi2(static_cast<double>(k - 1));
    }
    return draws;
}

double clr_p_value(double statistic, double q_t, const ClrDraws& draws) {
    const long n = static_cast<long>(draws.chi1.size());
    long exceed = 0;
    for (long i = 0; i < n; ++i) {
        const double a = draws.chi1[i] + draws.chik1[i] - q_t;
        const double clr_i = 0.5 * (a + std::sqrt(a * a + 4.0 * draws.chi1[i] * q_t));
        if (clr_i >= statistic) ++exceed;
    }
    return static_cast<double>(exceed) / static_cast<double>(n);
}

TestResult clr_test(const MomentSystem& ms, double theta0, long mc_draws, std::uint64_t seed) {
    const STDecomposition d = st_decomposition(ms, theta0);
    TestResult r;
    r.method = RobustMethod::CLR;
    r.statistic = clr_statistic(d.q_s, d.q_st, d.q_t);
    r.conditioning = d.q_t;
    if (ms.k() == 1) {
        // chi2_0 is identically zero and the statistic collapses to q_s
        r.p_value = stats::chi2_sf(d.q_s, 1.0);
        return r;
    }
    const ClrDraws draws = make_clr_draws(ms.k(), mc_draws, seed);
    r.p_value = clr_p_value(r.statistic, d.q_t, draws);
    r.mc_draws = mc_draws;
    r.mc_se = std::sqrt(r.p_value * (1.0 - r.p_value) / static_cast<double>(mc_draws));
    return r;
}

ConfidenceSet collect_intervals(const std::vector<double>& thetas,
                                const std::vector<bool>& rejected, double alpha, GridSpec grid) {
    ConfidenceSet cs;
    cs.alpha = alpha;
    cs.grid = grid;
    const size_t n = thetas.size();
    size_t i = 0;
    while (i < n) {
        if (rejected[i]) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < n && !rejected[j + 1]) ++j;
        cs.intervals.emplace_back(thetas[i], thetas[j]);
        i = j + 1;
    }
    cs.empty_set = cs.intervals.empty();
    cs.disjoint = cs.intervals.size() > 1;
    if (!cs.empty_set) {
        cs.unbounded_low = !rejected.front();
        cs.unbounded_high = !rejected.back();
    }
    return cs;
}

ConfidenceSet invert_test(const MomentSystem& ms, RobustMethod method, double alpha,
                          GridSpec grid, long mc_draws, std::uint64_t seed) {
    if (grid.n < 2) throw ValidationError("invert_test: grid needs at least 2 points");
    if (!(std::isfinite(grid.lo) && std::isfinite(grid.hi)) || !(grid.hi > grid.lo)) {
        throw ValidationError("invert_test: grid bounds must be finite and ordered");
    }
    std::vector<double> thetas(grid.n);
    const double step = (grid.hi - grid.lo) / (grid.n - 1);
    for (int i = 0; i < grid.n; ++i) thetas[i] = grid.lo + i * step;

    ClrDraws draws;
    if (method == RobustMethod::CLR && ms.k() > 1) {
        draws = make_clr_draws(ms.k(), mc_draws, seed);
    }

    std::vector<bool> rejected(grid.n, true);
    for (int i = 0; i < grid.n; ++i) {
        double p;
        try {
            switch (method) {
                case RobustMethod::AR: p = ar_test(ms, thetas[i]).p_value; break;
                case RobustMethod::LM: p = lm_test(ms, thetas[i]).p_value; break;
                case RobustMethod::CLR: {
                    const STDecomposition d = st_decomposition(ms, thetas[i]);
                    const double stat = clr_statistic(d.q_s, d.q_st, d.q_t);
                    p = (ms.k() == 1) ? stats::chi2_sf(d.q_s, 1.0)
                                      : clr_p_value(stat, d.q_t, draws);
                    break;
                }
                default: throw ValidationError("invert_test: unknown method");
            }
        } catch (const NumericError&) {
            rejected[i] = false; // cannot be rejected if the test cannot be computed
            continue;
        }
        rejected[i] = p < alpha;
    }
    return collect_intervals(thetas, rejected, alpha, grid);
}

} // namespace cismr
