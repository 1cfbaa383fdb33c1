#include "cismr/factor.hpp"
#include "cismr/psd.hpp"

#include <cmath>
#include <sstream>

namespace cismr {

FactorBasis estimate_loadings(const Matrix& rho, int r) {
    const Index p = rho.rows();
    if (r < 1 || r > p) {
        throw ValidationError("estimate_loadings: r must satisfy 1 <= r <= p, got r = " +
                              std::to_string(r) + " with p = " + std::to_string(p));
    }
    psd::EigenSystem es = psd::sym_eigen(rho);

    const double root_p = std::sqrt(static_cast<double>(p));
    Matrix lambda_bar = root_p * es.vectors.leftCols(r);
    Matrix norm = lambda_bar.transpose() * lambda_bar / static_cast<double>(p);
    Matrix loadings = lambda_bar * psd::inv_sqrt(norm);

    // eigenvectors are orthonormal, so the re-scaling is a no-op up to roundoff
    const double drift = (loadings - lambda_bar).cwiseAbs().maxCoeff() / root_p;
    if (drift > 1e-10) {
        std::ostringstream oss;
        oss << "estimate_loadings: re-scaled loadings drifted from raw eigenvectors by " << drift;
        throw NumericError(oss.str());
    }

    FactorBasis fb;
    fb.loadings = std::move(loadings);
    fb.r = r;
    fb.eigenvalues = es.values;
    fb.cum_share.resize(p);
    double acc = 0.0;
    for (Index i = 0; i < p; ++i) {
        acc += es.values(i);
        fb.cum_share(i) = acc / static_cast<double>(p);
    }
    return fb;
}

ScreeResult scree(const Matrix& rho) {
    const Index p = rho.rows();
    psd::EigenSystem es = psd::sym_eigen(rho);
    const double trace_gap = std::abs(es.values.sum() - static_cast<double>(p));
    if (trace_gap > 1e-6 * static_cast<double>(p)) {
        std::ostringstream oss;
        oss << "scree: eigenvalue sum deviates from p by " << trace_gap;
        throw NumericError(oss.str());
    }
    ScreeResult out;
    out.eigenvalues = es.values;
    out.cum_share.resize(p);
    double acc = 0.0;
    for (Index i = 0; i < p; ++i) {
        acc += es.values(i);
        out.cum_share(i) = acc / static_cast<double>(p);
    }
    return out;
}

int suggest_rank(const Vector& eigenvalues, RankPolicy policy, int k_max,
                 double share_threshold) {
    const Index p = eigenvalues.size();
    if (p == 0) throw ValidationError("suggest_rank: empty spectrum");
    if (k_max < 1 || k_max >= p) {
        throw ValidationError("suggest_rank: k_max must satisfy 1 <= k_max < p");
    }
    switch (policy) {
        case RankPolicy::gap: {
            int best_k = 1;
            double best = -1.0;
            for (int k = 1; k <= k_max; ++k) {
                const double drop = eigenvalues(k - 1) - eigenvalues(k);
                if (drop > best) {
                    best = drop;
                    best_k = k;
                }
            }
            return best_k;
        }
        case RankPolicy::ratio: {
            int best_k = 1;
            double best = -1.0;
            for (int k = 1; k <= k_max; ++k) {
                const double denom = eigenvalues(k);
                const double ratio =
                    (denom > 0.0) ? eigenvalues(k - 1) / denom
                                  : std::numeric_limits<double>::infinity();
                if (ratio > best) {
                    best = ratio;
                    best_k = k;
                }
            }
            return best_k;
        }
        case RankPolicy::share: {
            const double total = static_cast<double>(p);
            double acc = 0.0;
            for (int k = 1; k <= k_max; ++k) {
                acc += eigenvalues(k - 1);
                if (acc / total >= share_threshold) return k;
            }
            return k_max;
        }
    }
    throw ValidationError("suggest_rank: unknown policy");
}

} // namespace cismr
