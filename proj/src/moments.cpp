#include "cismr/moments.hpp"

#include <Eigen/SVD>

namespace cismr {

InstrumentTransform factor_instruments(const FactorBasis& fb) {
    InstrumentTransform t;
    t.w = fb.loadings;
    t.kind = InstrumentKind::factor;
    t.labels.reserve(fb.r);
    for (int j = 1; j <= fb.r; ++j) t.labels.push_back("factor_" + std::to_string(j));
    return t;
}

MomentSystem build_moments(const SummaryDataset& ds, const CovariancePair& cov,
                           const InstrumentTransform& t) {
    const Index p = ds.size();
    const Index k = t.w.cols();
    if (k < 1) throw ValidationError("build_moments: transform has no columns");
    if (k > p) throw ValidationError("build_moments: more instruments than variants");
    if (t.w.rows() != p || cov.sigma_xx.rows() != p || cov.sigma_yy.rows() != p) {
        throw ValidationError("build_moments: dimension mismatch between dataset, covariances "
                              "and transform");
    }

    Eigen::JacobiSVD<Matrix> svd(t.w);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (!(smin > 1e-10 * smax)) {
        throw ValidationError("build_moments: instrument transform is rank deficient");
    }

    MomentSystem ms;
    ms.transform = t;
    ms.g0 = t.w.transpose() * ds.beta_y;
    ms.g1 = t.w.transpose() * ds.beta_x;
    ms.big_g = -ms.g1;
    ms.omega_xx = t.w.transpose() * cov.sigma_xx * t.w;
    ms.omega_yy = t.w.transpose() * cov.sigma_yy * t.w;
    ms.omega_xx = 0.5 * (ms.omega_xx + ms.omega_xx.transpose()).eval();
    ms.omega_yy = 0.5 * (ms.omega_yy + ms.omega_yy.transpose()).eval();
    return ms;
}

} // namespace cismr
