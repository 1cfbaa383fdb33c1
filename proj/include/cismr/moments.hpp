#pragma once

#include "cismr/factor.hpp"
#include "cismr/summary_data.hpp"
#include "cismr/types.hpp"

#include <string>
#include <vector>

namespace cismr {

enum class InstrumentKind { factor, variant_subset };

/// A p x k linear map from variants to instruments: estimated factor loadings
/// or identity columns for a pruned variant subset.
struct InstrumentTransform {
    Matrix w;
    InstrumentKind kind = InstrumentKind::factor;
    std::vector<std::string> labels;
};

InstrumentTransform factor_instruments(const FactorBasis& fb);

/// Projected moment ingredients shared by all estimators and tests.
/// g(theta) = g0 - theta * g1 and omega(theta) = omega_yy + theta^2 * omega_xx.
struct MomentSystem {
    InstrumentTransform transform;
    Vector g0;       // W' beta_y
    Vector g1;       // W' beta_x
    Vector big_g;    // -W' beta_x
    Matrix omega_xx; // W' Sigma_X W
    Matrix omega_yy; // W' Sigma_Y W

    Index k() const { return g0.size(); }
    Vector g(double theta) const { return g0 - theta * g1; }
    Matrix omega(double theta) const { return omega_yy + theta * theta * omega_xx; }
};

MomentSystem build_moments(const SummaryDataset& ds, const CovariancePair& cov,
                           const InstrumentTransform& t);

inline Vector g_of_theta(const MomentSystem& ms, double theta) { return ms.g(theta); }
inline Matrix omega_of_theta(const MomentSystem& ms, double theta) { return ms.omega(theta); }

} // namespace cismr
