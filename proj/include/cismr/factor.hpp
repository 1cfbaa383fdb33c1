#pragma once

#include "cismr/types.hpp"

namespace cismr {

/// Factor loadings estimated from the variant correlation matrix: sqrt(p)
/// times the leading eigenvectors, re-scaled so that loadings'loadings / p is
/// the identity.
struct FactorBasis {
    Matrix loadings;    // p x r
    int r = 0;
    Vector eigenvalues; // full spectrum of rho, descending
    Vector cum_share;   // prefix sums of eigenvalues / p
};

FactorBasis estimate_loadings(const Matrix& rho, int r);

struct ScreeResult {
    Vector eigenvalues;
    Vector cum_share;
};

ScreeResult scree(const Matrix& rho);

enum class RankPolicy { gap, ratio, share };

/// Heuristic factor count from a descending spectrum. gap: largest eigenvalue
/// drop; ratio: largest consecutive ratio; share: smallest k whose cumulative
/// share reaches the threshold (capped at k_max). Ties go to the smallest k.
int suggest_rank(const Vector& eigenvalues, RankPolicy policy, int k_max,
                 double share_threshold = 0.96);

} // namespace cismr
