#pragma once

#include "cismr/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cismr {

struct SampleSizes {
    std::optional<double> n_x;
    std::optional<double> n_y;
    std::optional<double> n_z;
};

/// Two-sample summary statistics for one gene region: per-variant association
/// estimates with the exposure and outcome, their standard errors, and the
/// variant correlation matrix.
struct SummaryDataset {
    std::vector<std::string> variant_ids;
    Vector beta_x;
    Vector se_x;
    Vector beta_y;
    Vector se_y;
    Matrix rho;
    SampleSizes meta;

    Index size() const { return beta_x.size(); }
};

struct CovariancePair {
    Matrix sigma_xx;
    Matrix sigma_yy;
};

enum class TableFormat { csv, tsv };

/// Validates and normalizes: checks lengths, positive standard errors and
/// unique IDs; symmetrizes rho (asymmetry above 1e-10 is an error), clamps
/// entries into [-1, 1] (violations above 1e-6 are errors) and pins the
/// diagonal to exactly 1.
SummaryDataset make_dataset(std::vector<std::string> variant_ids, Vector beta_x, Vector se_x,
                            Vector beta_y, Vector se_y, Matrix rho, SampleSizes meta = {});

/// Reads the association table (columns variant_id, beta_x, se_x, beta_y,
/// se_y) and a square LD matrix. An LD header row of variant IDs triggers
/// reordering to the association file's order.
SummaryDataset load_dataset(const std::string& assoc_path, TableFormat format,
                            const std::string& ld_path);

struct EffectiveRho {
    Matrix rho;
    bool repaired = false;
    double min_eigenvalue_before = 0.0;
};

/// The correlation matrix downstream code should use: the dataset's rho, or a
/// nearest-correlation repair of it when its spectrum dips below
/// -1e-8 * max eigenvalue.
EffectiveRho effective_correlation(const SummaryDataset& ds);

/// Sigma_X = rho o se_x se_x', Sigma_Y analogous, rebuilt from the repaired
/// rho when repair was needed. Diagonals equal the squared standard errors
/// exactly.
CovariancePair build_covariances(const SummaryDataset& ds);

} // namespace cismr
