#include "cismr/summary_data.hpp"
#include "cismr/psd.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace cismr {

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream iss(line);
    while (std::getline(iss, cell, delim)) {
        if (!cell.empty() && cell.back() == '\r') cell.pop_back();
        out.push_back(cell);
    }
    return out;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    try {
        size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size() && std::isfinite(out);
    } catch (const std::exception&) {
        return false;
    }
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

Matrix covariance_from(const Matrix& rho, const Vector& se) {
    Matrix sigma = rho.array() * (se * se.transpose()).array();
    sigma.diagonal() = se.array().square();
    return sigma;
}

} // namespace

SummaryDataset make_dataset(std::vector<std::string> variant_ids, Vector beta_x, Vector se_x,
                            Vector beta_y, Vector se_y, Matrix rho, SampleSizes meta) {
    const Index p = beta_x.size();
    if (p < 1) throw ValidationError("dataset must contain at least one variant");
    if (static_cast<Index>(variant_ids.size()) != p || se_x.size() != p || beta_y.size() != p ||
        se_y.size() != p || rho.rows() != p || rho.cols() != p) {
        std::ostringstream oss;
        oss << "dimension mismatch: " << variant_ids.size() << " ids, beta_x " << beta_x.size()
            << ", se_x " << se_x.size() << ", beta_y " << beta_y.size() << ", se_y " << se_y.size()
            << ", rho " << rho.rows() << "x" << rho.cols();
        throw ValidationError(oss.str());
    }
    {
        std::unordered_set<std::string> seen;
        for (const auto& id : variant_ids) {
            if (!seen.insert(id).second) throw ValidationError("duplicate variant ID: " + id);
        }
    }
    for (Index j = 0; j < p; ++j) {
        if (!std::isfinite(beta_x(j)) || !std::isfinite(beta_y(j))) {
            throw ValidationError("non-finite association estimate at variant " +
                                  std::to_string(j + 1));
        }
        if (!(se_x(j) > 0.0) || !std::isfinite(se_x(j)) || !(se_y(j) > 0.0) ||
            !std::isfinite(se_y(j))) {
            throw ValidationError("non-positive standard error at variant " +
                                  std::to_string(j + 1));
        }
    }
    if (!rho.allFinite()) throw ValidationError("non-finite entry in LD matrix");
    const double asym = (rho - rho.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10) {
        std::ostringstream oss;
        oss << "LD matrix asymmetric beyond tolerance (max |rho - rho'| = " << asym << ")";
        throw ValidationError(oss.str());
    }
    rho = 0.5 * (rho + rho.transpose()).eval();
    const double range_violation = (rho.cwiseAbs().array() - 1.0).maxCoeff();
    if (range_violation > 1e-6) {
        std::ostringstream oss;
        oss << "LD entry outside [-1, 1] by " << range_violation;
        throw ValidationError(oss.str());
    }
    rho = rho.cwiseMax(-1.0).cwiseMin(1.0);
    if ((rho.diagonal().array() - 1.0).abs().maxCoeff() > 1e-8) {
        throw ValidationError("LD matrix diagonal is not unit within 1e-8");
    }
    rho.diagonal().setOnes();

    SummaryDataset ds;
    ds.variant_ids = std::move(variant_ids);
    ds.beta_x = std::move(beta_x);
    ds.se_x = std::move(se_x);
    ds.beta_y = std::move(beta_y);
    ds.se_y = std::move(se_y);
    ds.rho = std::move(rho);
    ds.meta = meta;
    return ds;
}

SummaryDataset load_dataset(const std::string& assoc_path, TableFormat format,
                            const std::string& ld_path) {
    const char delim = (format == TableFormat::csv) ? ',' : '\t';

    auto assoc_lines = read_lines(assoc_path);
    if (assoc_lines.size() < 2) throw ValidationError("association file has no data rows");
    auto header = split_line(assoc_lines[0], delim);
    std::unordered_map<std::string, size_t> col;
    for (size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
    for (const char* name : {"variant_id", "beta_x", "se_x", "beta_y", "se_y"}) {
        if (!col.count(name)) {
            throw ValidationError(std::string("association file missing column: ") + name);
        }
    }

    std::vector<std::string> ids;
    std::vector<double> bx, sx, by, sy;
    for (size_t row = 1; row < assoc_lines.size(); ++row) {
        auto cells = split_line(assoc_lines[row], delim);
        if (cells.size() < header.size()) {
            throw ValidationError("association file row " + std::to_string(row) +
                                  " has too few columns");
        }
        ids.push_back(cells[col["variant_id"]]);
        double v;
        for (auto [name, dst] : std::initializer_list<std::pair<const char*, std::vector<double>*>>{
                 {"beta_x", &bx}, {"se_x", &sx}, {"beta_y", &by}, {"se_y", &sy}}) {
            const std::string& cell = cells[col[name]];
            if (!parse_double(cell, v)) {
                throw ValidationError("non-numeric cell '" + cell + "' in column " + name +
                                      " at row " + std::to_string(row));
            }
            dst->push_back(v);
        }
        if (sx.back() <= 0.0 || sy.back() <= 0.0) {
            throw ValidationError("non-positive standard error at variant " + std::to_string(row));
        }
    }
    const Index p = static_cast<Index>(ids.size());

    auto ld_lines = read_lines(ld_path);
    if (ld_lines.empty()) throw ValidationError("LD file is empty");
    auto first = split_line(ld_lines[0], delim);
    double probe;
    const bool has_header = !parse_double(first[0], probe);

    std::vector<std::string> ld_ids;
    size_t data_start = 0;
    if (has_header) {
        ld_ids = first;
        data_start = 1;
    }
    const size_t n_rows = ld_lines.size() - data_start;
    if (static_cast<Index>(n_rows) != p) {
        throw ValidationError("LD matrix has " + std::to_string(n_rows) + " rows, expected " +
                              std::to_string(p));
    }
    Matrix rho(p, p);
    for (size_t i = 0; i < n_rows; ++i) {
        auto cells = split_line(ld_lines[data_start + i], delim);
        // tolerate a leading row-label column when a header is present
        if (has_header && static_cast<Index>(cells.size()) == p + 1) {
            cells.erase(cells.begin());
        }
        if (static_cast<Index>(cells.size()) != p) {
            throw ValidationError("LD matrix row " + std::to_string(i + 1) + " has " +
                                  std::to_string(cells.size()) + " columns, expected " +
                                  std::to_string(p));
        }
        for (Index j = 0; j < p; ++j) {
            double v;
            if (!parse_double(cells[j], v)) {
                throw ValidationError("non-numeric cell '" + cells[j] + "' in LD matrix row " +
                                      std::to_string(i + 1));
            }
            rho(static_cast<Index>(i), j) = v;
        }
    }

    if (has_header) {
        if (static_cast<Index>(ld_ids.size()) != p) {
            throw ValidationError("LD header has " + std::to_string(ld_ids.size()) +
                                  " IDs, expected " + std::to_string(p));
        }
        std::unordered_map<std::string, Index> pos;
        for (Index i = 0; i < p; ++i) pos[ld_ids[i]] = i;
        Eigen::VectorXi perm(p);
        for (Index i = 0; i < p; ++i) {
            auto it = pos.find(ids[i]);
            if (it == pos.end()) {
                throw ValidationError("variant " + ids[i] + " missing from LD header");
            }
            perm(i) = static_cast<int>(it->second);
        }
        Matrix reordered(p, p);
        for (Index i = 0; i < p; ++i)
            for (Index j = 0; j < p; ++j) reordered(i, j) = rho(perm(i), perm(j));
        rho = reordered;
    }

    return make_dataset(std::move(ids), Eigen::Map<Vector>(bx.data(), p),
                        Eigen::Map<Vector>(sx.data(), p), Eigen::Map<Vector>(by.data(), p),
                        Eigen::Map<Vector>(sy.data(), p), std::move(rho));
}

EffectiveRho effective_correlation(const SummaryDataset& ds) {
    psd::EigenSystem es = psd::sym_eigen(ds.rho);
    EffectiveRho out;
    out.min_eigenvalue_before = es.values(es.values.size() - 1);
    const double max_ev = es.values(0);
    if (out.min_eigenvalue_before >= -1e-8 * max_ev) {
        out.rho = ds.rho;
        return out;
    }
    out.rho = psd::nearest_correlation(ds.rho);
    out.repaired = true;
    return out;
}

CovariancePair build_covariances(const SummaryDataset& ds) {
    EffectiveRho eff = effective_correlation(ds);
    CovariancePair cov;
    cov.sigma_xx = covariance_from(eff.rho, ds.se_x);
    cov.sigma_yy = covariance_from(eff.rho, ds.se_y);
    return cov;
}

} // namespace cismr
