#include "cismr/psd.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace cismr::psd {

namespace {

void require_symmetric(const Matrix& m, double tol, const char* who) {
    if (m.rows() != m.cols()) {
        throw ValidationError(std::string(who) + ": matrix is not square");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
        throw ValidationError(std::string(who) + ": matrix is not symmetric");
    }
}

void fix_signs(Matrix& vectors) {
    for (Index j = 0; j < vectors.cols(); ++j) {
        Index imax = 0;
        double vmax = 0.0;
        for (Index i = 0; i < vectors.rows(); ++i) {
            const double a = std::abs(vectors(i, j));
            if (a > vmax) {
                vmax = a;
                imax = i;
            }
        }
        if (vectors(imax, j) < 0.0) vectors.col(j) = -vectors.col(j);
    }
}

} // namespace

EigenSystem sym_eigen(const Matrix& m) {
    require_symmetric(m, 1e-8, "sym_eigen");
    const Matrix sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericError("sym_eigen: eigen solver did not converge");
    }
    const Index p = sym.rows();
    EigenSystem out;
    out.values = solver.eigenvalues().reverse();
    out.vectors.resize(p, p);
    for (Index j = 0; j < p; ++j) out.vectors.col(j) = solver.eigenvectors().col(p - 1 - j);
    fix_signs(out.vectors);
    return out;
}

Matrix inv_sqrt(const Matrix& m, double rel_floor, InvSqrtDiag* diag) {
    EigenSystem es = sym_eigen(m);
    const double max_ev = es.values(0);
    if (max_ev <= 0.0) throw NumericError("inv_sqrt: matrix is zero or negative definite");
    const double min_ev = es.values(es.values.size() - 1);
    if (min_ev < -rel_floor * max_ev) {
        std::ostringstream oss;
        oss << "inv_sqrt: matrix indefinite beyond tolerance (min eigenvalue " << min_ev
            << ", max " << max_ev << ")";
        throw NumericError(oss.str());
    }
    const double floor = rel_floor * max_ev;
    Vector inv_roots(es.values.size());
    int floored = 0;
    for (Index i = 0; i < es.values.size(); ++i) {
        double ev = es.values(i);
        if (ev < floor) {
            ev = floor;
            ++floored;
        }
        inv_roots(i) = 1.0 / std::sqrt(ev);
    }
    if (diag) {
        diag->floored = floored;
        diag->floor = floor;
    }
    Matrix out = es.vectors * inv_roots.asDiagonal() * es.vectors.transpose();
    return 0.5 * (out + out.transpose());
}

Matrix sqrt_psd(const Matrix& m, double rel_floor) {
    EigenSystem es = sym_eigen(m);
    const double max_ev = es.values(0);
    if (max_ev < 0.0) throw NumericError("sqrt_psd: matrix is negative definite");
    const double min_ev = es.values(es.values.size() - 1);
    if (max_ev > 0.0 && min_ev < -rel_floor * max_ev) {
        std::ostringstream oss;
        oss << "sqrt_psd: matrix indefinite beyond tolerance (min eigenvalue " << min_ev << ")";
        throw NumericError(oss.str());
    }
    Vector roots(es.values.size());
    for (Index i = 0; i < es.values.size(); ++i) roots(i) = std::sqrt(std::max(es.values(i), 0.0));
    Matrix out = es.vectors * roots.asDiagonal() * es.vectors.transpose();
    return 0.5 * (out + out.transpose());
}

Matrix nearest_correlation(const Matrix& m, double tol, int max_iter) {
    require_symmetric(m, 1e-8, "nearest_correlation");
    const Index p = m.rows();
    if ((m.diagonal().array() - 1.0).abs().maxCoeff() > 1e-6) {
        throw ValidationError("nearest_correlation: input diagonal is not unit within 1e-6");
    }

    auto finish = [p](Matrix x) {
        x = 0.5 * (x + x.transpose());
        x = x.cwiseMax(-1.0).cwiseMin(1.0);
        x.diagonal().setOnes();
        return x;
    };

    Matrix x = 0.5 * (m + m.transpose());
    x.diagonal().setOnes();
    for (int it = 0; it < max_iter; ++it) {
        EigenSystem es = sym_eigen(x);
        const double min_ev = es.values(p - 1);
        const bool diag_ok = (x.diagonal().array() - 1.0).abs().maxCoeff() <= tol;
        if (min_ev >= -tol && diag_ok) return finish(x);

        // project onto the PSD cone, then restore the unit diagonal
        Vector clipped = es.values.cwiseMax(0.0);
        x = es.vectors * clipped.asDiagonal() * es.vectors.transpose();
        x = 0.5 * (x + x.transpose());
        x.diagonal().setOnes();
    }
    EigenSystem es = sym_eigen(x);
    if (es.values(p - 1) >= -tol) return finish(x);
    std::ostringstream oss;
    oss << "nearest_correlation: no PSD iterate within " << max_iter
        << " iterations (achieved min eigenvalue " << es.values(p - 1) << ")";
    throw NumericError(oss.str());
}

} // namespace cismr::psd
