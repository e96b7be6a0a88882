#include "krs/soliton.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

#include "krs/error.hpp"

namespace krs {
namespace {

constexpr double kImagTol = 1e-10;

DiagonalField combine(std::span<const double> c, const std::vector<DiagonalField>& basis,
                      std::size_t width) {
    ComplexVector x(width, 0.0);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        for (std::size_t i = 0; i < width; ++i) x[i] += c[j] * basis[j][i].real();
    }
    return normalize_field(x).field;
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Trial evaluations far from the start may hit sigma = 0 or a series budget;
// those points are treated as rejected steps.
std::optional<std::vector<double>> try_map(const HomogeneousPolynomial& P,
                                           const std::vector<double>& c,
                                           const std::vector<DiagonalField>& basis,
                                           const SeriesControl& ctl) {
    try {
        auto g = invariant_map(P, c, basis, ctl);
        for (double x : g) {
            if (!std::isfinite(x)) return std::nullopt;
        }
        return g;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SigmaZero || e.code() == ErrorCode::BudgetExceeded) {
            return std::nullopt;
        }
        throw;
    }
}

}  // namespace

std::vector<double> invariant_map(const HomogeneousPolynomial& P, std::span<const double> c,
                                  const std::vector<DiagonalField>& basis,
                                  const SeriesControl& ctl) {
    if (c.size() != basis.size()) {
        throw Error(ErrorCode::MalformedInput, "coefficient count differs from basis size");
    }
    std::vector<double> out;
    if (basis.empty()) return out;
    const DiagonalField X = combine(c, basis, P.num_vars());
    out.reserve(basis.size());
    for (const auto& v : basis) {
        const Complex value = tian_zhu_invariant(P, v, X, ctl).value;
        if (std::abs(value.imag()) > kImagTol * std::max(1.0, std::abs(value.real()))) {
            throw std::logic_error("invariant of a real field has imaginary part " +
                                   std::to_string(value.imag()));
        }
        out.push_back(value.real());
    }
    return out;
}

SolitonResult solve_soliton(const HomogeneousPolynomial& P, const std::vector<DiagonalField>& basis,
                            const SolitonOptions& opts) {
    const std::size_t m = basis.size();
    SolitonResult result;
    result.basis_dim = m;
    result.X_star.assign(P.num_vars(), 0.0);
    if (m == 0) {
        result.converged = true;
        return result;
    }

    std::vector<double> c(m, 0.0);
    std::vector<double> g = invariant_map(P, c, basis, opts.series);
    double norm = to_eigen(g).norm();
    result.residual_history.push_back(norm);

    int iter = 0;
    while (max_abs(g) > opts.tol && iter < opts.max_iter) {
        Eigen::MatrixXd J(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        bool jacobian_ok = true;
        for (std::size_t j = 0; j < m && jacobian_ok; ++j) {
            auto cp = c;
            auto cm = c;
            cp[j] += opts.fd_step;
            cm[j] -= opts.fd_step;
            auto gp = try_map(P, cp, basis, opts.series);
            auto gm = try_map(P, cm, basis, opts.series);
            if (!gp || !gm) {
                jacobian_ok = false;
                break;
            }
            J.col(static_cast<Eigen::Index>(j)) =
                (to_eigen(*gp) - to_eigen(*gm)) / (2.0 * opts.fd_step);
        }
        if (!jacobian_ok) break;

        const Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(-to_eigen(g));
        if (!step.allFinite()) break;

        bool accepted = false;
        double t = 1.0;
        for (int h = 0; h <= opts.max_halvings; ++h, t *= 0.5) {
            std::vector<double> trial(c);
            for (std::size_t j = 0; j < m; ++j) trial[j] += t * step(static_cast<Eigen::Index>(j));
            auto gt = try_map(P, trial, basis, opts.series);
            if (!gt) continue;
            const double trial_norm = to_eigen(*gt).norm();
            if (trial_norm < norm) {
                c = std::move(trial);
                g = std::move(*gt);
                norm = trial_norm;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        ++iter;
        result.residual_history.push_back(norm);
    }

    result.iterations = iter;
    result.coefficients = c;
    result.residual = max_abs(g);
    result.converged = result.residual <= opts.tol;
    const DiagonalField X = combine(c, basis, P.num_vars());
    for (std::size_t i = 0; i < X.size(); ++i) result.X_star[i] = X[i].real();
    return result;
}

SolitonResult solve_soliton(const HomogeneousPolynomial& P, const SolitonOptions& opts) {
    return solve_soliton(P, tangent_field_basis(P), opts);
}

}  // namespace krs
