#pragma once

#include <vector>

#include "krs/invariant.hpp"

namespace krs {

struct SolitonOptions {
    double tol = 1e-10;
    int max_iter = 50;
    double fd_step = 1e-6;
    int max_halvings = 30;
    SeriesControl series{};
};

struct SolitonResult {
    std::vector<double> X_star;
    std::vector<double> coefficients;  ///< X_star in the basis used
    double residual = 0.0;             ///< max_j |F_{X*}(v_j)|
    int iterations = 0;
    bool converged = false;
    std::size_t basis_dim = 0;
    std::vector<double> residual_history;  ///< 2-norm after start and each accepted step
};

/// (F_{X(c)}(v_1), ..., F_{X(c)}(v_m)) with X(c) = sum_j c_j v_j.
std::vector<double> invariant_map(const HomogeneousPolynomial& P, std::span<const double> c,
                                  const std::vector<DiagonalField>& basis,
                                  const SeriesControl& ctl = {});

/// Damped Newton on invariant_map starting from c = 0, Jacobian by central
/// differences. An empty basis gives X* = 0, converged, 0 iterations. When
/// the iteration stalls the best iterate is returned with converged = false.
SolitonResult solve_soliton(const HomogeneousPolynomial& P, const std::vector<DiagonalField>& basis,
                            const SolitonOptions& opts = {});

SolitonResult solve_soliton(const HomogeneousPolynomial& P, const SolitonOptions& opts = {});

}  // namespace krs
