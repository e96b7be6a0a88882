#pragma once

#include <string>
#include <vector>

#include "krs/hfuncs.hpp"
#include "krs/poly.hpp"

namespace krs {

/// F_X(v) plus every intermediate that went into it.
struct InvariantReport {
    Complex value;
    Complex kappa;   ///< weight of v on F
    Complex lambda;  ///< weight of X on F
    Complex phi;
    Complex sigma;
    Complex dsigma_v;
    Complex c_X;
    int terms_used = 0;
    double tail_bound = 0.0;
    std::vector<std::string> warnings;
};

inline constexpr double kSigmaZeroTol = 1e-12;

/// sigma = (-lambda s / n + d) phi + (d / n) euler.
Complex sigma_from(const PhiBundle& b, Complex lambda, int n, int d);

/// Derivative of sigma along X -> X + t v, lambda -> lambda + t kappa.
Complex sigma_dirderiv_from(const PhiBundle& b, Complex kappa, Complex lambda, int n, int d);

Complex sigma(const DiagonalField& X, Complex lambda, int n, int d, const SeriesControl& ctl = {});

Complex sigma_dirderiv(const DiagonalField& X, const DiagonalField& v, Complex kappa,
                       Complex lambda, int n, int d, const SeriesControl& ctl = {});

/// F_X(v) = -s^{n-1} d (kappa + D_v sigma / sigma), s = n - d + 1.
/// NotTangent if v or X is not tangent to F = 0; SigmaZero if
/// |sigma| <= 1e-12 max(1, d).
InvariantReport tian_zhu_invariant(const HomogeneousPolynomial& P, const DiagonalField& v,
                                   const DiagonalField& X, const SeriesControl& ctl = {},
                                   double tangency_tol = kDefaultTangencyTol);

/// Futaki invariant -s^{n-1} (n+1)(d-1) kappa / n.
Complex futaki(const HomogeneousPolynomial& P, const DiagonalField& v,
               double tangency_tol = kDefaultTangencyTol);

/// c_X = log(d / sigma(X)), principal branch.
Complex normalization_constant(const DiagonalField& X, Complex lambda, int n, int d,
                               const SeriesControl& ctl = {});

}  // namespace krs
