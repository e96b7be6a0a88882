#pragma once

#include <span>

#include "krs/poly.hpp"

namespace krs {

/// Truncation policy for the weighted h_k series.
struct SeriesControl {
    double epsilon = 1e-12;  ///< absolute tail tolerance
    int max_terms = 512;
};

/// phi(X) together with the derivative data the invariant needs.
///
/// With c_k = n! s^k / (n+k)! and s = n - d + 1:
///   phi      = sum_k c_k h_k(X)
///   dphi_v   = sum_k c_k B_k(X; v)        (B_k = D_v h_k)
///   euler    = sum_k c_k k h_k(X)         (= sum_i X_i dphi/dX_i)
///   deuler_v = sum_k c_k k B_k(X; v)      (= D_v euler)
struct PhiBundle {
    Complex phi;
    Complex dphi_v;
    Complex euler;
    Complex deuler_v;
    int terms_used = 0;  ///< highest k included
    double tail_bound = 0.0;
};

inline constexpr int kBruteMaxDegree = 8;
inline constexpr std::size_t kBruteMaxVars = 6;

/// Literal enumeration of sum_{|alpha| = k} X^alpha. Oracle scale only:
/// k <= 8 and at most 6 variables, otherwise ScaleExceeded.
Complex brute_h(std::span<const Complex> X, int k);

/// h_0 .. h_K via k h_k = sum_{m=1}^k p_m h_{k-m}.
ComplexVector h_sequence(std::span<const Complex> X, int K);

/// B_0 .. B_K with B_k = sum_i v_i dh_k/dX_i, via B_k = sum_m w_m h_{k-m},
/// w_m = sum_i v_i X_i^{m-1}.
ComplexVector h_dirderiv(std::span<const Complex> X, std::span<const Complex> v, int K);

/// Rigorous bound on the neglected part of all four series when summing
/// k = 0..K, given x = |s| max_i |X_i| and v_l1 = sum_i |v_i|.
double series_tail_bound(double x, double v_l1, double abs_s, int n, int K);

/// Evaluates the four series, truncating at the smallest K whose tail bound
/// is <= ctl.epsilon. BudgetExceeded if K would pass ctl.max_terms.
PhiBundle phi_bundle(const DiagonalField& X, const DiagonalField& v, int n, int d,
                     const SeriesControl& ctl = {});

/// phi(X) = n! s^{-n} [X_0, ..., X_n] e^{s x}, the divided difference taken
/// as the corner entry of exp(s A) with A bidiagonal (nodes on the diagonal,
/// ones above it). Repeated nodes need no special handling. ZeroScale when
/// s = 0.
Complex phi_divdiff(const DiagonalField& X, int n, int d);

}  // namespace krs
