#include "krs/hfuncs.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Core>
#include <unsupported/Eigen/MatrixFunctions>

#include "krs/error.hpp"

namespace krs {
namespace {

void enumerate(std::span<const Complex> X, std::size_t var, int remaining, Complex partial,
               Complex& total) {
    if (var + 1 == X.size()) {
        Complex term = partial;
        for (int e = 0; e < remaining; ++e) term *= X[var];
        total += term;
        return;
    }
    Complex power = 1.0;
    for (int e = 0; e <= remaining; ++e) {
        enumerate(X, var + 1, remaining - e, partial * power, total);
        power *= X[var];
    }
}

// Sum_{j >= K} x^j / j!, bounded by its first term times a geometric factor.
double exp_tail(double x, int K) {
    if (K <= 0) return std::exp(x);
    if (x == 0.0) return 0.0;
    if (x >= K + 1) return std::numeric_limits<double>::infinity();
    double first = std::exp(K * std::log(x) - std::lgamma(K + 1.0));
    return first / (1.0 - x / (K + 1));
}

}  // namespace

Complex brute_h(std::span<const Complex> X, int k) {
    if (k < 0) throw Error(ErrorCode::MalformedInput, "negative degree");
    if (k > kBruteMaxDegree || X.size() > kBruteMaxVars) {
        throw Error(ErrorCode::ScaleExceeded, "brute enumeration limited to k <= " +
                                                  std::to_string(kBruteMaxDegree) + " and " +
                                                  std::to_string(kBruteMaxVars) + " variables");
    }
    if (k == 0) return 1.0;
    if (X.empty()) return 0.0;
    Complex total = 0.0;
    enumerate(X, 0, k, 1.0, total);
    return total;
}

ComplexVector h_sequence(std::span<const Complex> X, int K) {
    if (K < 0) throw Error(ErrorCode::MalformedInput, "negative series length");
    const auto len = static_cast<std::size_t>(K) + 1;
    ComplexVector power_sums(len, 0.0);
    ComplexVector powers(X.begin(), X.end());
    for (std::size_t m = 1; m < len; ++m) {
        Complex p = 0.0;
        for (std::size_t i = 0; i < X.size(); ++i) {
            p += powers[i];
            powers[i] *= X[i];
        }
        power_sums[m] = p;
    }
    ComplexVector h(len, 0.0);
    h[0] = 1.0;
    for (std::size_t k = 1; k < len; ++k) {
        Complex acc = 0.0;
        for (std::size_t m = 1; m <= k; ++m) acc += power_sums[m] * h[k - m];
        h[k] = acc / static_cast<double>(k);
    }
    return h;
}

ComplexVector h_dirderiv(std::span<const Complex> X, std::span<const Complex> v, int K) {
    if (X.size() != v.size()) throw Error(ErrorCode::MalformedInput, "X and v lengths differ");
    if (K < 0) throw Error(ErrorCode::MalformedInput, "negative series length");
    const auto len = static_cast<std::size_t>(K) + 1;
    const ComplexVector h = h_sequence(X, K);

    ComplexVector w(len, 0.0);
    ComplexVector powers(v.begin(), v.end());  // v_i X_i^{m-1}
    for (std::size_t m = 1; m < len; ++m) {
        Complex acc = 0.0;
        for (std::size_t i = 0; i < X.size(); ++i) {
            acc += powers[i];
            powers[i] *= X[i];
        }
        w[m] = acc;
    }
    ComplexVector B(len, 0.0);
    for (std::size_t k = 1; k < len; ++k) {
        Complex acc = 0.0;
        for (std::size_t m = 1; m <= k; ++m) acc += w[m] * h[k - m];
        B[k] = acc;
    }
    return B;
}

double series_tail_bound(double x, double v_l1, double abs_s, int n, int K) {
    // |c_k h_k| <= x^k / k!  and  |c_k B_k| <= v_l1 |s| x^{k-1} / ((n+1) (k-1)!).
    const double t_phi = exp_tail(x, K + 1);
    const double t_euler = x * exp_tail(x, K);
    const double dscale = v_l1 * abs_s / (n + 1);
    const double t_dphi = dscale * exp_tail(x, K);
    const double t_deuler = dscale * (x * exp_tail(x, K - 1) + exp_tail(x, K));
    return std::max({t_phi, t_euler, t_dphi, t_deuler});
}

PhiBundle phi_bundle(const DiagonalField& X, const DiagonalField& v, int n, int d,
                     const SeriesControl& ctl) {
    if (n < 2) throw Error(ErrorCode::MalformedInput, "n must be at least 2");
    if (X.size() != static_cast<std::size_t>(n) + 1 || v.size() != X.size()) {
        throw Error(ErrorCode::MalformedInput, "field length must be n+1");
    }
    if (!(ctl.epsilon > 0.0) || ctl.max_terms < 1) {
        throw Error(ErrorCode::MalformedInput, "series control needs epsilon > 0, max_terms >= 1");
    }
    const double s = n - d + 1;
    const double x = std::abs(s) * X.max_norm();
    double v_l1 = 0.0;
    for (Complex c : v.coeffs()) v_l1 += std::abs(c);

    int K = 1;
    double tail = series_tail_bound(x, v_l1, std::abs(s), n, K);
    while (!(tail <= ctl.epsilon)) {
        if (++K > ctl.max_terms) {
            throw Error(ErrorCode::BudgetExceeded,
                        "series needs more than " + std::to_string(ctl.max_terms) +
                            " terms (|s|*max|X_i| = " + std::to_string(x) + ")");
        }
        tail = series_tail_bound(x, v_l1, std::abs(s), n, K);
    }

    // Work with U = s X / rho, |U_i| <= 1, so h_k(U) stays O(C(n+k, n)) and
    // the factor n! rho^k / (n+k)! is accumulated as a running product.
    const double rho = x > 0.0 ? x : 1.0;
    ComplexVector U(X.coeffs());
    for (auto& u : U) u *= s / rho;
    const ComplexVector h = h_sequence(U, K);
    const ComplexVector B = h_dirderiv(U, v.coeffs(), K);

    PhiBundle out{};
    double a = 1.0;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) a *= rho / (n + k);
        const Complex hk = a * h[static_cast<std::size_t>(k)];
        const Complex bk = (s * a / rho) * B[static_cast<std::size_t>(k)];
        out.phi += hk;
        out.dphi_v += bk;
        out.euler += static_cast<double>(k) * hk;
        out.deuler_v += static_cast<double>(k) * bk;
    }
    out.terms_used = K;
    out.tail_bound = tail;
    return out;
}

Complex phi_divdiff(const DiagonalField& X, int n, int d) {
    if (X.size() != static_cast<std::size_t>(n) + 1) {
        throw Error(ErrorCode::MalformedInput, "field length must be n+1");
    }
    const double s = n - d + 1;
    if (s == 0.0) throw Error(ErrorCode::ZeroScale, "n - d + 1 = 0; use the series path");

    const auto size = static_cast<Eigen::Index>(n) + 1;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
        A(i, i) = s * X[static_cast<std::size_t>(i)];
        if (i + 1 < size) A(i, i + 1) = s;
    }
    // f(D + N) for f(x) = e^{s x} is exp(s D + s N); its (0, n) entry is the
    // divided difference [X_0, ..., X_n] f.
    const Eigen::MatrixXcd E = A.exp();
    const Complex corner = E(0, size - 1);
    double factor = 1.0;
    for (int i = 1; i <= n; ++i) factor *= i / s;
    return corner * factor;
}

}  // namespace krs
