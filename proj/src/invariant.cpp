#include "krs/invariant.hpp"

#include <cmath>

#include "krs/error.hpp"

namespace krs {
namespace {

double int_pow(double base, int exp) {
    double out = 1.0;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

void check_sigma(Complex sigma, int d) {
    if (std::abs(sigma) <= kSigmaZeroTol * std::max(1, d)) {
        throw Error(ErrorCode::SigmaZero, "sigma(X) vanishes; invariant undefined at this X");
    }
}

}  // namespace

Complex sigma_from(const PhiBundle& b, Complex lambda, int n, int d) {
    const double s = n - d + 1;
    return (-lambda * s / static_cast<double>(n) + static_cast<double>(d)) * b.phi +
           (static_cast<double>(d) / n) * b.euler;
}

Complex sigma_dirderiv_from(const PhiBundle& b, Complex kappa, Complex lambda, int n, int d) {
    const double s = n - d + 1;
    const double dn = static_cast<double>(d) / n;
    return (-kappa * s / static_cast<double>(n)) * b.phi +
           (-lambda * s / static_cast<double>(n) + static_cast<double>(d)) * b.dphi_v +
           dn * b.deuler_v;
}

Complex sigma(const DiagonalField& X, Complex lambda, int n, int d, const SeriesControl& ctl) {
    const auto b = phi_bundle(X, DiagonalField::zero(X.size()), n, d, ctl);
    return sigma_from(b, lambda, n, d);
}

Complex sigma_dirderiv(const DiagonalField& X, const DiagonalField& v, Complex kappa,
                       Complex lambda, int n, int d, const SeriesControl& ctl) {
    const auto b = phi_bundle(X, v, n, d, ctl);
    return sigma_dirderiv_from(b, kappa, lambda, n, d);
}

InvariantReport tian_zhu_invariant(const HomogeneousPolynomial& P, const DiagonalField& v,
                                   const DiagonalField& X, const SeriesControl& ctl,
                                   double tangency_tol) {
    const int n = P.ambient_dim();
    const int d = P.degree();
    const double s = n - d + 1;

    InvariantReport r;
    r.kappa = weight_of(P, v, tangency_tol).value;
    r.lambda = weight_of(P, X, tangency_tol).value;
    if (s <= 0.0) {
        r.warnings.push_back("NonFano: n - d + 1 = " + std::to_string(n - d + 1) + " <= 0");
    }

    const auto b = phi_bundle(X, v, n, d, ctl);
    r.phi = b.phi;
    r.terms_used = b.terms_used;
    r.tail_bound = b.tail_bound;
    r.sigma = sigma_from(b, r.lambda, n, d);
    check_sigma(r.sigma, d);
    r.dsigma_v = sigma_dirderiv_from(b, r.kappa, r.lambda, n, d);
    r.c_X = std::log(Complex(d) / r.sigma);

    const double prefactor = -int_pow(s, n - 1) * d;
    r.value = prefactor == 0.0 ? Complex(0.0) : prefactor * (r.kappa + r.dsigma_v / r.sigma);
    return r;
}

Complex futaki(const HomogeneousPolynomial& P, const DiagonalField& v, double tangency_tol) {
    const int n = P.ambient_dim();
    const int d = P.degree();
    const Complex kappa = weight_of(P, v, tangency_tol).value;
    const double coeff = -int_pow(n - d + 1, n - 1) * (n + 1) * (d - 1) / n;
    return coeff == 0.0 ? Complex(0.0) : coeff * kappa;
}

Complex normalization_constant(const DiagonalField& X, Complex lambda, int n, int d,
                               const SeriesControl& ctl) {
    const Complex sg = sigma(X, lambda, n, d, ctl);
    check_sigma(sg, d);
    return std::log(Complex(d) / sg);
}

}  // namespace krs
