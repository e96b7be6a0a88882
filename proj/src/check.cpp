#include "krs/check.hpp"

#include <cmath>
#include <sstream>

#include "krs/error.hpp"
#include "krs/hfuncs.hpp"
#include "krs/invariant.hpp"
#include "krs/oracle.hpp"

namespace krs {
namespace {

std::string describe(Complex a, Complex b) {
    return format_complex(a) + " vs " + format_complex(b);
}

CheckItem relative(std::string name, Complex got, Complex want, double tol, double floor) {
    const double diff = std::abs(got - want);
    const double scale = std::max({std::abs(got), std::abs(want), floor});
    return {std::move(name), diff <= tol * scale, diff, tol * scale, describe(got, want)};
}

CheckItem within_stderr(std::string name, const McEstimate& est, Complex want) {
    const double diff = std::abs(est.mean - want);
    const double allowed = est.std_error > 0.0 ? 4.0 * est.std_error
                                               : 1e-12 * std::max(1.0, std::abs(want));
    std::ostringstream detail;
    detail << describe(est.mean, want) << " (stderr " << est.std_error << ")";
    return {std::move(name), diff <= allowed, diff, allowed, detail.str()};
}

std::vector<std::pair<std::string, DiagonalField>> evaluation_points(
    const HomogeneousPolynomial& P, const std::vector<DiagonalField>& basis,
    const CheckOptions& opts) {
    const std::size_t width = P.num_vars();
    std::vector<std::pair<std::string, DiagonalField>> points;
    points.emplace_back("X=0", DiagonalField::zero(width));

    ComplexVector ramp(width);
    for (std::size_t i = 0; i < width; ++i) ramp[i] = static_cast<double>(i) / (width - 1);
    points.emplace_back("X=ramp", normalize_field(ramp).field);

    for (std::size_t j = 0; j < basis.size(); ++j) {
        points.emplace_back("X=0.5*b" + std::to_string(j), basis[j].scaled(0.5));
    }
    if (opts.X) points.emplace_back("X=user", *opts.X);
    return points;
}

}  // namespace

std::vector<CheckItem> run_checks(const HomogeneousPolynomial& P, const CheckOptions& opts) {
    const int n = P.ambient_dim();
    const int d = P.degree();
    const double s = n - d + 1;
    const auto basis = tangent_field_basis(P);

    std::vector<CheckItem> items;
    std::uint64_t seed = opts.seed;
    for (const auto& [label, X] : evaluation_points(P, basis, opts)) {
        const PhiBundle b = phi_bundle(X, X, n, d);
        if (s != 0.0) {
            items.push_back(relative("phi series vs divided difference @" + label, b.phi,
                                     phi_divdiff(X, n, d), 1e-9, 0.0));
        }
        items.push_back(within_stderr("phi series vs Monte Carlo @" + label,
                                      mc_phi(X, n, d, opts.samples, seed++), b.phi));
        items.push_back(within_stderr("euler series vs Monte Carlo @" + label,
                                      mc_euler(X, X, n, d, opts.samples, seed++), b.euler));
    }

    const double prefactor_scale = std::pow(std::abs(s), n - 1) * d * d;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const auto& v = basis[j];
        const auto at_zero = tian_zhu_invariant(P, v, DiagonalField::zero(P.num_vars()));
        items.push_back(relative("X=0 reduction to Futaki @v=b" + std::to_string(j),
                                 at_zero.value, futaki(P, v), 1e-10,
                                 prefactor_scale * v.max_norm()));
    }

    if (!basis.empty()) {
        const DiagonalField X = basis.front().scaled(0.5);
        const Complex lambda = weight_of(P, X).value;
        const double h = 1e-5;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const auto& v = basis[j];
            const Complex kappa = weight_of(P, v).value;
            const Complex exact = sigma_dirderiv(X, v, kappa, lambda, n, d);
            const Complex fd = (sigma(X.plus(v, h), lambda + h * kappa, n, d) -
                                sigma(X.plus(v, -h), lambda - h * kappa, n, d)) /
                               (2.0 * h);
            items.push_back(relative("D_v sigma vs finite difference @v=b" + std::to_string(j),
                                     exact, fd, 1e-6, std::max(1.0, std::abs(sigma(X, lambda, n, d)))));
        }
    }
    return items;
}

}  // namespace krs
