#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "krs/error.hpp"
#include "krs/invariant.hpp"

using namespace krs;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected krs::Error");
    return ErrorCode::MalformedInput;
}

DiagonalField field(std::initializer_list<Complex> xs) { return DiagonalField(ComplexVector(xs)); }

DiagonalField random_field(std::mt19937_64& rng, std::size_t width, double radius, bool complex) {
    std::uniform_real_distribution<double> u(-radius, radius);
    ComplexVector x(width);
    for (auto& c : x) c = Complex(u(rng), complex ? u(rng) : 0.0);
    return normalize_field(x).field;
}

HomogeneousPolynomial random_monomial(std::mt19937_64& rng, int n, int d) {
    Exponent a(static_cast<std::size_t>(n) + 1, 0);
    std::uniform_int_distribution<std::size_t> pick(0, a.size() - 1);
    for (int k = 0; k < d; ++k) ++a[pick(rng)];
    return HomogeneousPolynomial::make(n, {{a, 1.0}});
}

// Independent closed form of the X = 0 reduction.
Complex futaki_closed_form(int n, int d, Complex kappa) {
    return -std::pow(double(n - d + 1), n - 1) * (n + 1) * (d - 1) / double(n) * kappa;
}

}  // namespace

TEST_CASE("sigma examples") {
    for (int n = 2; n <= 5; ++n) {
        for (int d = 1; d <= n + 2; ++d) {
            CHECK(sigma(DiagonalField::zero(n + 1), 0.0, n, d) == Complex(d));
        }
    }
    // d = n + 1: phi = 1 and euler = 0 for every X
    auto X = field({2.0, -1.5, -0.5});
    CHECK(std::abs(sigma(X, Complex(0.7, 0.2), 2, 3) - 3.0) < 1e-15);
}

TEST_CASE("sigma on the quadric against divided differences") {
    auto P = parse_polynomial("Z0*Z3 + Z1*Z2", 3);
    auto X = field({0.3, -0.3, 0.3, -0.3});
    const Complex lambda = weight_of(P, X).value;
    CHECK(std::abs(lambda) == 0.0);

    // euler = d/dt phi(t X) at t = 1, here from divided differences
    const double h = 1e-5;
    const Complex phi_dd = phi_divdiff(X, 3, 2);
    const Complex euler_dd = (phi_divdiff(X.scaled(1 + h), 3, 2) - phi_divdiff(X.scaled(1 - h), 3, 2)) / (2 * h);
    const Complex want = 2.0 * phi_dd + (2.0 / 3.0) * euler_dd;
    CHECK(std::abs(sigma(X, lambda, 3, 2) - want) < 1e-8 * std::abs(want));
}

TEST_CASE("sigma_dirderiv examples") {
    std::mt19937_64 rng(10);
    for (int n = 2; n <= 6; ++n) {
        for (int d = 1; d <= n; ++d) {
            auto P = random_monomial(rng, n, d);
            auto v = random_field(rng, n + 1, 1.0, true);
            const Complex kappa = weight_of(P, v).value;
            const Complex got = sigma_dirderiv(DiagonalField::zero(n + 1), v, kappa, 0.0, n, d);
            const Complex want = -kappa * double(n - d + 1) / double(n);
            CHECK(std::abs(got - want) < 1e-13 * std::max(1.0, std::abs(want)));
        }
    }
    auto X = field({0.4, -0.1, -0.3});
    CHECK(sigma_dirderiv(X, DiagonalField::zero(3), 0.0, 0.25, 2, 1) == Complex(0.0));
}

TEST_CASE("property: sigma_dirderiv matches central differences along (X + t v, lambda + t kappa)") {
    std::mt19937_64 rng(11);
    const double h = 1e-5;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 5;
        const int d = 1 + (trial / 5) % (n + 1);
        auto P = random_monomial(rng, n, d);
        auto X = random_field(rng, n + 1, 1.0, trial % 2 == 0);
        auto v = random_field(rng, n + 1, 1.0, trial % 3 == 0);
        const Complex lambda = weight_of(P, X).value;
        const Complex kappa = weight_of(P, v).value;
        const Complex exact = sigma_dirderiv(X, v, kappa, lambda, n, d);
        const Complex fd = (sigma(X.plus(v, h), lambda + h * kappa, n, d) -
                            sigma(X.plus(v, -h), lambda - h * kappa, n, d)) /
                           (2 * h);
        const double scale = std::max(std::abs(exact), 1e-3 * std::abs(sigma(X, lambda, n, d)));
        CHECK(std::abs(exact - fd) <= 1e-6 * scale);
    }
}

TEST_CASE("tian_zhu_invariant on the quadric at X = 0 vanishes") {
    auto P = parse_polynomial("Z0*Z3 + Z1*Z2", 3);
    auto r = tian_zhu_invariant(P, field({1.0, -1.0, 1.0, -1.0}), DiagonalField::zero(4));
    CHECK(r.value == Complex(0.0));
    CHECK(r.sigma == Complex(2.0));
    CHECK(r.c_X == Complex(0.0));
    CHECK(r.warnings.empty());
}

TEST_CASE("property: X = 0 reproduces the closed-form Futaki invariant") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 5;
        const int d = 1 + (trial / 5) % n;
        auto P = random_monomial(rng, n, d);
        auto v = random_field(rng, n + 1, 2.0, trial % 2 == 0);
        const Complex kappa = weight_of(P, v).value;
        const Complex want = futaki_closed_form(n, d, kappa);
        const Complex tz = tian_zhu_invariant(P, v, DiagonalField::zero(n + 1)).value;
        const Complex fu = futaki(P, v);
        // d = 1 makes the closed form vanish; compare against the cancelling terms
        const double s = n - d + 1;
        const double scale = std::max(std::abs(want), std::pow(s, n - 1) * d * std::abs(kappa));
        CHECK(std::abs(tz - want) <= 1e-10 * scale);
        CHECK(std::abs(fu - want) <= 1e-14 * scale);
    }
}

TEST_CASE("futaki examples") {
    auto linear = parse_polynomial("Z0", 3);
    CHECK(futaki(linear, field({3.0, -1.0, -1.0, -1.0})) == Complex(0.0));

    auto quadric = parse_polynomial("Z0*Z3 + Z1*Z2", 3);
    for (const auto& b : tangent_field_basis(quadric)) CHECK(std::abs(futaki(quadric, b)) < 1e-14);

    auto formal = parse_polynomial("Z0*Z1", 3);
    CHECK(std::abs(futaki(formal, field({1.0, 1.0, -1.0, -1.0})) - (-32.0 / 3.0)) < 1e-13);

    auto fermat = parse_polynomial("Z0^3 + Z1^3 + Z2^3 + Z3^3", 3);
    CHECK(code_of([&] { futaki(fermat, field({1.0, -1.0, 0.0, 0.0})); }) == ErrorCode::NotTangent);
}

TEST_CASE("property: F_X(v) is linear in v") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 4;
        const int d = 1 + trial % n;
        auto P = random_monomial(rng, n, d);
        auto X = random_field(rng, n + 1, 1.0, trial % 2 == 0);
        auto u = random_field(rng, n + 1, 1.0, true);
        auto w = random_field(rng, n + 1, 1.0, true);
        const Complex alpha(g(rng), g(rng)), beta(g(rng), g(rng));
        const Complex Fu = tian_zhu_invariant(P, u, X).value;
        const Complex Fw = tian_zhu_invariant(P, w, X).value;
        const Complex Fmix = tian_zhu_invariant(P, u.scaled(alpha).plus(w, beta), X).value;
        const Complex want = alpha * Fu + beta * Fw;
        const double scale = std::max({std::abs(want), std::abs(alpha * Fu), std::abs(beta * Fw)});
        CHECK(std::abs(Fmix - want) <= 1e-10 * scale);
    }
}

TEST_CASE("property: permutation equivariance") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 4;
        const int d = 1 + trial % n;
        auto P = random_monomial(rng, n, d);
        auto X = random_field(rng, n + 1, 1.0, trial % 2 == 0);
        auto v = random_field(rng, n + 1, 1.0, true);
        const Complex base = tian_zhu_invariant(P, v, X).value;

        std::vector<std::size_t> perm(n + 1);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        ComplexVector Xp(n + 1), vp(n + 1);
        Exponent ap(n + 1);
        const Exponent& a = P.terms().begin()->first;
        for (int i = 0; i <= n; ++i) {
            Xp[i] = X[perm[i]];
            vp[i] = v[perm[i]];
            ap[i] = a[perm[i]];
        }
        auto Pp = HomogeneousPolynomial::make(n, {{ap, 1.0}});
        const Complex permuted = tian_zhu_invariant(Pp, DiagonalField(vp), DiagonalField(Xp)).value;
        CHECK(std::abs(permuted - base) <= 1e-12 * std::max(1.0, std::abs(base)));
    }
}

TEST_CASE("d = n + 1 gives exactly zero, with a NonFano warning") {
    std::mt19937_64 rng(15);
    for (int n = 2; n <= 6; ++n) {
        auto P = random_monomial(rng, n, n + 1);
        auto X = random_field(rng, n + 1, 1.0, true);
        auto v = random_field(rng, n + 1, 1.0, true);
        auto r = tian_zhu_invariant(P, v, X);
        CHECK(r.value == Complex(0.0));
        CHECK(r.sigma == Complex(n + 1.0));
        CHECK(r.c_X == Complex(0.0));
        REQUIRE(r.warnings.size() == 1);
        CHECK(r.warnings[0].rfind("NonFano", 0) == 0);
    }
}

TEST_CASE("normalization_constant") {
    CHECK(normalization_constant(DiagonalField::zero(4), 0.0, 3, 2) == Complex(0.0));
    CHECK(std::abs(normalization_constant(field({1.0, -0.5, -0.5}), 0.3, 2, 3)) < 1e-15);

    // n = 2, d = 1 on F = Z1 (weight of X is X_1 = 0); sigma via both phi routes
    auto P = parse_polynomial("Z1", 2);
    auto X = field({1.0, 0.0, -1.0});
    const Complex lambda = weight_of(P, X).value;
    const double h = 1e-5;
    const Complex phi_dd = phi_divdiff(X, 2, 1);
    const Complex euler_dd = (phi_divdiff(X.scaled(1 + h), 2, 1) - phi_divdiff(X.scaled(1 - h), 2, 1)) / (2 * h);
    const Complex sigma_dd = (-lambda * 2.0 / 2.0 + 1.0) * phi_dd + 0.5 * euler_dd;
    const Complex sigma_series = sigma(X, lambda, 2, 1);
    CHECK(std::abs(sigma_series - sigma_dd) < 1e-9 * std::abs(sigma_dd));
    CHECK(std::abs(normalization_constant(X, lambda, 2, 1) - std::log(1.0 / sigma_dd)) < 1e-9);
}

TEST_CASE("SigmaZero where sigma vanishes") {
    // Z0^5 on CP^2 along X = (0, iy, -iy): sigma = 5 sin(2y) / (2y), zero at y = pi/2.
    // Real X never gets there, sigma stays positive.
    auto P = parse_polynomial("Z0^5", 2);
    const double y = std::acos(-1.0) / 2;
    auto X = DiagonalField(ComplexVector{0.0, Complex(0, y), Complex(0, -y)});
    const Complex lambda = weight_of(P, X).value;
    CHECK(std::abs(sigma(X, lambda, 2, 5)) <= 5e-12);
    auto near = DiagonalField(ComplexVector{0.0, Complex(0, 1.0), Complex(0, -1.0)});
    CHECK(std::abs(sigma(near, 0.0, 2, 5) - 5.0 * std::sin(2.0) / 2.0) < 1e-12);

    CHECK(code_of([&] { tian_zhu_invariant(P, field({0.0, 1.0, -1.0}), X); }) == ErrorCode::SigmaZero);
    CHECK(code_of([&] { normalization_constant(X, lambda, 2, 5); }) == ErrorCode::SigmaZero);
}

TEST_CASE("tian_zhu_invariant rejects non-tangent fields") {
    auto fermat = parse_polynomial("Z0^3 + Z1^3 + Z2^3 + Z3^3", 3);
    CHECK(code_of([&] {
              tian_zhu_invariant(fermat, field({1.0, -1.0, 0.0, 0.0}), DiagonalField::zero(4));
          }) == ErrorCode::NotTangent);
    CHECK(code_of([&] {
              tian_zhu_invariant(fermat, DiagonalField::zero(4), field({1.0, -1.0, 0.0, 0.0}));
          }) == ErrorCode::NotTangent);
}
