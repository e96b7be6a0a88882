#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace krs {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using Exponent = std::vector<int>;

/// Sparse homogeneous polynomial F(Z_0, ..., Z_n) defining a hypersurface of CP^n.
///
/// Terms are kept in a map keyed by exponent vector, so the representation is
/// canonical: no duplicate exponents, no zero coefficients, every exponent has
/// total degree `degree()`.
class HomogeneousPolynomial {
public:
    using TermMap = std::map<Exponent, Complex>;

    /// Validates and canonicalizes. Zero coefficients are dropped and like
    /// terms merged before the checks run.
    static HomogeneousPolynomial make(int ambient_dim,
                                      const std::vector<std::pair<Exponent, Complex>>& terms);

    int ambient_dim() const noexcept { return n_; }
    int degree() const noexcept { return d_; }
    std::size_t num_vars() const noexcept { return static_cast<std::size_t>(n_) + 1; }
    const TermMap& terms() const noexcept { return terms_; }

    /// Re-parseable text form, e.g. `Z0*Z3 + Z1*Z2`.
    std::string to_string() const;

    bool operator==(const HomogeneousPolynomial&) const = default;

private:
    HomogeneousPolynomial(int n, int d, TermMap terms) : n_(n), d_(d), terms_(std::move(terms)) {}

    int n_ = 0;
    int d_ = 0;
    TermMap terms_;
};

/// Coefficients of a diagonal field sum_i c_i Z_i d/dZ_i with sum_i c_i = 0.
class DiagonalField {
public:
    static constexpr double kTraceTolerance = 1e-12;

    DiagonalField() = default;

    /// Throws MalformedInput unless |sum c_i| <= 1e-12 * max_i |c_i|.
    explicit DiagonalField(ComplexVector coeffs);
    static DiagonalField from_real(std::span<const double> coeffs);
    static DiagonalField zero(std::size_t size) { return DiagonalField(ComplexVector(size)); }

    std::size_t size() const noexcept { return coeffs_.size(); }
    const ComplexVector& coeffs() const noexcept { return coeffs_; }
    Complex operator[](std::size_t i) const { return coeffs_[i]; }

    bool is_real(double tol = 0.0) const noexcept;
    double max_norm() const noexcept;

    DiagonalField scaled(Complex alpha) const;
    DiagonalField plus(const DiagonalField& other, Complex beta = 1.0) const;

private:
    ComplexVector coeffs_;
};

struct NormalizedField {
    DiagonalField field;
    Complex shift;
};

/// Weight of a tangent diagonal field: f F = value * F.
struct Weight {
    Complex value;
    Exponent witness_exponent;
};

// -- parsing -----------------------------------------------------------------

/// Parses `c * Z0^e0 * Z1^e1 + ...`. Coefficients are decimals, `(a+bi)`
/// complex literals or bare imaginaries like `2i`; a missing coefficient is 1.
HomogeneousPolynomial parse_polynomial(std::string_view text, int n);

/// Parses {"n": int, "terms": [{"exps": [...], "re": x, "im": y}, ...]}.
HomogeneousPolynomial parse_polynomial_json(std::string_view json_text);

/// Largest variable index mentioned in a text polynomial (-1 if none).
int max_variable_index(std::string_view text);

/// `a`, `a+bi`, `a-bi`, `bi`, `i`, optionally parenthesized.
Complex parse_complex(std::string_view text);

/// Comma-separated list of complex literals.
ComplexVector parse_complex_vector(std::string_view text);

std::string format_complex(Complex z);

// -- weights and tangent fields ------------------------------------------------

inline constexpr double kDefaultTangencyTol = 1e-9;
inline constexpr double kNullspaceCutoff = 1e-10;

Complex pairing(const Exponent& a, const DiagonalField& f);

/// Common value of <a, f> over the monomials of F; NotTangent if the values
/// spread by more than `tol` relative to max(max|<a,f>|, d*max|f_i|).
Weight weight_of(const HomogeneousPolynomial& P, const DiagonalField& f,
                 double tol = kDefaultTangencyTol);

/// Subtracts the mean; the Euler field acts trivially on CP^n.
NormalizedField normalize_field(std::span<const Complex> raw);

/// Orthonormal real basis of {f : sum f_i = 0, <a^j - a^1, f> = 0 for all j}.
std::vector<DiagonalField> tangent_field_basis(const HomogeneousPolynomial& P,
                                               double cutoff = kNullspaceCutoff);

}  // namespace krs
