#include "krs/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/SVD>

#include "krs/error.hpp"

namespace krs {

HomogeneousPolynomial HomogeneousPolynomial::make(
    int ambient_dim, const std::vector<std::pair<Exponent, Complex>>& terms) {
    if (ambient_dim < 2) {
        throw Error(ErrorCode::MalformedInput, "ambient dimension n must be at least 2");
    }
    const auto width = static_cast<std::size_t>(ambient_dim) + 1;
    TermMap merged;
    for (const auto& [exps, coeff] : terms) {
        if (exps.size() != width) {
            throw Error(ErrorCode::MalformedInput, "exponent vector has wrong length");
        }
        if (std::any_of(exps.begin(), exps.end(), [](int e) { return e < 0; })) {
            throw Error(ErrorCode::MalformedInput, "negative exponent");
        }
        merged[exps] += coeff;
    }
    std::erase_if(merged, [](const auto& kv) { return kv.second == Complex(0.0); });
    if (merged.empty()) throw Error(ErrorCode::EmptyPolynomial, "all coefficients vanish");

    int degree = -1;
    for (const auto& [exps, coeff] : merged) {
        int total = std::accumulate(exps.begin(), exps.end(), 0);
        if (degree < 0) {
            degree = total;
        } else if (total != degree) {
            throw Error(ErrorCode::NotHomogeneous, "total degrees " + std::to_string(degree) +
                                                       " and " + std::to_string(total));
        }
    }
    if (degree < 1) throw Error(ErrorCode::MalformedInput, "polynomial has degree 0");
    return HomogeneousPolynomial(ambient_dim, degree, std::move(merged));
}

std::string HomogeneousPolynomial::to_string() const {
    std::string out;
    bool first = true;
    for (const auto& [exps, coeff] : terms_) {
        Complex c = coeff;
        bool negative = c.imag() == 0.0 && c.real() < 0.0;
        if (negative) c = -c;
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;

        std::string factors;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += "Z" + std::to_string(i);
            if (exps[i] != 1) factors += "^" + std::to_string(exps[i]);
        }
        if (c != Complex(1.0)) {
            std::string cs = format_complex(c);
            out += c.imag() == 0.0 ? cs : "(" + cs + ")";
            out += "*";
        }
        out += factors;
    }
    return out;
}

// -- DiagonalField -------------------------------------------------------------

DiagonalField::DiagonalField(ComplexVector coeffs) : coeffs_(std::move(coeffs)) {
    Complex sum = std::accumulate(coeffs_.begin(), coeffs_.end(), Complex(0.0));
    double scale = max_norm();
    if (std::abs(sum) > kTraceTolerance * scale) {
        throw Error(ErrorCode::MalformedInput,
                    "field coefficients must sum to zero (sum = " + format_complex(sum) +
                        "); normalize first");
    }
}

DiagonalField DiagonalField::from_real(std::span<const double> coeffs) {
    return DiagonalField(ComplexVector(coeffs.begin(), coeffs.end()));
}

bool DiagonalField::is_real(double tol) const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [tol](Complex c) { return std::abs(c.imag()) <= tol; });
}

double DiagonalField::max_norm() const noexcept {
    double m = 0.0;
    for (Complex c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

DiagonalField DiagonalField::scaled(Complex alpha) const {
    ComplexVector out(coeffs_);
    for (auto& c : out) c *= alpha;
    return DiagonalField(std::move(out));
}

DiagonalField DiagonalField::plus(const DiagonalField& other, Complex beta) const {
    if (other.size() != size()) throw Error(ErrorCode::MalformedInput, "field length mismatch");
    ComplexVector out(coeffs_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += beta * other.coeffs_[i];
    return DiagonalField(std::move(out));
}

// -- weights -------------------------------------------------------------------

Complex pairing(const Exponent& a, const DiagonalField& f) {
    Complex w = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) w += static_cast<double>(a[i]) * f[i];
    return w;
}

Weight weight_of(const HomogeneousPolynomial& P, const DiagonalField& f, double tol) {
    if (f.size() != P.num_vars()) {
        throw Error(ErrorCode::MalformedInput, "field has " + std::to_string(f.size()) +
                                                   " entries, expected " +
                                                   std::to_string(P.num_vars()));
    }
    const auto& terms = P.terms();
    const Exponent& witness = terms.begin()->first;
    const Complex value = pairing(witness, f);

    double largest = 0.0;
    double spread = 0.0;
    for (const auto& [exps, coeff] : terms) {
        Complex w = pairing(exps, f);
        largest = std::max(largest, std::abs(w));
        spread = std::max(spread, std::abs(w - value));
    }
    const double scale = std::max(largest, P.degree() * f.max_norm());
    if (spread > tol * scale) {
        throw Error(ErrorCode::NotTangent, "monomial weights differ by " + std::to_string(spread));
    }
    return {value, witness};
}

NormalizedField normalize_field(std::span<const Complex> raw) {
    if (raw.empty()) return {DiagonalField{}, 0.0};
    Complex mean = std::accumulate(raw.begin(), raw.end(), Complex(0.0)) /
                   static_cast<double>(raw.size());
    ComplexVector out(raw.begin(), raw.end());
    for (auto& c : out) c -= mean;
    return {DiagonalField(std::move(out)), mean};
}

std::vector<DiagonalField> tangent_field_basis(const HomogeneousPolynomial& P, double cutoff) {
    const auto width = static_cast<Eigen::Index>(P.num_vars());
    const auto& terms = P.terms();
    const Exponent& first = terms.begin()->first;

    Eigen::MatrixXd constraints(static_cast<Eigen::Index>(terms.size()), width);
    constraints.row(0).setOnes();
    Eigen::Index row = 1;
    for (auto it = std::next(terms.begin()); it != terms.end(); ++it, ++row) {
        for (Eigen::Index i = 0; i < width; ++i) {
            constraints(row, i) = it->first[static_cast<std::size_t>(i)] -
                                  first[static_cast<std::size_t>(i)];
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraints, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double threshold = cutoff * sv(0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > threshold) ++rank;

    std::vector<DiagonalField> basis;
    const Eigen::MatrixXd& V = svd.matrixV();
    for (Eigen::Index j = rank; j < width; ++j) {
        std::vector<double> col(static_cast<std::size_t>(width));
        for (Eigen::Index i = 0; i < width; ++i) col[static_cast<std::size_t>(i)] = V(i, j);
        basis.push_back(normalize_field(ComplexVector(col.begin(), col.end())).field);
    }
    return basis;
}

}  // namespace krs
