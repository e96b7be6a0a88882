#include <cctype>
#include <charconv>
#include <string>
#include <system_error>

#include <json.hpp>

#include "krs/error.hpp"
#include "krs/poly.hpp"

namespace krs {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void malformed(std::string_view what, std::string_view text) {
    throw Error(ErrorCode::MalformedInput, std::string(what) + " in '" + std::string(text) + "'");
}

double parse_real(std::string_view s, std::string_view context) {
    s = trim(s);
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) malformed("missing number", context);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) malformed("bad number", context);
    return negative ? -value : value;
}

// Length of the longest prefix of `s` that reads as an unsigned decimal
// number (digits, optional fraction, optional exponent).
std::size_t scan_number(std::string_view s) {
    std::size_t i = 0;
    auto digits = [&] {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        return i - start;
    };
    std::size_t whole = digits();
    std::size_t frac = 0;
    if (i < s.size() && s[i] == '.') {
        ++i;
        frac = digits();
    }
    if (whole == 0 && frac == 0) return 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t save = i++;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        if (digits() == 0) i = save;
    }
    return i;
}

class PolynomialParser {
public:
    PolynomialParser(std::string_view text, int n) : text_(text), n_(n) {}

    std::vector<std::pair<Exponent, Complex>> parse() {
        std::vector<std::pair<Exponent, Complex>> terms;
        skip_ws();
        if (at_end()) throw Error(ErrorCode::EmptyPolynomial, "no terms");
        bool first = true;
        while (!at_end()) {
            double sign = 1.0;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1.0 : 1.0;
                ++pos_;
                skip_ws();
            } else if (!first) {
                malformed("expected '+' or '-' between terms", text_);
            }
            terms.push_back(parse_term(sign));
            first = false;
            skip_ws();
        }
        return terms;
    }

private:
    std::pair<Exponent, Complex> parse_term(double sign) {
        Exponent exps(static_cast<std::size_t>(n_) + 1, 0);
        Complex coeff = sign;
        bool have_item = false;
        while (true) {
            skip_ws();
            if (at_end() || peek() == '+' || peek() == '-') break;
            if (peek() == '*') {
                if (!have_item) malformed("dangling '*'", text_);
                ++pos_;
                skip_ws();
                if (at_end() || peek() == '+' || peek() == '-') malformed("dangling '*'", text_);
                continue;
            }
            if (peek() == 'Z' || peek() == 'z') {
                parse_variable(exps);
            } else {
                coeff *= parse_coefficient();
            }
            have_item = true;
        }
        if (!have_item) malformed("empty term", text_);
        return {std::move(exps), coeff};
    }

    void parse_variable(Exponent& exps) {
        ++pos_;
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) malformed("variable without index", text_);
        long index = 0;
        std::from_chars(text_.data() + start, text_.data() + pos_, index);
        if (pos_ - start > 6 || index > n_) {
            throw Error(ErrorCode::UnknownVariable,
                        "Z" + std::string(text_.substr(start, pos_ - start)) + " with n=" +
                            std::to_string(n_));
        }
        int power = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
            ++pos_;
            skip_ws();
            std::size_t pstart = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            if (pstart == pos_ || pos_ - pstart > 6) malformed("bad exponent", text_);
            std::from_chars(text_.data() + pstart, text_.data() + pos_, power);
        }
        exps[static_cast<std::size_t>(index)] += power;
    }

    Complex parse_coefficient() {
        if (peek() == '(') {
            std::size_t close = text_.find(')', pos_);
            if (close == std::string_view::npos) malformed("unbalanced '('", text_);
            Complex z = parse_complex(text_.substr(pos_ + 1, close - pos_ - 1));
            pos_ = close + 1;
            return z;
        }
        if (peek() == 'i') {
            ++pos_;
            return {0.0, 1.0};
        }
        std::size_t len = scan_number(text_.substr(pos_));
        if (len == 0) malformed(std::string("unexpected character '") + peek() + "'", text_);
        double value = parse_real(text_.substr(pos_, len), text_);
        pos_ += len;
        if (!at_end() && peek() == 'i') {
            ++pos_;
            return {0.0, value};
        }
        return value;
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    std::string_view text_;
    int n_;
    std::size_t pos_ = 0;
};

}  // namespace

HomogeneousPolynomial parse_polynomial(std::string_view text, int n) {
    if (n < 2) throw Error(ErrorCode::MalformedInput, "ambient dimension n must be at least 2");
    return HomogeneousPolynomial::make(n, PolynomialParser(text, n).parse());
}

HomogeneousPolynomial parse_polynomial_json(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedInput, std::string("invalid JSON: ") + e.what());
    }
    try {
        int n = doc.at("n").get<int>();
        if (n < 2) throw Error(ErrorCode::MalformedInput, "ambient dimension n must be at least 2");
        std::vector<std::pair<Exponent, Complex>> terms;
        for (const auto& term : doc.at("terms")) {
            auto exps = term.at("exps").get<Exponent>();
            if (exps.size() != static_cast<std::size_t>(n) + 1) {
                throw Error(ErrorCode::UnknownVariable,
                            "exponent vector of length " + std::to_string(exps.size()) +
                                " with n=" + std::to_string(n));
            }
            for (int e : exps) {
                if (e < 0) throw Error(ErrorCode::MalformedInput, "negative exponent");
            }
            if (!term.contains("re") && !term.contains("im")) {
                throw Error(ErrorCode::MalformedInput, "term without a coefficient");
            }
            double re = term.value("re", 0.0);
            double im = term.value("im", 0.0);
            terms.emplace_back(std::move(exps), Complex(re, im));
        }
        if (terms.empty()) throw Error(ErrorCode::EmptyPolynomial, "no terms");
        return HomogeneousPolynomial::make(n, terms);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedInput, std::string("bad polynomial JSON: ") + e.what());
    }
}

int max_variable_index(std::string_view text) {
    int best = -1;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != 'Z' && text[i] != 'z') continue;
        std::size_t j = i + 1;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i + 1 && j - i - 1 <= 6) {
            int index = 0;
            std::from_chars(text.data() + i + 1, text.data() + j, index);
            best = std::max(best, index);
        }
        i = j - 1;
    }
    return best;
}

Complex parse_complex(std::string_view text) {
    std::string_view s = trim(text);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
    if (s.empty()) malformed("empty complex literal", text);
    if (s.back() != 'i') return parse_real(s, text);

    std::string_view body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not a leading sign or part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    std::string_view re_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
    std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
    im_part = trim(im_part);
    double im = 0.0;
    if (im_part.empty() || im_part == "+") {
        im = 1.0;
    } else if (im_part == "-") {
        im = -1.0;
    } else {
        if (im_part.back() == '*') im_part = trim(im_part.substr(0, im_part.size() - 1));
        im = parse_real(im_part, text);
    }
    double re = re_part.empty() ? 0.0 : parse_real(re_part, text);
    return {re, im};
}

ComplexVector parse_complex_vector(std::string_view text) {
    ComplexVector out;
    std::string_view rest = text;
    while (true) {
        std::size_t comma = rest.find(',');
        out.push_back(parse_complex(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

std::string format_complex(Complex z) {
    auto fmt = [](double x) {
        char buf[64];
        if (x == 0.0) x = 0.0;  // drop the sign of negative zero
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
        return std::string(buf, ptr);
    };
    if (z.imag() == 0.0) return fmt(z.real());
    std::string im = fmt(z.imag());
    if (im.front() != '-') im.insert(im.begin(), '+');
    return fmt(z.real()) + im + "i";
}

}  // namespace krs
