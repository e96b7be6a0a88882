#include "krs/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "krs/check.hpp"
#include "krs/error.hpp"
#include "krs/invariant.hpp"
#include "krs/report.hpp"
#include "krs/soliton.hpp"

namespace krs::cli {
namespace {

using nlohmann::json;

struct Options {
    std::string poly;
    std::optional<int> n;
    std::optional<int> d;
    std::string v;
    std::string X;
    bool normalize = false;
    std::optional<double> tol;
    double epsilon = 1e-12;
    int max_terms = 512;
    int max_iter = 50;
    std::int64_t samples = 200000;
    std::uint64_t seed = 12345;
    std::string output = "text";
};

std::string read_source(const std::string& source) {
    if (source.empty() || source.front() != '@') return source;
    std::ifstream in(source.substr(1));
    if (!in) throw Error(ErrorCode::MalformedInput, "cannot read " + source.substr(1));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool looks_like_json(const std::string& text) {
    auto pos = text.find_first_not_of(" \t\r\n");
    return pos != std::string::npos && text[pos] == '{';
}

class Job {
public:
    explicit Job(const Options& o) : o_(o) {
        if (!o_.v.empty()) v_raw_ = parse_complex_vector(o_.v);
        if (!o_.X.empty()) X_raw_ = parse_complex_vector(o_.X);
    }

    // n: explicit -n, then the length of a supplied vector, then the largest
    // variable index mentioned.
    HomogeneousPolynomial polynomial() const {
        if (o_.poly.empty()) throw Error(ErrorCode::MalformedInput, "-F is required");
        const std::string text = read_source(o_.poly);
        if (looks_like_json(text)) {
            auto P = parse_polynomial_json(text);
            if (o_.n && *o_.n != P.ambient_dim()) {
                throw Error(ErrorCode::MalformedInput, "-n disagrees with the JSON polynomial");
            }
            return P;
        }
        int n = max_variable_index(text);
        if (o_.n) {
            n = *o_.n;
        } else if (!v_raw_.empty()) {
            n = static_cast<int>(v_raw_.size()) - 1;
        } else if (!X_raw_.empty()) {
            n = static_cast<int>(X_raw_.size()) - 1;
        }
        return parse_polynomial(text, n);
    }

    bool has_v() const { return !v_raw_.empty(); }
    bool has_X() const { return !X_raw_.empty(); }

    DiagonalField field(const char* name, std::size_t width, json& shifts) const {
        const ComplexVector& raw = std::string_view(name) == "v" ? v_raw_ : X_raw_;
        if (raw.size() != width) {
            throw Error(ErrorCode::MalformedInput, std::string("-") + name + " needs " +
                                                       std::to_string(width) + " entries, got " +
                                                       std::to_string(raw.size()));
        }
        if (!o_.normalize) return DiagonalField(raw);
        auto nf = normalize_field(raw);
        shifts[std::string("shift_") + name] = complex_json(nf.shift);
        return nf.field;
    }

    SeriesControl series() const { return {o_.epsilon, o_.max_terms}; }

private:
    const Options& o_;
    ComplexVector v_raw_;
    ComplexVector X_raw_;
};

// Text mode: one `key: value` line per scalar, complex numbers as a+bi.
void print_text(std::ostream& out, const json& j, const std::string& prefix = "") {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& val = it.value();
        const std::string key = prefix + it.key();
        if (val.is_object() && val.contains("re") && val.contains("im") && val.size() == 2) {
            out << key << ": "
                << format_complex({val["re"].get<double>(), val["im"].get<double>()}) << "\n";
        } else if (val.is_object()) {
            print_text(out, val, key + ".");
        } else if (val.is_array()) {
            out << key << ":";
            for (const auto& e : val) {
                if (e.is_number_float()) {
                    out << " " << format_complex(e.get<double>());
                } else if (e.is_string()) {
                    out << " " << e.get<std::string>();
                } else {
                    out << " " << e.dump();
                }
            }
            out << "\n";
        } else if (val.is_number_float()) {
            out << key << ": " << format_complex(val.get<double>()) << "\n";
        } else if (val.is_string()) {
            out << key << ": " << val.get<std::string>() << "\n";
        } else {
            out << key << ": " << val.dump() << "\n";
        }
    }
}

void emit(std::ostream& out, const Options& o, const json& j) {
    if (o.output == "json") {
        out << j.dump(2) << "\n";
    } else {
        print_text(out, j);
    }
}

json complex_pair(Complex z) { return {{"value_re", z.real()}, {"value_im", z.imag()}}; }

int cmd_weights(const Options& o, std::ostream& out) {
    Job job(o);
    const auto P = job.polynomial();
    json j;
    const double tol = o.tol.value_or(kDefaultTangencyTol);
    if (!job.has_v() && !job.has_X()) throw Error(ErrorCode::MalformedInput, "-v or -X required");
    if (job.has_v()) {
        auto w = weight_of(P, job.field("v", P.num_vars(), j), tol);
        j["kappa"] = complex_json(w.value);
        j["kappa_witness"] = w.witness_exponent;
    }
    if (job.has_X()) {
        auto w = weight_of(P, job.field("X", P.num_vars(), j), tol);
        j["lambda"] = complex_json(w.value);
        j["lambda_witness"] = w.witness_exponent;
    }
    emit(out, o, j);
    return kOk;
}

int cmd_futaki(const Options& o, std::ostream& out) {
    Job job(o);
    const auto P = job.polynomial();
    json j;
    const auto v = job.field("v", P.num_vars(), j);
    const double tol = o.tol.value_or(kDefaultTangencyTol);
    const Complex value = futaki(P, v, tol);
    j.update(complex_pair(value));
    j["kappa"] = complex_json(weight_of(P, v, tol).value);
    emit(out, o, j);
    return kOk;
}

int cmd_tianzhu(const Options& o, std::ostream& out) {
    Job job(o);
    const auto P = job.polynomial();
    json shifts = json::object();
    const auto v = job.field("v", P.num_vars(), shifts);
    const auto X = job.field("X", P.num_vars(), shifts);
    const auto report =
        tian_zhu_invariant(P, v, X, job.series(), o.tol.value_or(kDefaultTangencyTol));
    json j = to_json(report);
    j.update(shifts);
    emit(out, o, j);
    return kOk;
}

int cmd_soliton(const Options& o, std::ostream& out, std::ostream& err) {
    Job job(o);
    const auto P = job.polynomial();
    SolitonOptions opts;
    opts.tol = o.tol.value_or(opts.tol);
    opts.max_iter = o.max_iter;
    opts.series = job.series();
    const auto result = solve_soliton(P, opts);
    emit(out, o, to_json(result));
    if (!result.converged) {
        err << "NotConverged: best residual " << result.residual << " after "
            << result.iterations << " iterations\n";
        return kNumericFailure;
    }
    return kOk;
}

int cmd_phi(const Options& o, std::ostream& out) {
    if (!o.n || !o.d) throw Error(ErrorCode::MalformedInput, "phi needs -n and -d");
    if (*o.n < 2) throw Error(ErrorCode::MalformedInput, "n must be at least 2");
    Job job(o);
    const auto width = static_cast<std::size_t>(*o.n) + 1;
    json shifts = json::object();
    const auto X = job.field("X", width, shifts);
    const auto v = job.has_v() ? job.field("v", width, shifts) : DiagonalField::zero(width);
    json j = to_json(phi_bundle(X, v, *o.n, *o.d, job.series()));
    if (*o.n - *o.d + 1 != 0) {
        j["phi_divdiff"] = complex_json(phi_divdiff(X, *o.n, *o.d));
    } else {
        j["warnings"] = {"NonFano: n - d + 1 = 0; phi is identically 1"};
    }
    if (*o.n - *o.d + 1 < 0) j["warnings"] = {"NonFano: n - d + 1 < 0"};
    j.update(shifts);
    emit(out, o, j);
    return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
    Job job(o);
    const auto P = job.polynomial();
    CheckOptions copts;
    copts.samples = o.samples;
    copts.seed = o.seed;
    json shifts = json::object();
    if (job.has_X()) copts.X = job.field("X", P.num_vars(), shifts);

    const auto items = run_checks(P, copts);
    bool all = true;
    for (const auto& item : items) all = all && item.passed;
    if (o.output == "json") {
        json arr = json::array();
        for (const auto& item : items) {
            arr.push_back({{"name", item.name},
                           {"passed", item.passed},
                           {"observed", item.observed},
                           {"allowed", item.allowed},
                           {"detail", item.detail}});
        }
        json j = {{"polynomial", P.to_string()},
                  {"samples", o.samples},
                  {"seed", o.seed},
                  {"checks", arr},
                  {"passed", all}};
        j.update(shifts);
        out << j.dump(2) << "\n";
    } else {
        out << "polynomial: " << P.to_string() << "\n";
        for (const auto& item : items) {
            out << (item.passed ? "PASS " : "FAIL ") << item.name << ": " << item.detail << "\n";
        }
        out << (all ? "all checks passed" : "some checks FAILED") << "\n";
    }
    return all ? kOk : kCheckFailed;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotTangent: return kNotTangent;
        case ErrorCode::NotConverged:
        case ErrorCode::SigmaZero:
        case ErrorCode::BudgetExceeded: return kNumericFailure;
        default: return kInputError;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Holomorphic invariants of hypersurfaces in CP^n", "krsinv"};
    app.require_subcommand(1);
    Options o;

    auto add_poly = [&](CLI::App* sub) {
        sub->add_option("-F,--poly", o.poly,
                        "polynomial text, JSON object, or @file containing either")
            ->required();
        sub->add_option("-n", o.n, "ambient dimension (default: inferred)");
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--normalize", o.normalize, "subtract the mean from -v/-X and report it");
        sub->add_option("--tol", o.tol, "tangency (or solver) tolerance");
        sub->add_option("--epsilon", o.epsilon, "series tail tolerance")->capture_default_str();
        sub->add_option("--max-terms", o.max_terms, "series term cap")->capture_default_str();
        sub->add_option("--output", o.output, "text or json")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
    };

    auto* weights = app.add_subcommand("weights", "weights kappa/lambda of fields on F");
    add_poly(weights);
    weights->add_option("-v", o.v, "field v (comma-separated complex)");
    weights->add_option("-X", o.X, "field X (comma-separated complex)");
    add_common(weights);

    auto* fut = app.add_subcommand("futaki", "closed-form Futaki invariant F(v)");
    add_poly(fut);
    fut->add_option("-v", o.v, "field v")->required();
    add_common(fut);

    auto* tz = app.add_subcommand("tianzhu", "invariant F_X(v) with intermediates");
    add_poly(tz);
    tz->add_option("-v", o.v, "field v")->required();
    tz->add_option("-X", o.X, "field X")->required();
    add_common(tz);

    auto* sol = app.add_subcommand("soliton", "solve F_X(v_j) = 0 over the tangent family");
    add_poly(sol);
    sol->add_option("--max-iter", o.max_iter, "Newton iteration cap")->capture_default_str();
    add_common(sol);

    auto* phi = app.add_subcommand("phi", "series phi(X) and its derivative data");
    phi->add_option("-n", o.n, "ambient dimension")->required();
    phi->add_option("-d", o.d, "degree")->required();
    phi->add_option("-X", o.X, "field X")->required();
    phi->add_option("-v", o.v, "direction for dphi_v (default 0)");
    add_common(phi);

    auto* chk = app.add_subcommand("check", "run the cross-route verification suite");
    add_poly(chk);
    chk->add_option("-X", o.X, "additional evaluation point");
    chk->add_option("--samples", o.samples, "Monte-Carlo samples per estimate")
        ->check(CLI::Range(std::int64_t{1000}, std::int64_t{1} << 40))
        ->capture_default_str();
    chk->add_option("--seed", o.seed, "master seed")->capture_default_str();
    add_common(chk);

    std::vector<const char*> argv{"krsinv"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (*weights) return cmd_weights(o, out);
        if (*fut) return cmd_futaki(o, out);
        if (*tz) return cmd_tianzhu(o, out);
        if (*sol) return cmd_soliton(o, out, err);
        if (*phi) return cmd_phi(o, out);
        if (*chk) return cmd_check(o, out);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace krs::cli
