#include "krs/report.hpp"

namespace krs {

using nlohmann::json;

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const InvariantReport& r) {
    return {
        {"value_re", r.value.real()},
        {"value_im", r.value.imag()},
        {"kappa", complex_json(r.kappa)},
        {"lambda", complex_json(r.lambda)},
        {"phi", complex_json(r.phi)},
        {"sigma", complex_json(r.sigma)},
        {"dsigma_v", complex_json(r.dsigma_v)},
        {"c_X", complex_json(r.c_X)},
        {"terms_used", r.terms_used},
        {"tail_bound", r.tail_bound},
        {"warnings", r.warnings},
    };
}

json to_json(const SolitonResult& r) {
    return {
        {"X_star", r.X_star},
        {"coefficients", r.coefficients},
        {"basis_dim", r.basis_dim},
        {"residual", r.residual},
        {"iterations", r.iterations},
        {"converged", r.converged},
    };
}

json to_json(const McEstimate& e) {
    return {
        {"mean", complex_json(e.mean)},
        {"stderr", e.std_error},
        {"samples", e.samples},
        {"seed", e.seed},
    };
}

json to_json(const PhiBundle& b) {
    return {
        {"phi", complex_json(b.phi)},
        {"dphi_v", complex_json(b.dphi_v)},
        {"euler", complex_json(b.euler)},
        {"deuler_v", complex_json(b.deuler_v)},
        {"terms_used", b.terms_used},
        {"tail_bound", b.tail_bound},
    };
}

json to_json(const HomogeneousPolynomial& P) {
    json terms = json::array();
    for (const auto& [exps, coeff] : P.terms()) {
        terms.push_back({{"exps", exps}, {"re", coeff.real()}, {"im", coeff.imag()}});
    }
    return {{"n", P.ambient_dim()}, {"terms", terms}};
}

}  // namespace krs
