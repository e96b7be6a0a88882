#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "krs/poly.hpp"

namespace krs {

struct CheckItem {
    std::string name;
    bool passed = false;
    double observed = 0.0;  ///< discrepancy actually measured
    double allowed = 0.0;   ///< threshold it was held to
    std::string detail;
};

struct CheckOptions {
    std::int64_t samples = 200000;
    std::uint64_t seed = 12345;
    std::optional<DiagonalField> X;  ///< extra evaluation point
};

/// Cross-checks every evaluation route on one polynomial: series against
/// divided differences and Monte Carlo, the X = 0 reduction against the
/// closed-form Futaki invariant, and D_v sigma against finite differences.
std::vector<CheckItem> run_checks(const HomogeneousPolynomial& P, const CheckOptions& opts = {});

}  // namespace krs
