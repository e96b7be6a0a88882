#pragma once

#include <cstdint>

#include "krs/poly.hpp"

namespace krs {

/// Monte-Carlo estimate of a complex expectation.
struct McEstimate {
    Complex mean;
    double std_error = 0.0;  ///< sample standard deviation / sqrt(samples)
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
};

inline constexpr std::int64_t kMinSamples = 1000;
inline constexpr int kDefaultShards = 8;

/// phi(X) = E[exp(s <X, t>)] for t uniform on the standard simplex, which is
/// where the Fubini-Study volume lands under the torus moment map.
///
/// Points are normalized unit-rate exponential deviates. Work is split into
/// `shards` independent streams whose seeds derive from `seed`, so results
/// depend on (seed, shards) only, not on the number of hardware threads.
McEstimate mc_phi(const DiagonalField& X, int n, int d, std::int64_t samples, std::uint64_t seed,
                  int shards = kDefaultShards);

/// s E[<v, t> exp(s <X, t>)], i.e. D_v phi(X); v = X gives the Euler sum
/// sum_i X_i dphi/dX_i.
McEstimate mc_euler(const DiagonalField& X, const DiagonalField& v, int n, int d,
                    std::int64_t samples, std::uint64_t seed, int shards = kDefaultShards);

}  // namespace krs
