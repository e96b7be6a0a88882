#include "krs/oracle.hpp"

#include <cmath>
#include <future>
#include <random>
#include <string>
#include <vector>

#include "krs/error.hpp"

namespace krs {
namespace {

struct Accumulator {
    std::int64_t count = 0;
    Complex mean = 0.0;
    double m2 = 0.0;  // sum |z - mean|^2

    void add(Complex z) {
        ++count;
        const Complex delta = z - mean;
        mean += delta / static_cast<double>(count);
        m2 += std::real(delta * std::conj(z - mean));
    }

    void merge(const Accumulator& other) {
        if (other.count == 0) return;
        if (count == 0) {
            *this = other;
            return;
        }
        const auto total = static_cast<double>(count + other.count);
        const Complex delta = other.mean - mean;
        mean += delta * (static_cast<double>(other.count) / total);
        m2 += other.m2 + std::norm(delta) * static_cast<double>(count) *
                             static_cast<double>(other.count) / total;
        count += other.count;
    }
};

std::uint64_t shard_seed(std::uint64_t seed, int shard) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(shard)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

// Integrand f(t) evaluated on uniform simplex points t.
template <typename Integrand>
McEstimate simplex_mean(std::size_t dim, std::int64_t samples, std::uint64_t seed, int shards,
                        Integrand f) {
    if (samples < kMinSamples) {
        throw Error(ErrorCode::MalformedInput,
                    "at least " + std::to_string(kMinSamples) + " samples required");
    }
    if (shards < 1) throw Error(ErrorCode::MalformedInput, "shards must be positive");

    std::vector<std::future<Accumulator>> jobs;
    for (int k = 0; k < shards; ++k) {
        const std::int64_t count = samples / shards + (k < samples % shards ? 1 : 0);
        jobs.push_back(std::async(std::launch::async, [=] {
            std::mt19937_64 rng(shard_seed(seed, k));
            std::exponential_distribution<double> expo(1.0);
            std::vector<double> t(dim);
            Accumulator acc;
            for (std::int64_t i = 0; i < count; ++i) {
                double total = 0.0;
                for (auto& ti : t) {
                    ti = expo(rng);
                    total += ti;
                }
                for (auto& ti : t) ti /= total;
                acc.add(f(t));
            }
            return acc;
        }));
    }
    Accumulator all;
    for (auto& job : jobs) all.merge(job.get());

    McEstimate est;
    est.mean = all.mean;
    est.samples = all.count;
    est.seed = seed;
    const double variance = all.m2 / static_cast<double>(all.count - 1);
    est.std_error = std::sqrt(variance / static_cast<double>(all.count));
    return est;
}

void check_dims(const DiagonalField& X, int n) {
    if (n < 2 || X.size() != static_cast<std::size_t>(n) + 1) {
        throw Error(ErrorCode::MalformedInput, "field length must be n+1 with n >= 2");
    }
}

}  // namespace

McEstimate mc_phi(const DiagonalField& X, int n, int d, std::int64_t samples, std::uint64_t seed,
                  int shards) {
    check_dims(X, n);
    const double s = n - d + 1;
    const ComplexVector x = X.coeffs();
    return simplex_mean(x.size(), samples, seed, shards, [&x, s](const std::vector<double>& t) {
        Complex u = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) u += x[i] * t[i];
        return std::exp(s * u);
    });
}

McEstimate mc_euler(const DiagonalField& X, const DiagonalField& v, int n, int d,
                    std::int64_t samples, std::uint64_t seed, int shards) {
    check_dims(X, n);
    if (v.size() != X.size()) throw Error(ErrorCode::MalformedInput, "X and v lengths differ");
    const double s = n - d + 1;
    const ComplexVector x = X.coeffs();
    const ComplexVector w = v.coeffs();
    return simplex_mean(x.size(), samples, seed, shards,
                        [&x, &w, s](const std::vector<double>& t) {
                            Complex u = 0.0;
                            Complex lin = 0.0;
                            for (std::size_t i = 0; i < t.size(); ++i) {
                                u += x[i] * t[i];
                                lin += w[i] * t[i];
                            }
                            return s * lin * std::exp(s * u);
                        });
}

}  // namespace krs
