#pragma once

#include "grstrata/matrix.hpp"

#include <cstdint>
#include <random>

namespace grstrata {

class Subspace;

/// splitmix64 finalizer; used to derive independent per-case seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded generator whose draws are identical on every platform
/// (std distributions are implementation-defined, so bounded draws are done here).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi);
    /// Gaussian integer with both parts in [-bound, bound].
    GaussianRational gaussian_integer(long bound);
    /// Nonzero rational p/q with |p| <= num_bound, 1 <= q <= den_bound.
    Rational nonzero_rational(long num_bound, long den_bound);

private:
    std::mt19937_64 engine_;
};

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, long bound = 3);
/// Invertible n x n matrix with small Gaussian-integer entries (resampled until invertible).
Matrix random_invertible(std::size_t n, Rng& rng, long bound = 2);
Subspace random_subspace(std::size_t k, std::size_t n, Rng& rng, long bound = 3);

}  // namespace grstrata
