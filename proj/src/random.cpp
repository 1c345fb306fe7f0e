#include "grstrata/random.hpp"

#include "grstrata/grassmann.hpp"

namespace grstrata {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

long Rng::uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return lo + static_cast<long>(x % span);
}

GaussianRational Rng::gaussian_integer(long bound) {
    const long re = uniform(-bound, bound);
    const long im = uniform(-bound, bound);
    return {Rational(re), Rational(im)};
}

Rational Rng::nonzero_rational(long num_bound, long den_bound) {
    long p = 0;
    while (p == 0) p = uniform(-num_bound, num_bound);
    const long q = uniform(1, den_bound);
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, long bound) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.gaussian_integer(bound);
    return m;
}

Matrix random_invertible(std::size_t n, Rng& rng, long bound) {
    for (;;) {
        Matrix g = random_matrix(n, n, rng, bound);
        if (rank(g) == n) return g;
    }
}

Subspace random_subspace(std::size_t k, std::size_t n, Rng& rng, long bound) {
    for (;;) {
        Matrix b = random_matrix(k, n, rng, bound);
        if (rank(b) == k) return Subspace::canonicalize(b);
    }
}

}  // namespace grstrata
