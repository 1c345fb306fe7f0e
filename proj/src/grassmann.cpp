#include "grstrata/grassmann.hpp"

#include "grstrata/error.hpp"
#include "grstrata/random.hpp"

#include <algorithm>
#include <string>

namespace grstrata {

Subspace Subspace::canonicalize(const Matrix& raw_basis) {
    auto red = rref(raw_basis);
    if (red.rank == 0) throw Error(ErrorCode::ZeroSubspace, "basis has rank 0");
    return {red.matrix.row_block(0, red.rank), std::move(red.pivots)};
}

bool Subspace::contains(std::span<const GaussianRational> vector) const {
    if (vector.size() != n()) throw Error(ErrorCode::MixedAmbient, "vector length differs from ambient dimension");
    // Reduce against the echelon basis; the residual vanishes iff the vector lies in the span.
    std::vector<GaussianRational> residual(vector.begin(), vector.end());
    for (std::size_t r = 0; r < k(); ++r) {
        const GaussianRational f = residual[pivots_[r]];
        if (f.is_zero()) continue;
        for (std::size_t c = pivots_[r]; c < n(); ++c) {
            if (!basis_(r, c).is_zero()) residual[c] -= f * basis_(r, c);
        }
    }
    return std::all_of(residual.begin(), residual.end(), [](const auto& x) { return x.is_zero(); });
}

bool Subspace::contains(const Subspace& other) const {
    if (other.n() != n()) throw Error(ErrorCode::MixedAmbient, "subspaces live in different ambient spaces");
    for (std::size_t r = 0; r < other.k(); ++r) {
        if (!contains(other.basis().row(r))) return false;
    }
    return true;
}

Subspace Subspace::transformed(const Matrix& g) const { return canonicalize(basis_ * g); }

Subspace canonicalize(const Matrix& raw_basis, std::size_t n) {
    if (raw_basis.cols() != n) throw Error(ErrorCode::DimensionMismatch, "basis column count differs from n");
    return Subspace::canonicalize(raw_basis);
}

Subspace standard_subspace(std::span<const std::size_t> coordinates, std::size_t n) {
    Matrix b(coordinates.size(), n);
    for (std::size_t r = 0; r < coordinates.size(); ++r) b(r, coordinates[r]) = 1;
    return Subspace::canonicalize(b);
}

Subspace whole_space(std::size_t n) { return Subspace::canonicalize(Matrix::identity(n)); }

Configuration::Configuration(std::vector<Subspace> points) : points_(std::move(points)) {
    if (points_.empty()) throw Error(ErrorCode::InvalidConfiguration, "a configuration needs at least one point");
    for (const auto& p : points_) {
        if (p.k() != k() || p.n() != n()) {
            throw Error(ErrorCode::InvalidConfiguration, "points do not share (k, n)");
        }
    }
    for (std::size_t a = 0; a < points_.size(); ++a) {
        for (std::size_t b = a + 1; b < points_.size(); ++b) {
            if (points_[a] == points_[b]) {
                throw Error(ErrorCode::InvalidConfiguration, "points " + std::to_string(a) + " and " +
                                                                 std::to_string(b) + " coincide; points must be distinct");
            }
        }
    }
}

Configuration Configuration::transformed(const Matrix& g) const {
    std::vector<Subspace> moved;
    moved.reserve(h());
    for (const auto& p : points_) moved.push_back(p.transformed(g));
    return Configuration(std::move(moved));
}

namespace {

void require_common_ambient(std::span<const Subspace> parts) {
    for (const auto& p : parts) {
        if (p.n() != parts.front().n()) throw Error(ErrorCode::MixedAmbient, "subspaces live in different ambient spaces");
    }
}

Matrix stacked_bases(std::span<const Subspace> parts) {
    std::vector<Matrix> bases;
    bases.reserve(parts.size());
    for (const auto& p : parts) bases.push_back(p.basis());
    return vstack(bases);
}

}  // namespace

Subspace subspace_sum(std::span<const Subspace> parts) {
    if (parts.empty()) throw Error(ErrorCode::ZeroSubspace, "sum of an empty list");
    require_common_ambient(parts);
    return Subspace::canonicalize(stacked_bases(parts));
}

std::size_t sum_dimension(std::span<const Subspace> parts) {
    if (parts.empty()) return 0;
    require_common_ambient(parts);
    return rank(stacked_bases(parts));
}

std::optional<Subspace> subspace_intersection(const Subspace& a, const Subspace& b) {
    const Subspace both[] = {a, b};
    require_common_ambient(both);
    // Rows z of the left kernel of [A; B] give z_a * A = -z_b * B, a vector of the intersection.
    const Matrix relations = kernel(stacked_bases(both).transpose());
    if (relations.rows() == 0) return std::nullopt;
    return Subspace::canonicalize(relations.col_block(0, a.k()) * a.basis());
}

std::size_t intersection_dimension(const Subspace& a, const Subspace& b) {
    const Subspace both[] = {a, b};
    return a.k() + b.k() - sum_dimension(both);
}

Subspace complement(const Subspace& v) {
    if (v.is_full()) throw Error(ErrorCode::FullSpace, "the whole space has no proper complement");
    std::vector<bool> pivot(v.n(), false);
    for (auto p : v.pivots()) pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < v.n(); ++c) {
        if (!pivot[c]) free.push_back(c);
    }
    return standard_subspace(free, v.n());
}

bool is_direct_sum_complement(const Subspace& a, const Subspace& b) {
    if (a.n() != b.n()) throw Error(ErrorCode::MixedAmbient, "subspaces live in different ambient spaces");
    if (a.k() + b.k() != a.n()) return false;
    const Subspace both[] = {a, b};
    return sum_dimension(both) == a.n();
}

Matrix projection_along(const Subspace& target, const Subspace& along) {
    if (!is_direct_sum_complement(target, along)) {
        throw Error(ErrorCode::NotComplementary, "target and kernel do not form a direct sum of C^n");
    }
    const Matrix frame = vstack(target.basis(), along.basis());
    const Matrix images = vstack(target.basis(), Matrix::zero(along.k(), along.n()));
    return solve(frame, images);
}

Subspace coordinates_in(const Subspace& v, const Subspace& w) {
    if (!w.contains(v)) throw Error(ErrorCode::OutsideChart, "subspace is not contained in the frame");
    // With w in echelon form, the coefficient on basis row s is the entry in pivot column s.
    Matrix coords(v.k(), w.k());
    for (std::size_t r = 0; r < v.k(); ++r)
        for (std::size_t s = 0; s < w.k(); ++s) coords(r, s) = v.basis()(r, w.pivots()[s]);
    return Subspace::canonicalize(coords);
}

Subspace embed_in(const Subspace& coords, const Subspace& w) {
    if (coords.n() != w.k()) throw Error(ErrorCode::DimensionMismatch, "coordinates do not match frame dimension");
    return Subspace::canonicalize(coords.basis() * w.basis());
}

std::size_t stratum_of(const Configuration& c) { return sum_dimension(c.points()); }

void validate(const StratumId& s) {
    if (s.h < 1 || s.k < 1 || s.k >= s.n) {
        throw Error(ErrorCode::InvalidStratum, "need h >= 1 and 0 < k < n");
    }
}

bool is_stratum_nonempty(const StratumId& s) {
    validate(s);
    if (s.h == 1) return s.i == s.k;
    return s.i >= s.k + 1 && s.i <= std::min(s.h * s.k, s.n);
}

bool is_open_stratum(const StratumId& s) {
    return is_stratum_nonempty(s) && s.i == std::min(s.h * s.k, s.n);
}

std::size_t stratum_dimension(const StratumId& s) {
    if (!is_stratum_nonempty(s)) throw Error(ErrorCode::EmptyStratum, "stratum is empty");
    return s.i * (s.n - s.i) + s.h * s.k * (s.i - s.k);
}

std::vector<StratumId> strata_list(std::size_t h, std::size_t k, std::size_t n) {
    validate({h, k, k, n});
    if (h == 1) return {{1, k, k, n}};
    std::vector<StratumId> out;
    for (std::size_t i = k + 1; i <= std::min(h * k, n); ++i) out.push_back({h, i, k, n});
    return out;
}

std::vector<StratumId> stratum_closure(const StratumId& s) {
    if (!is_stratum_nonempty(s)) throw Error(ErrorCode::EmptyStratum, "stratum is empty");
    if (s.h == 1) return {s};
    std::vector<StratumId> out;
    for (std::size_t i = s.k + 1; i <= s.i; ++i) out.push_back({s.h, i, s.k, s.n});
    return out;
}

Configuration sample_configuration(const StratumId& s, std::uint64_t seed) {
    if (!is_stratum_nonempty(s)) throw Error(ErrorCode::EmptyStratum, "stratum is empty");
    const auto unit = [&](std::size_t c) {
        Matrix e(1, s.n);
        e(0, c) = 1;
        return e;
    };

    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        Rng rng(mix_seed(seed, attempt));
        std::vector<Matrix> raw;
        raw.reserve(s.h);

        // H_1 = span(e_0..e_{k-1}); each later point takes up to k fresh directions of
        // V = span(e_0..e_{i-1}) and fills up with directions already used.
        std::vector<Matrix> first;
        for (std::size_t c = 0; c < s.k; ++c) first.push_back(unit(c));
        raw.push_back(vstack(first));
        std::size_t used = s.k;
        for (std::size_t j = 1; j < s.h; ++j) {
            const std::size_t fresh = std::min(s.k, s.i - used);
            std::vector<Matrix> rows;
            if (fresh > 0) {
                for (std::size_t c = 0; c < fresh; ++c) rows.push_back(unit(used + c));
                for (std::size_t c = 0; c + fresh < s.k; ++c) rows.push_back(unit(c));
                used += fresh;
            } else {
                // V is exhausted: tilt e_0 toward e_k, which lies in V because i >= k + 1.
                Matrix tilted = unit(0);
                tilted(0, s.k) = GaussianRational(rng.nonzero_rational(9, 9), rng.nonzero_rational(9, 9));
                rows.push_back(std::move(tilted));
                for (std::size_t c = 1; c < s.k; ++c) rows.push_back(unit(c));
            }
            raw.push_back(vstack(rows));
        }

        const Matrix g = random_invertible(s.n, rng);
        std::vector<Subspace> points;
        points.reserve(s.h);
        for (const auto& b : raw) points.push_back(Subspace::canonicalize(b * g));
        try {
            Configuration c(std::move(points));
            if (stratum_of(c) == s.i) return c;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::InvalidConfiguration) throw;
        }
    }
    throw Error(ErrorCode::Unreachable, "sampler failed to produce distinct points");
}

}  // namespace grstrata
