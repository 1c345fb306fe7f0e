#pragma once

#include "grstrata/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace grstrata {

/// A point of Gr(k, n): the row span of a k x n basis kept in reduced row
/// echelon form, so two subspaces are equal iff their bases are equal.
class Subspace {
public:
    /// Spans the rows of raw_basis. Throws ZeroSubspace on rank 0.
    static Subspace canonicalize(const Matrix& raw_basis);

    std::size_t n() const { return basis_.cols(); }
    std::size_t k() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(std::span<const GaussianRational> vector) const;
    bool contains(const Subspace& other) const;
    bool is_full() const { return k() == n(); }

    /// Image under x -> x * g.
    Subspace transformed(const Matrix& g) const;

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

private:
    Subspace(Matrix basis, std::vector<std::size_t> pivots) : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

Subspace canonicalize(const Matrix& raw_basis, std::size_t n);
Subspace standard_subspace(std::span<const std::size_t> coordinates, std::size_t n);
Subspace whole_space(std::size_t n);

/// Ordered h-tuple of pairwise distinct subspaces sharing (k, n).
class Configuration {
public:
    /// Throws InvalidConfiguration on empty input, mixed (k, n) or repeated points.
    explicit Configuration(std::vector<Subspace> points);

    std::size_t h() const { return points_.size(); }
    std::size_t k() const { return points_.front().k(); }
    std::size_t n() const { return points_.front().n(); }
    const std::vector<Subspace>& points() const { return points_; }
    const Subspace& operator[](std::size_t j) const { return points_[j]; }

    Configuration transformed(const Matrix& g) const;

    friend bool operator==(const Configuration& a, const Configuration& b) = default;

private:
    std::vector<Subspace> points_;
};

/// Index data (h, i, k, n) of the stratum F_h^i(k, n).
struct StratumId {
    std::size_t h = 1;
    std::size_t i = 1;
    std::size_t k = 1;
    std::size_t n = 2;

    friend bool operator==(const StratumId&, const StratumId&) = default;
};

Subspace subspace_sum(std::span<const Subspace> parts);
/// nullopt is the zero subspace.
std::optional<Subspace> subspace_intersection(const Subspace& a, const Subspace& b);
std::size_t intersection_dimension(const Subspace& a, const Subspace& b);
/// Completes the basis with the standard vectors of the non-pivot columns.
Subspace complement(const Subspace& v);
/// n x n idempotent with image `target` and kernel `along` (row convention).
Matrix projection_along(const Subspace& target, const Subspace& along);
bool is_direct_sum_complement(const Subspace& a, const Subspace& b);

/// Coordinates of a subspace of w in the canonical basis of w; the result
/// lives in C^{dim w}. Throws OutsideChart if v is not contained in w.
Subspace coordinates_in(const Subspace& v, const Subspace& w);
/// Inverse of coordinates_in.
Subspace embed_in(const Subspace& coords, const Subspace& w);

std::size_t stratum_of(const Configuration& c);
/// dim of the span of the stacked bases, without requiring distinctness.
std::size_t sum_dimension(std::span<const Subspace> parts);

/// Throws InvalidStratum unless 0 < k < n and h >= 1.
void validate(const StratumId& s);
bool is_stratum_nonempty(const StratumId& s);
std::size_t stratum_dimension(const StratumId& s);
std::vector<StratumId> strata_list(std::size_t h, std::size_t k, std::size_t n);
std::vector<StratumId> stratum_closure(const StratumId& s);
bool is_open_stratum(const StratumId& s);

Configuration sample_configuration(const StratumId& s, std::uint64_t seed);

}  // namespace grstrata
