#pragma once

#include "grstrata/grassmann.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace grstrata {

struct CaseFailure {
    std::uint64_t seed = 0;
    std::string desc;

    friend bool operator==(const CaseFailure&, const CaseFailure&) = default;
};

struct VerificationReport {
    std::string suite;
    std::size_t cases = 0;
    std::size_t passed = 0;
    std::vector<CaseFailure> failures;
    nlohmann::ordered_json params;

    bool ok() const { return passed == cases; }
    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// {"suite", "cases", "passed", "failures": [{"seed", "desc"}], "params": {...}}
nlohmann::ordered_json report_to_json(const VerificationReport& r);

/// Every case is a pure function of (parameters, seed, case index), so both
/// modes produce identical reports. Serial is the reference.
enum class Execution { Serial, Parallel };

/// Per-case seed derived from the suite seed.
std::uint64_t case_seed(std::uint64_t seed, std::size_t index);

// ---------------------------------------------------------------------------
// Dimension by chart rank

/// Real rank of the central-difference Jacobian of the explicit chart around c
/// (graph coordinates of gamma(c) in Gr(i, n), then of each H_j inside gamma(c)),
/// read through the orthogonal projectors. Columns are scaled to unit norm and
/// the rank is taken from column-pivoted QR with relative threshold tol.
std::size_t chart_jacobian_rank(const Configuration& c, double step, double tol);
/// Number of real chart parameters, 2 (i(n - i) + hk(i - k)).
std::size_t chart_parameter_count(const Configuration& c);

/// Samples `samples` configurations of s and requires the chart rank to equal
/// 2 * stratum_dimension(s) at steps 1e-4 and 1e-5. This realizes the formula as
/// a lower bound; the matching upper bound is only evidenced by the
/// semicontinuity checks in check_adjacency.
VerificationReport check_dimension(const StratumId& s, std::size_t samples, double tol, std::uint64_t seed,
                                   Execution mode = Execution::Parallel);

// ---------------------------------------------------------------------------
// Adjacency

/// Orthogonal projector X^* (X X^*)^{-1} X onto the row span, exact.
Matrix orthogonal_projector(const Subspace& s);
/// max over points of the max-entry distance of the orthogonal projectors,
/// with |a + bi| taken as max(|a|, |b|).
Rational chart_distance(const Configuration& a, const Configuration& b);

/// A configuration in stratum target_i within chart distance eps of c, built by
/// tilting redundant basis vectors toward fresh standard directions. nullopt if
/// no tilt small enough was found.
std::optional<Configuration> adjacency_witness(const Configuration& c, std::size_t target_i, const Rational& eps);

/// Case 0: witness at eps. Case 1: witness at eps/2. Cases 2..trials+1: random
/// lattice perturbations closer than eps must not lower the stratum.
/// Throws Unreachable unless stratum_of(c) <= target_i <= min(hk, n).
VerificationReport check_adjacency(const Configuration& c, std::size_t target_i, const Rational& eps,
                                   std::size_t trials, std::uint64_t seed, Execution mode = Execution::Parallel);

// ---------------------------------------------------------------------------
// Trivialization round trips

enum class RoundTrip { Gamma, Pr, Eta };

std::string to_string(RoundTrip which);
/// "gamma", "pr", "eta"; throws Parse otherwise.
RoundTrip round_trip_from_string(const std::string& name);
/// (2,3,2,5), (3,6,2,6) and (2,3,2,4).
StratumId default_roundtrip_stratum(RoundTrip which);

/// Cases cycle through `grid`. Each case trivializes a sample and lifts it back,
/// lifts a random chart point and trivializes it again, and checks that the
/// base component equals the fibration map. Failures are recorded, never thrown.
VerificationReport run_roundtrip_suite(RoundTrip which, std::span<const StratumId> grid, std::size_t cases,
                                       std::uint64_t seed, Execution mode = Execution::Parallel);

}  // namespace grstrata
