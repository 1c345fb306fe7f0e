#include "grstrata/error.hpp"
#include "grstrata/random.hpp"
#include "grstrata/verify.hpp"

#include <gtest/gtest.h>

using namespace grstrata;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::Parse;
}

// Signed permutation matrices are unitary with rational entries.
Matrix signed_permutation(std::size_t n, Rng& rng) {
    std::vector<std::size_t> perm(n);
    for (std::size_t j = 0; j < n; ++j) perm[j] = j;
    for (std::size_t a = n; a > 1; --a) std::swap(perm[a - 1], perm[std::size_t(rng.uniform(0, long(a) - 1))]);
    Matrix g(n, n);
    for (std::size_t j = 0; j < n; ++j) g(j, perm[j]) = rng.uniform(0, 1) ? 1 : -1;
    return g;
}

}  // namespace

TEST(ChartRank, GrassmannianCase) {
    for (std::size_t k = 1; k <= 3; ++k) {
        for (std::size_t n = k + 1; n <= 6; ++n) {
            const Configuration c = sample_configuration({1, k, k, n}, n);
            EXPECT_EQ(chart_parameter_count(c), 2 * k * (n - k));
            EXPECT_EQ(chart_jacobian_rank(c, 1e-4, 1e-6), 2 * k * (n - k));
        }
    }
}

TEST(ChartRank, PairOfPlanesInFourSpace) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Configuration c = sample_configuration({2, 3, 2, 4}, seed);
        EXPECT_EQ(chart_jacobian_rank(c, 1e-4, 1e-6), 14u);
        EXPECT_EQ(chart_jacobian_rank(c, 1e-5, 1e-6), 14u);
    }
}

TEST(CheckDimension, SmallGrid) {
    for (std::size_t h = 1; h <= 3; ++h) {
        for (std::size_t k = 1; k <= 2; ++k) {
            for (std::size_t n = k + 1; n <= 5; ++n) {
                for (const auto& s : strata_list(h, k, n)) {
                    const auto r = check_dimension(s, 2, 1e-6, 7);
                    EXPECT_TRUE(r.ok()) << report_to_json(r).dump();
                }
            }
        }
    }
    EXPECT_EQ(code_of([] { check_dimension({2, 2, 2, 4}, 1, 1e-6, 0); }), ErrorCode::EmptyStratum);
}

TEST(Projector, HermitianIdempotentWithRightImage) {
    Rng rng(3);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = std::size_t(rng.uniform(2, 5));
        const std::size_t k = std::size_t(rng.uniform(1, long(n) - 1));
        const Subspace s = random_subspace(k, n, rng);
        const Matrix p = orthogonal_projector(s);
        EXPECT_EQ(p * p, p);
        EXPECT_EQ(p.conj_transpose(), p);
        EXPECT_EQ(Subspace::canonicalize(p), s);
    }
}

TEST(ChartDistance, MetricProperties) {
    Rng rng(4);
    for (int t = 0; t < 40; ++t) {
        const StratumId s{2, 3, 2, 4};
        const Configuration a = sample_configuration(s, rng.next());
        const Configuration b = sample_configuration(s, rng.next());
        EXPECT_EQ(chart_distance(a, a), 0);
        EXPECT_EQ(chart_distance(a, b), chart_distance(b, a));
        if (a != b) EXPECT_GT(chart_distance(a, b), 0);
        const Matrix g = signed_permutation(4, rng);
        EXPECT_EQ(chart_distance(a.transformed(g), b.transformed(g)), chart_distance(a, b));
    }
}

TEST(Adjacency, OpenStratumIsItsOwnWitness) {
    const Configuration c = sample_configuration({2, 4, 2, 5}, 1);
    const auto w = adjacency_witness(c, 4, Rational(1, 1000));
    ASSERT_TRUE(w);
    EXPECT_EQ(*w, c);
}

TEST(Adjacency, WitnessesAndSemicontinuity) {
    const Rational eps(1, 1000);
    const Configuration c = sample_configuration({3, 3, 2, 6}, 2);
    for (std::size_t target = 4; target <= 6; ++target) {
        const auto w = adjacency_witness(c, target, eps);
        ASSERT_TRUE(w);
        EXPECT_EQ(stratum_of(*w), target);
        EXPECT_LT(chart_distance(*w, c), eps);
    }
    const auto r = check_adjacency(c, 4, eps, 500, 11);
    EXPECT_EQ(r.cases, 502u);
    EXPECT_TRUE(r.ok()) << report_to_json(r).dump();
}

TEST(Adjacency, RejectsTargetsOutsideClosureRange) {
    const Configuration c = sample_configuration({2, 3, 2, 4}, 0);
    EXPECT_EQ(code_of([&] { check_adjacency(c, 2, Rational(1, 10), 1, 0); }), ErrorCode::Unreachable);
    EXPECT_EQ(code_of([&] { check_adjacency(c, 5, Rational(1, 10), 1, 0); }), ErrorCode::Unreachable);
}

TEST(RoundTrip, DefaultGridsPass) {
    for (const auto which : {RoundTrip::Gamma, RoundTrip::Pr, RoundTrip::Eta}) {
        const StratumId s = default_roundtrip_stratum(which);
        const auto r = run_roundtrip_suite(which, std::span(&s, 1), 100, 1);
        EXPECT_EQ(r.cases, 100u);
        EXPECT_TRUE(r.ok()) << report_to_json(r).dump();
        EXPECT_EQ(r.suite, to_string(which));
        EXPECT_EQ(round_trip_from_string(r.suite), which);
    }
    EXPECT_EQ(code_of([] { round_trip_from_string("delta"); }), ErrorCode::Parse);
}

TEST(RoundTrip, WiderGrids) {
    const std::vector<StratumId> gamma = {{2, 3, 2, 5}, {3, 4, 2, 6}, {2, 2, 1, 4}, {1, 2, 2, 4}};
    const std::vector<StratumId> pr = {{2, 4, 2, 4}, {2, 4, 2, 6}, {3, 3, 1, 5}};
    const std::vector<StratumId> eta = {{2, 3, 2, 5}, {2, 4, 3, 4}, {2, 5, 3, 6}};
    EXPECT_TRUE(run_roundtrip_suite(RoundTrip::Gamma, gamma, 40, 2).ok());
    EXPECT_TRUE(run_roundtrip_suite(RoundTrip::Pr, pr, 30, 2).ok());
    EXPECT_TRUE(run_roundtrip_suite(RoundTrip::Eta, eta, 30, 2).ok());
}

TEST(RoundTrip, InadmissibleGridIsRecordedNotThrown) {
    const StratumId bad{2, 3, 2, 4};
    const auto r = run_roundtrip_suite(RoundTrip::Pr, std::span(&bad, 1), 3, 0);
    EXPECT_EQ(r.passed, 0u);
    EXPECT_EQ(r.failures.size(), 3u);
}

TEST(Report, JsonShape) {
    const StratumId s = default_roundtrip_stratum(RoundTrip::Eta);
    const auto j = report_to_json(run_roundtrip_suite(RoundTrip::Eta, std::span(&s, 1), 3, 5));
    std::vector<std::string> keys;
    for (const auto& [key, value] : j.items()) keys.push_back(key);
    EXPECT_EQ(keys, (std::vector<std::string>{"suite", "cases", "passed", "failures", "params"}));
    EXPECT_EQ(j.at("cases"), 3);
    EXPECT_TRUE(j.at("failures").empty());
}

// The contract of the parallel path: identical reports, failures included.
TEST(Execution, SerialAndParallelAgree) {
    const StratumId s{2, 3, 2, 5};
    EXPECT_EQ(check_dimension(s, 4, 1e-6, 3, Execution::Serial), check_dimension(s, 4, 1e-6, 3, Execution::Parallel));

    const Configuration c = sample_configuration({2, 3, 2, 5}, 4);
    EXPECT_EQ(check_adjacency(c, 4, Rational(1, 1000), 20, 6, Execution::Serial),
              check_adjacency(c, 4, Rational(1, 1000), 20, 6, Execution::Parallel));

    const std::vector<StratumId> mixed = {{2, 3, 2, 5}, {2, 3, 2, 4}};
    for (const auto which : {RoundTrip::Gamma, RoundTrip::Pr, RoundTrip::Eta}) {
        const auto serial = run_roundtrip_suite(which, mixed, 10, 8, Execution::Serial);
        EXPECT_EQ(serial, run_roundtrip_suite(which, mixed, 10, 8, Execution::Parallel));
        EXPECT_EQ(serial.failures.size(), serial.cases - serial.passed);
    }
}
