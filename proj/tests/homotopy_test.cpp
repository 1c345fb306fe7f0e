#include "grstrata/error.hpp"
#include "grstrata/homotopy.hpp"
#include "grstrata/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>

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

const GroupExpr Z = GroupExpr::free_abelian(1);
GroupExpr Zr(std::size_t r) { return GroupExpr::free_abelian(r); }

// Every nonempty stratum with h <= hmax, k <= kmax, n <= nmax.
std::vector<StratumId> grid(std::size_t hmax, std::size_t kmin, std::size_t kmax, std::size_t nmax) {
    std::vector<StratumId> out;
    for (std::size_t h = 1; h <= hmax; ++h) {
        for (std::size_t k = kmin; k <= kmax; ++k) {
            for (std::size_t n = k + 1; n <= nmax; ++n) {
                for (const auto& s : strata_list(h, k, n)) out.push_back(s);
            }
        }
    }
    return out;
}

// Random factor drawn from a small alphabet; never Product or Unknown.
GroupExpr random_leaf(Rng& rng) {
    switch (rng.uniform(0, 3)) {
        case 0: return GroupExpr::zero();
        case 1: return Zr(static_cast<std::size_t>(rng.uniform(0, 4)));
        case 2: return GroupExpr::pure_sphere_braid(static_cast<std::size_t>(rng.uniform(2, 5)));
        default: return GroupExpr::symmetric(static_cast<std::size_t>(rng.uniform(1, 5)));
    }
}

}  // namespace

TEST(GroupExpr, Normalization) {
    EXPECT_EQ(Zr(0), GroupExpr::zero());
    EXPECT_EQ(GroupExpr::product(Zr(2), Zr(3)), Zr(5));
    EXPECT_EQ(GroupExpr::product(GroupExpr::zero(), Z), Z);
    EXPECT_EQ(GroupExpr::product({}), GroupExpr::zero());
    EXPECT_EQ(GroupExpr::product(GroupExpr::symmetric(3), GroupExpr::zero()), GroupExpr::symmetric(3));

    const auto u = GroupExpr::unknown("x");
    EXPECT_EQ(GroupExpr::product(Z, u), u);
    EXPECT_EQ(GroupExpr::product(GroupExpr::product(u, Z), GroupExpr::symmetric(2)), u);
}

TEST(GroupExpr, NormalFormIsPermutationStable) {
    Rng rng(11);
    for (int t = 0; t < 300; ++t) {
        std::vector<GroupExpr> fs;
        const int m = static_cast<int>(rng.uniform(0, 6));
        for (int f = 0; f < m; ++f) fs.push_back(random_leaf(rng));
        const GroupExpr ref = GroupExpr::product(fs);

        std::vector<GroupExpr> shuffled = fs;
        for (std::size_t a = shuffled.size(); a > 1; --a) {
            std::swap(shuffled[a - 1], shuffled[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(a) - 1))]);
        }
        EXPECT_EQ(GroupExpr::product(shuffled), ref);

        // Nesting does not matter either.
        if (fs.size() >= 2) {
            std::vector<GroupExpr> head(fs.begin(), fs.begin() + 1), tail(fs.begin() + 1, fs.end());
            EXPECT_EQ(GroupExpr::product(GroupExpr::product(head), GroupExpr::product(tail)), ref);
        }
        // Idempotent: normalizing a normal form is a no-op.
        EXPECT_EQ(GroupExpr::product({ref}), ref);

        std::size_t rank = 0;
        for (const auto& f : fs) {
            if (f.kind() == GroupExpr::Kind::FreeAbelian) rank += f.index();
        }
        std::size_t ref_rank = 0;
        if (ref.kind() == GroupExpr::Kind::FreeAbelian) ref_rank = ref.index();
        if (ref.kind() == GroupExpr::Kind::Product && ref.factors().front().kind() == GroupExpr::Kind::FreeAbelian) {
            ref_rank = ref.factors().front().index();
        }
        EXPECT_EQ(ref_rank, rank);

        EXPECT_EQ(GroupExpr::from_json(ref.to_json()), ref);
    }
}

TEST(GroupExpr, GoldenRenderings) {
    EXPECT_EQ(GroupExpr::zero().to_string(), "0");
    EXPECT_EQ(Z.to_string(), "Z");
    EXPECT_EQ(Zr(3).to_string(), "Z^3");
    EXPECT_EQ(GroupExpr::pure_sphere_braid(4).to_string(), "PB_4(S^2)");
    EXPECT_EQ(GroupExpr::symmetric(3).to_string(), "Sigma_3");
    EXPECT_EQ(GroupExpr::product({GroupExpr::symmetric(2), Zr(2), GroupExpr::pure_sphere_braid(3)}).to_string(),
              "Z^2 x PB_3(S^2) x Sigma_2");
    EXPECT_EQ(GroupExpr::unknown(kNotComputed).to_string(), "Unknown(not computed in paper)");

    EXPECT_EQ(Zr(2).to_json().dump(), R"({"variant":"FreeAbelian","rank":2})");
    EXPECT_EQ(GroupExpr::zero().to_json().dump(), R"({"variant":"Zero"})");
    EXPECT_EQ(GroupExpr::symmetric(3).to_json().dump(), R"({"variant":"Atom","name":"Symmetric","h":3})");
    EXPECT_EQ(GroupExpr::product(Z, GroupExpr::symmetric(2)).to_json().dump(),
              R"({"variant":"Product","factors":[{"variant":"FreeAbelian","rank":1},)"
              R"({"variant":"Atom","name":"Symmetric","h":2}]})");
    EXPECT_EQ(GroupExpr::unknown("r").to_json().dump(), R"({"variant":"Unknown","reason":"r"})");

    EXPECT_EQ(code_of([] { GroupExpr::from_json({{"variant", "Torsion"}}); }), ErrorCode::Parse);
}

TEST(Stiefel, PaperValues) {
    for (std::size_t n = 2; n <= 12; ++n) {
        EXPECT_EQ(stiefel_pi(3, n - 1, n), Z) << n;
        EXPECT_EQ(stiefel_pi(1, n, n), Z) << n;
        EXPECT_EQ(stiefel_pi(2, n, n), GroupExpr::zero()) << n;
        EXPECT_EQ(stiefel_pi(3, n, n), Z) << n;
    }
    EXPECT_EQ(stiefel_pi(2, 2, 5), GroupExpr::zero());
    EXPECT_EQ(stiefel_pi(1, 1, 1), Z);
    EXPECT_EQ(stiefel_pi(3, 1, 1), GroupExpr::zero());
    EXPECT_EQ(code_of([] { stiefel_pi(4, 2, 5); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([] { stiefel_pi(0, 2, 5); }), ErrorCode::OutOfRange);
}

// Independent oracle: V_{k,n} with k < n is (2(n-k))-connected, so pi_j = 0 for
// j <= 2(n-k); at j = 2(n-k)+1 it is Z. Only j = 3 with n - k = 1 reaches that.
TEST(Stiefel, ConnectivityOracle) {
    for (std::size_t n = 2; n <= 12; ++n) {
        for (std::size_t k = 1; k < n; ++k) {
            const std::size_t conn = 2 * (n - k);
            for (int j = 1; j <= 3; ++j) {
                const auto expected = static_cast<std::size_t>(j) <= conn       ? GroupExpr::zero()
                                      : static_cast<std::size_t>(j) == conn + 1 ? Z
                                                                                : GroupExpr::unknown("?");
                EXPECT_EQ(stiefel_pi(j, k, n), expected) << j << " " << k << " " << n;
            }
        }
    }
}

TEST(Grassmann, PaperValuesAndDuality) {
    EXPECT_EQ(grassmann_pi(2, 2, 5), Z);
    EXPECT_EQ(grassmann_pi(3, 1, 2), Z);
    EXPECT_EQ(grassmann_pi(3, 3, 7), GroupExpr::zero());
    EXPECT_EQ(code_of([] { grassmann_pi(4, 1, 3); }), ErrorCode::OutOfRange);
    for (std::size_t n = 2; n <= 12; ++n) {
        for (std::size_t k = 1; k < n; ++k) {
            for (int j = 1; j <= 3; ++j) EXPECT_EQ(grassmann_pi(j, k, n), grassmann_pi(j, n - k, n));
        }
    }
}

TEST(ConfigPi1, Examples) {
    EXPECT_EQ(config_pi1({3, 6, 2, 7}), GroupExpr::zero());
    EXPECT_EQ(config_pi1({4, 2, 1, 2}), GroupExpr::pure_sphere_braid(4));
    EXPECT_EQ(config_pi1({2, 2, 1, 5}), GroupExpr::zero());
    EXPECT_EQ(config_pi1({3, 2, 1, 5}), GroupExpr::unknown(kDelegated));
    EXPECT_EQ(code_of([] { config_pi1({2, 2, 2, 4}); }), ErrorCode::EmptyStratum);
}

TEST(ConfigPi1, SimplyConnectedForPlanes) {
    for (const auto& s : grid(5, 2, 4, 12)) EXPECT_EQ(config_pi1(s), GroupExpr::zero());
}

TEST(ConfigUnorderedPi1, Examples) {
    EXPECT_EQ(config_unordered_pi1({3, 6, 2, 6}), GroupExpr::symmetric(3));
    EXPECT_EQ(config_unordered_pi1({2, 3, 2, 4}), GroupExpr::symmetric(2));
    EXPECT_EQ(code_of([] { config_unordered_pi1({5, 1, 1, 1}); }), ErrorCode::OutOfScope);
}

TEST(ConfigPi2, Examples) {
    EXPECT_EQ(config_pi2({3, 6, 2, 6}), Zr(2));
    EXPECT_EQ(config_pi2({3, 6, 2, 9}), Zr(3));
    EXPECT_EQ(config_pi2({2, 3, 2, 4}), Zr(3));
    EXPECT_EQ(config_pi2({2, 4, 3, 4}), Zr(2));
    EXPECT_EQ(config_pi2({3, 4, 2, 6}), GroupExpr::unknown(kNotComputed));
    EXPECT_EQ(code_of([] { config_pi2({2, 2, 1, 3}); }), ErrorCode::OutOfScope);
    EXPECT_EQ(code_of([] { config_pi2({2, 2, 2, 4}); }), ErrorCode::EmptyStratum);
}

// Branch (a) is i = hk, branch (b) is h = 2 with i < 2k; the remainder is h >= 3 with
// i < hk. Over the covered grid exactly one of the three holds.
TEST(ConfigPi2, BranchesAreExclusive) {
    for (const auto& s : grid(5, 2, 4, 12)) {
        if (s.h == 1) continue;
        const bool a = s.i == s.h * s.k;
        const bool b = s.h == 2 && s.i < 2 * s.k;
        const bool rest = s.h >= 3 && s.i < s.h * s.k;
        EXPECT_EQ(int(a) + int(b) + int(rest), 1);
        EXPECT_EQ(config_pi2(s).is_unknown(), rest);
    }
}

TEST(Derive, AgreesWithClosedFormsOnGrid) {
    for (const auto& s : grid(5, 1, 4, 12)) {
        const auto d1 = derive(s, 1);
        EXPECT_EQ(d1.value, config_pi1(s)) << d1.query.to_string();
        EXPECT_EQ(replay(d1.query, d1.steps), d1.value);
        if (s.k > 1) {
            const auto d2 = derive(s, 2);
            EXPECT_EQ(d2.value, config_pi2(s)) << d2.query.to_string();
            EXPECT_EQ(replay(d2.query, d2.steps), d2.value);
        }
    }
}

TEST(Derive, TraceShapes) {
    const auto rules = [](const Derivation& d) {
        std::vector<std::string> r;
        for (const auto& s : d.steps) r.push_back(s.rule);
        return r;
    };
    for (std::size_t k = 2; k <= 4; ++k) {
        const auto d = derive({2, 2 * k, k, 2 * k}, 2);
        EXPECT_EQ(rules(d), (std::vector<std::string>{"R2 pr-equality", "base Grassmannian", "base Grassmannian"}));
        EXPECT_EQ(d.value, Z);
        EXPECT_EQ(d.steps[1].input.to_string(), "pi_2(F_1^" + std::to_string(k) + "(" + std::to_string(k) + "," +
                                                    std::to_string(2 * k) + "))");
    }

    const auto d = derive({2, 3, 2, 4}, 2);
    const auto r = rules(d);
    ASSERT_GE(r.size(), 3u);
    EXPECT_EQ(r[0], "R1 gamma-split");
    EXPECT_EQ(r[1], "R3 eta-split");
    EXPECT_EQ(r[2], "R2 pr-equality");
    EXPECT_EQ(d.value, Zr(3));
    EXPECT_EQ(d.steps[0].output_text(), "Z x pi_2(F_2^3(2,3))");
    EXPECT_EQ(d.steps[1].output_text(), "Z x pi_2(F_2^2(1,2))");

    EXPECT_EQ(derive({3, 4, 2, 6}, 2).value, GroupExpr::unknown(kNotComputed));
    EXPECT_EQ(code_of([] { derive({2, 4, 2, 5}, 3); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([] { derive({2, 2, 1, 5}, 2); }), ErrorCode::OutOfScope);
}

TEST(Replay, RejectsBrokenChains) {
    auto d = derive({3, 6, 2, 6}, 2);
    ASSERT_GE(d.steps.size(), 2u);
    auto skipped = d.steps;
    skipped.erase(skipped.begin() + 1);
    EXPECT_EQ(code_of([&] { replay(d.query, skipped); }), ErrorCode::Parse);
    auto truncated = d.steps;
    truncated.pop_back();
    EXPECT_EQ(code_of([&] { replay(d.query, truncated); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([&] { replay(d.query, {}); }), ErrorCode::Parse);

    const auto j = derivation_to_json(d);
    EXPECT_EQ(j.at("text"), "Z^2");
    EXPECT_EQ(j.at("steps").size(), d.steps.size());
}
