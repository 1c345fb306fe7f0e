#include "grstrata/homotopy.hpp"

#include "grstrata/error.hpp"

#include <algorithm>

namespace grstrata {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// GroupExpr

GroupExpr GroupExpr::free_abelian(std::size_t rank) {
    GroupExpr g;
    if (rank == 0) return g;
    g.kind_ = Kind::FreeAbelian;
    g.index_ = rank;
    return g;
}

GroupExpr GroupExpr::atom(AtomName name, std::size_t h) {
    GroupExpr g;
    g.kind_ = Kind::Atom;
    g.atom_ = name;
    g.index_ = h;
    return g;
}

GroupExpr GroupExpr::unknown(std::string reason) {
    GroupExpr g;
    g.kind_ = Kind::Unknown;
    g.reason_ = std::move(reason);
    return g;
}

GroupExpr GroupExpr::product(std::vector<GroupExpr> factors) {
    std::size_t rank = 0;
    std::vector<GroupExpr> atoms;
    std::vector<GroupExpr> pending = std::move(factors);
    while (!pending.empty()) {
        GroupExpr f = std::move(pending.back());
        pending.pop_back();
        switch (f.kind_) {
            case Kind::Zero: break;
            case Kind::FreeAbelian: rank += f.index_; break;
            case Kind::Atom: atoms.push_back(std::move(f)); break;
            case Kind::Product:
                for (auto& g : f.factors_) pending.push_back(std::move(g));
                break;
            case Kind::Unknown: return f;
        }
    }
    std::sort(atoms.begin(), atoms.end());
    if (atoms.empty()) return free_abelian(rank);
    if (rank == 0 && atoms.size() == 1) return atoms.front();
    GroupExpr g;
    g.kind_ = Kind::Product;
    if (rank > 0) g.factors_.push_back(free_abelian(rank));
    for (auto& a : atoms) g.factors_.push_back(std::move(a));
    return g;
}

std::strong_ordering operator<=>(const GroupExpr& a, const GroupExpr& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (auto c = a.atom_ <=> b.atom_; c != 0) return c;
    if (auto c = a.index_ <=> b.index_; c != 0) return c;
    if (auto c = std::lexicographical_compare_three_way(a.factors_.begin(), a.factors_.end(), b.factors_.begin(),
                                                        b.factors_.end());
        c != 0) {
        return c;
    }
    return a.reason_.compare(b.reason_) <=> 0;
}

std::string GroupExpr::to_string() const {
    switch (kind_) {
        case Kind::Zero: return "0";
        case Kind::FreeAbelian: return index_ == 1 ? "Z" : "Z^" + std::to_string(index_);
        case Kind::Atom:
            if (atom_ == AtomName::PureSphereBraid) return "PB_" + std::to_string(index_) + "(S^2)";
            return "Sigma_" + std::to_string(index_);
        case Kind::Product: {
            std::string s;
            for (const auto& f : factors_) {
                if (!s.empty()) s += " x ";
                s += f.to_string();
            }
            return s;
        }
        case Kind::Unknown: return "Unknown(" + reason_ + ")";
    }
    return {};
}

Json GroupExpr::to_json() const {
    switch (kind_) {
        case Kind::Zero: return {{"variant", "Zero"}};
        case Kind::FreeAbelian: return {{"variant", "FreeAbelian"}, {"rank", index_}};
        case Kind::Atom:
            return {{"variant", "Atom"},
                    {"name", atom_ == AtomName::PureSphereBraid ? "PureSphereBraid" : "Symmetric"},
                    {"h", index_}};
        case Kind::Product: {
            Json fs = Json::array();
            for (const auto& f : factors_) fs.push_back(f.to_json());
            return {{"variant", "Product"}, {"factors", std::move(fs)}};
        }
        case Kind::Unknown: return {{"variant", "Unknown"}, {"reason", reason_}};
    }
    return {};
}

GroupExpr GroupExpr::from_json(const Json& j) {
    if (!j.is_object() || !j.contains("variant")) throw Error(ErrorCode::Parse, "group expression needs a variant tag");
    const auto v = j.at("variant").get<std::string>();
    if (v == "Zero") return zero();
    if (v == "FreeAbelian") return free_abelian(j.at("rank").get<std::size_t>());
    if (v == "Atom") {
        const auto name = j.at("name").get<std::string>();
        const auto h = j.at("h").get<std::size_t>();
        if (name == "PureSphereBraid") return pure_sphere_braid(h);
        if (name == "Symmetric") return symmetric(h);
        throw Error(ErrorCode::Parse, "unknown atom " + name);
    }
    if (v == "Product") {
        std::vector<GroupExpr> fs;
        for (const auto& f : j.at("factors")) fs.push_back(from_json(f));
        return product(std::move(fs));
    }
    if (v == "Unknown") return unknown(j.at("reason").get<std::string>());
    throw Error(ErrorCode::Parse, "unknown variant " + v);
}

// ---------------------------------------------------------------------------
// Stiefel manifolds and Grassmannians

namespace {

void require_order(int j) {
    if (j < 1 || j > 3) throw Error(ErrorCode::OutOfRange, "only pi_1, pi_2 and pi_3 are tabulated");
}

// pi_j(S^d) for j <= 3 and odd d.
GroupExpr odd_sphere_pi(int j, std::size_t d) {
    return static_cast<std::size_t>(j) == d ? GroupExpr::free_abelian(1) : GroupExpr::zero();
}

}  // namespace

GroupExpr stiefel_pi(int j, std::size_t k, std::size_t n) {
    require_order(j);
    if (k < 1 || k > n) throw Error(ErrorCode::InvalidStratum, "need 1 <= k <= n");
    // V_{k-1,n-1} -> V_{k,n} -> S^{2n-1} gives pi_j(V_{k,n}) = pi_j(V_{k-1,n-1}) for j <= 3
    // once 2n - 1 > 4; walk down to V_{1,n-k+1} = S^{2(n-k)+1} or to V_{m,m} = U(m).
    if (k < n) return odd_sphere_pi(j, 2 * (n - k) + 1);
    if (n == 1) return j == 1 ? GroupExpr::free_abelian(1) : GroupExpr::zero();  // S^1
    return j == 2 ? GroupExpr::zero() : GroupExpr::free_abelian(1);             // U(n), n >= 2
}

GroupExpr grassmann_pi(int j, std::size_t k, std::size_t n) {
    require_order(j);
    if (k < 1 || k >= n) throw Error(ErrorCode::InvalidStratum, "need 0 < k < n");
    switch (j) {
        case 1: return GroupExpr::zero();
        case 2: return GroupExpr::free_abelian(1);
        default: return k == 1 && n == 2 ? GroupExpr::free_abelian(1) : GroupExpr::zero();  // Gr(1,2) = S^2
    }
}

// ---------------------------------------------------------------------------
// Closed forms for configuration spaces

namespace {

void require_nonempty(const StratumId& s) {
    if (!is_stratum_nonempty(s)) throw Error(ErrorCode::EmptyStratum, "stratum is empty");
}

}  // namespace

GroupExpr config_pi1(const StratumId& s) {
    require_nonempty(s);
    if (s.k > 1 || s.h == 1) return GroupExpr::zero();
    if (is_open_stratum(s)) {
        if (s.n == 2) return GroupExpr::pure_sphere_braid(s.h);
        if (s.n != s.h * s.k) return GroupExpr::zero();
    }
    return GroupExpr::unknown(kDelegated);
}

GroupExpr config_unordered_pi1(const StratumId& s) {
    // The scope guard comes first: (h, 1, 1, 1) is out of scope rather than malformed.
    if (s.k == 1) throw Error(ErrorCode::OutOfScope, "unordered spaces of lines are not covered");
    require_nonempty(s);
    return GroupExpr::symmetric(s.h);
}

GroupExpr config_pi2(const StratumId& s) {
    require_nonempty(s);
    if (s.k == 1) throw Error(ErrorCode::OutOfScope, "pi_2 is only computed for k > 1");
    if (s.i == s.h * s.k) return GroupExpr::free_abelian(s.n == s.h * s.k ? s.h - 1 : s.h);
    if (s.h == 2 && s.i < 2 * s.k) return GroupExpr::free_abelian(s.i == s.n ? 2 : 3);
    return GroupExpr::unknown(kNotComputed);
}

// ---------------------------------------------------------------------------
// Derivations

std::string HomotopyTerm::to_string() const {
    const auto& s = stratum;
    const std::string pi = "pi_" + std::to_string(j);
    if (space == Space::Grassmannian) {
        return pi + "(Gr(" + std::to_string(s.k) + "," + std::to_string(s.n) + "))";
    }
    return pi + "(F_" + std::to_string(s.h) + "^" + std::to_string(s.i) + "(" + std::to_string(s.k) + "," +
           std::to_string(s.n) + "))";
}

std::string DerivationStep::output_text() const {
    if (!next) return factor.to_string();
    if (relation == Relation::QuotientOf) return "quotient of " + next->to_string();
    if (factor.is_zero()) return next->to_string();
    return factor.to_string() + " x " + next->to_string();
}

namespace {

namespace rules {
constexpr const char* kGammaSplit = "R1 gamma-split";
constexpr const char* kGammaQuotient = "R1 gamma-quotient";
constexpr const char* kPrEquality = "R2 pr-equality";
constexpr const char* kEtaSplit = "R3 eta-split";
constexpr const char* kBaseGrassmannian = "base Grassmannian";
constexpr const char* kBaseOpenStratum = "base open-stratum";
constexpr const char* kBaseSphereBraid = "base sphere-braid";
constexpr const char* kBaseDelegated = "base delegated";
constexpr const char* kNoRule = "no rule";
}  // namespace rules

namespace anchors {
constexpr const char* kGammaSplit =
    "sum map F_h^i(k,n) -> Gr(i,n) with fiber F_h^i(k,i); pi_3(Gr(i,n)) = 0, pi_2(Gr(i,n)) = Z, sequence splits";
constexpr const char* kGammaQuotient = "sum map F_h^i(k,n) -> Gr(i,n) with fiber F_h^i(k,i); pi_1(Gr(i,n)) = 0";
constexpr const char* kPrEquality =
    "forget-last map F_h^{hk}(k,hk) -> F_{h-1}^{k(h-1)}(k,hk) with fiber C^{k(kh-k)}: pi_j equal for all j";
constexpr const char* kEtaSplit =
    "intersection map F_2^i(k,n) -> Gr(2k-i,n) with fiber F_2^{2(i-k)}(i-k,n-2k+i); pi_2(Gr) = Z, splits";
constexpr const char* kBaseGrassmannian = "F_1^k(k,n) = Gr(k,n); pi_1 = 0, pi_2 = Z";
constexpr const char* kBaseOpenStratum = "open strata F_h^{min(n,hk)}(k,n) with n != hk are simply connected";
constexpr const char* kBaseSphereBraid = "F_h(Gr(1,2)) = F_h(S^2): pi_1 is the pure braid group of the sphere";
constexpr const char* kBaseDelegated = "lines (k = 1) outside the open-stratum formula: external results";
constexpr const char* kNoRule = "no rewrite rule covers this stratum";
}  // namespace anchors

HomotopyTerm config_term(int j, std::size_t h, std::size_t i, std::size_t k, std::size_t n) {
    return {HomotopyTerm::Space::Configuration, j, {h, i, k, n}};
}

DerivationStep closing(const char* rule, const char* anchor, const HomotopyTerm& in, GroupExpr value) {
    return {rule, anchor, in, std::move(value), std::nullopt, DerivationStep::Relation::Equal};
}

DerivationStep rewrite(const char* rule, const char* anchor, const HomotopyTerm& in, GroupExpr factor,
                       HomotopyTerm next, DerivationStep::Relation rel = DerivationStep::Relation::Equal) {
    return {rule, anchor, in, std::move(factor), std::move(next), rel};
}

// One step of the pi_2 rewrite system. Rules are tried in a fixed order.
DerivationStep pi2_step(const HomotopyTerm& t) {
    const auto [h, i, k, n] = t.stratum;
    if (h == 1) {
        return rewrite(rules::kBaseGrassmannian, anchors::kBaseGrassmannian, t, GroupExpr::zero(),
                       {HomotopyTerm::Space::Grassmannian, 2, {1, k, k, n}});
    }
    if (i < n) {
        return rewrite(rules::kGammaSplit, anchors::kGammaSplit, t, GroupExpr::free_abelian(1),
                       config_term(2, h, i, k, i));
    }
    if (i == h * k) {
        return rewrite(rules::kPrEquality, anchors::kPrEquality, t, GroupExpr::zero(),
                       config_term(2, h - 1, k * (h - 1), k, n));
    }
    if (h == 2 && i < 2 * k) {
        return rewrite(rules::kEtaSplit, anchors::kEtaSplit, t, GroupExpr::free_abelian(1),
                       config_term(2, 2, 2 * (i - k), i - k, n - 2 * k + i));
    }
    return closing(rules::kNoRule, anchors::kNoRule, t, GroupExpr::unknown(kNotComputed));
}

DerivationStep pi1_step(const HomotopyTerm& t) {
    const StratumId& s = t.stratum;
    const auto [h, i, k, n] = s;
    if (h == 1) {
        return rewrite(rules::kBaseGrassmannian, anchors::kBaseGrassmannian, t, GroupExpr::zero(),
                       {HomotopyTerm::Space::Grassmannian, 1, {1, k, k, n}});
    }
    if (k == 1) {
        if (is_open_stratum(s) && n == 2) {
            return closing(rules::kBaseSphereBraid, anchors::kBaseSphereBraid, t, GroupExpr::pure_sphere_braid(h));
        }
        if (is_open_stratum(s) && n != h * k) {
            return closing(rules::kBaseOpenStratum, anchors::kBaseOpenStratum, t, GroupExpr::zero());
        }
        return closing(rules::kBaseDelegated, anchors::kBaseDelegated, t, GroupExpr::unknown(kDelegated));
    }
    if (is_open_stratum(s) && n != h * k) {
        return closing(rules::kBaseOpenStratum, anchors::kBaseOpenStratum, t, GroupExpr::zero());
    }
    if (i == n && i == h * k) {
        return rewrite(rules::kPrEquality, anchors::kPrEquality, t, GroupExpr::zero(),
                       config_term(1, h - 1, k * (h - 1), k, n));
    }
    // i < n here: the open stratum with i = n was handled above.
    return rewrite(rules::kGammaQuotient, anchors::kGammaQuotient, t, GroupExpr::zero(), config_term(1, h, i, k, i),
                   DerivationStep::Relation::QuotientOf);
}

DerivationStep grassmannian_step(const HomotopyTerm& t) {
    return closing(rules::kBaseGrassmannian, anchors::kBaseGrassmannian, t,
                   grassmann_pi(t.j, t.stratum.k, t.stratum.n));
}

}  // namespace

Derivation derive(const StratumId& s, int j) {
    require_nonempty(s);
    if (j < 1 || j > 2) throw Error(ErrorCode::OutOfRange, "configuration spaces are covered for pi_1 and pi_2 only");
    if (j == 2 && s.k == 1) throw Error(ErrorCode::OutOfScope, "pi_2 is only computed for k > 1");

    Derivation d{config_term(j, s.h, s.i, s.k, s.n), {}, {}};
    std::optional<HomotopyTerm> current = d.query;
    while (current) {
        DerivationStep step = current->space == HomotopyTerm::Space::Grassmannian ? grassmannian_step(*current)
                              : j == 2                                             ? pi2_step(*current)
                                                                                   : pi1_step(*current);
        current = step.next;
        d.steps.push_back(std::move(step));
    }
    d.value = replay(d.query, d.steps);
    return d;
}

GroupExpr replay(const HomotopyTerm& query, const std::vector<DerivationStep>& steps) {
    if (steps.empty()) throw Error(ErrorCode::Parse, "empty derivation");
    if (!(steps.front().input == query)) throw Error(ErrorCode::Parse, "derivation does not start at the query");
    for (std::size_t t = 0; t + 1 < steps.size(); ++t) {
        if (!steps[t].next || !(*steps[t].next == steps[t + 1].input)) {
            throw Error(ErrorCode::Parse, "derivation step " + std::to_string(t) + " does not link to the next");
        }
    }
    if (steps.back().next) throw Error(ErrorCode::Parse, "derivation ends on an open term");

    GroupExpr value = steps.back().factor;
    for (std::size_t t = steps.size() - 1; t-- > 0;) {
        const auto& step = steps[t];
        if (step.relation == DerivationStep::Relation::QuotientOf) {
            // A quotient is determined only when the source group is trivial.
            if (!value.is_zero() && !value.is_unknown()) value = GroupExpr::unknown("quotient of a nontrivial group");
        } else {
            value = GroupExpr::product(step.factor, value);
        }
    }
    return value;
}

Json derivation_to_json(const Derivation& d) {
    Json steps = Json::array();
    for (const auto& s : d.steps) {
        steps.push_back({{"rule", s.rule},
                         {"anchor", s.anchor},
                         {"input", s.input.to_string()},
                         {"output", s.output_text()},
                         {"relation", s.relation == DerivationStep::Relation::Equal ? "equal" : "quotient_of"},
                         {"factor", s.factor.to_json()}});
    }
    return {{"query", d.query.to_string()},
            {"value", d.value.to_json()},
            {"text", d.value.to_string()},
            {"steps", std::move(steps)}};
}

}  // namespace grstrata
