#pragma once

#include "grstrata/grassmann.hpp"

#include <json.hpp>

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace grstrata {

/// A group up to isomorphism, kept in normal form by the factories:
/// products are flattened, free abelian factors merge into one Z^r placed
/// first, trivial factors vanish, named atoms are sorted, and an Unknown
/// factor absorbs the whole product.
class GroupExpr {
public:
    enum class Kind { Zero, FreeAbelian, Atom, Product, Unknown };
    enum class AtomName { PureSphereBraid, Symmetric };

    GroupExpr() = default;

    static GroupExpr zero() { return {}; }
    static GroupExpr free_abelian(std::size_t rank);
    static GroupExpr pure_sphere_braid(std::size_t h) { return atom(AtomName::PureSphereBraid, h); }
    static GroupExpr symmetric(std::size_t h) { return atom(AtomName::Symmetric, h); }
    static GroupExpr unknown(std::string reason);
    static GroupExpr product(std::vector<GroupExpr> factors);
    static GroupExpr product(const GroupExpr& a, const GroupExpr& b) { return product({a, b}); }

    Kind kind() const { return kind_; }
    /// Rank for FreeAbelian, h for atoms.
    std::size_t index() const { return index_; }
    AtomName atom_name() const { return atom_; }
    const std::vector<GroupExpr>& factors() const { return factors_; }
    const std::string& reason() const { return reason_; }

    bool is_zero() const { return kind_ == Kind::Zero; }
    bool is_unknown() const { return kind_ == Kind::Unknown; }

    /// "0", "Z", "Z^r", "PB_h(S^2)", "Sigma_h", "A x B", "Unknown(reason)".
    std::string to_string() const;
    nlohmann::ordered_json to_json() const;
    static GroupExpr from_json(const nlohmann::ordered_json& j);

    friend bool operator==(const GroupExpr&, const GroupExpr&) = default;
    friend std::strong_ordering operator<=>(const GroupExpr& a, const GroupExpr& b);

private:
    static GroupExpr atom(AtomName name, std::size_t h);

    Kind kind_ = Kind::Zero;
    std::size_t index_ = 0;
    AtomName atom_ = AtomName::PureSphereBraid;
    std::vector<GroupExpr> factors_;
    std::string reason_;
};

inline const char* const kNotComputed = "not computed in paper";
inline const char* const kDelegated = "delegated to [BP]";

/// pi_j of the Stiefel manifold V_{k,n}, j in 1..3, 1 <= k <= n.
GroupExpr stiefel_pi(int j, std::size_t k, std::size_t n);
/// pi_j of Gr(k, n), j in 1..3, 0 < k < n.
GroupExpr grassmann_pi(int j, std::size_t k, std::size_t n);

GroupExpr config_pi1(const StratumId& s);
GroupExpr config_unordered_pi1(const StratumId& s);
GroupExpr config_pi2(const StratumId& s);

/// A homotopy group being rewritten: pi_j(F_h^i(k, n)) or pi_j(Gr(k, n)).
struct HomotopyTerm {
    enum class Space { Configuration, Grassmannian };

    Space space = Space::Configuration;
    int j = 1;
    StratumId stratum;

    /// "pi_2(F_3^6(2,6))" or "pi_2(Gr(2,4))".
    std::string to_string() const;
    friend bool operator==(const HomotopyTerm&, const HomotopyTerm&) = default;
};

/// One rule application. The rewrite is
///   input = factor x next          (relation Equal)
///   input is a quotient of next    (relation QuotientOf; factor unused)
/// and a step without `next` closes the chain with input = factor.
struct DerivationStep {
    enum class Relation { Equal, QuotientOf };

    std::string rule;
    std::string anchor;
    HomotopyTerm input;
    GroupExpr factor;
    std::optional<HomotopyTerm> next;
    Relation relation = Relation::Equal;

    /// Right-hand side as text, e.g. "Z x pi_2(F_2^3(2,3))".
    std::string output_text() const;
};

struct Derivation {
    HomotopyTerm query;
    GroupExpr value;
    std::vector<DerivationStep> steps;
};

/// Rewrites pi_j(F_h^i(k,n)) (j = 1, 2) down to base cases, recording every
/// rule application. Same preconditions and errors as config_pi1/config_pi2.
Derivation derive(const StratumId& s, int j);

/// Recomputes the value of a chain of steps starting at `query`. Throws
/// Parse if the steps do not link up.
GroupExpr replay(const HomotopyTerm& query, const std::vector<DerivationStep>& steps);

nlohmann::ordered_json derivation_to_json(const Derivation& d);

}  // namespace grstrata
