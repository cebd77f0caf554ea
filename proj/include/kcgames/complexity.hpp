#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kcgames/engine.hpp"
#include "kcgames/rng.hpp"

namespace kcg::complexity {

// Value of a complexity function at one string; nullopt = infinite.
using Value = std::optional<std::uint64_t>;

struct DomainMismatchError : GameError {
    using GameError::GameError;
};

struct MonotonicityViolationError : GameError {
    using GameError::GameError;
};

// Finite partial map program -> output, both binary strings, at most one
// output per program. Grows monotonically during a match.
class DecompressorGraph {
public:
    // Throws RuleViolation if the program is already bound to a different
    // output; re-adding an identical pair is a no-op.
    void add_pair(const std::string &program, const std::string &output);
    std::size_t size() const { return pairs_.size(); }
    const std::map<std::string, std::string> &pairs() const { return pairs_; }

private:
    std::map<std::string, std::string> pairs_;
};

// Finite values only; strings absent from the map sit at infinity.
class ComplexityProfile {
public:
    ComplexityProfile() = default;
    explicit ComplexityProfile(std::map<std::string, std::uint64_t> values)
        : finite_(std::move(values)) {}

    Value get(const std::string &x) const;
    void set(const std::string &x, std::uint64_t v) { finite_[x] = v; }
    const std::map<std::string, std::uint64_t> &finite() const { return finite_; }

    json to_json(const std::vector<std::string> &domain) const; // null entries for infinity

private:
    std::map<std::string, std::uint64_t> finite_;
};

// K_A(x) = min{ l(p) : A(p) = x }, infinite if no program maps to x.
Value complexity_of(const DecompressorGraph &graph, const std::string &x);

ComplexityProfile profile_of(const DecompressorGraph &graph,
                             const std::vector<std::string> &domain);

// Pointwise minimum; an infinite side is absorbed.
ComplexityProfile combined_complexity(const ComplexityProfile &ka, const ComplexityProfile &kb);

enum class InfiniteRule { FalseOnInfinite, TrueOnInfinite, Reject };

// A named predicate over complexity profiles restricted to a finite string
// domain. Instances are built-ins selected by key; no user code runs.
//   true / false        - constants
//   all_finite          - every domain value finite
//   even_at             - value at params.x is even
//   value_le_at         - value at params.x is <= params.bound
//   above_half_len      - every domain value v(x) satisfies 2*v > |x| + 2*params.c
struct PropertyAlpha {
    std::string name;
    std::vector<std::string> domain;
    json params = json::object();
    InfiniteRule infinite_rule = InfiniteRule::FalseOnInfinite;

    bool evaluate(const ComplexityProfile &profile) const; // DomainMismatchError under Reject
    json to_json() const;
    static PropertyAlpha from_json(const json &spec); // throws ConfigError
};

struct StabilityReport {
    bool stable = true;
    json counterexample; // null when stable
};

// Refuter for O(1)-stability: evaluates alpha on every uniform shift in
// [-shift_bound, +shift_bound] of each profile (values clamped at 0) and on
// every supplied pair whose pointwise distance is <= shift_bound. Finding
// no counterexample proves nothing; the property quantifies over all
// bounded perturbations.
StabilityReport check_o1_stable(const PropertyAlpha &alpha,
                                const std::vector<ComplexityProfile> &profiles,
                                std::uint64_t shift_bound);

// Two-profile predicate for the monotone referee variant. Built-ins:
//   always_true
//   pointwise_le - ka(x) <= kb(x) on the domain (inf <= inf holds)
//   chain_rule   - for every declared entry {pair,x,cond,n} and every
//                  k <= params.kmax, l <= params.lmax:
//                  kb(pair) < k+l implies ka(x) < k + c*bits(n) or
//                  ka(cond) < l + c*bits(n), with bits(n) = bit length of n
//   kb_even_at   - kb at params.x is even (deliberately non-monotone)
struct TwoProfilePredicate {
    std::string name;
    std::vector<std::string> domain;
    json params = json::object();

    bool evaluate(const ComplexityProfile &ka, const ComplexityProfile &kb) const;
    json to_json() const;
    static TwoProfilePredicate from_json(const json &spec);
};

// Adjudicates alpha2(ka, kb) after spot-checking the declared monotonicity
// on seeded perturbations (ka nudged down, kb nudged up must never flip
// true -> false). Throws MonotonicityViolationError when the spot-check
// refutes the declaration.
Player monotone_referee(const TwoProfilePredicate &alpha2, const ComplexityProfile &ka,
                        const ComplexityProfile &kb);

// Direct upper-bound move semantics: values start infinite, only decrease,
// and at most 2^(n-1) strings may sit strictly below n for every n >= 1.
class LevinProfile {
public:
    Value get(const std::string &x) const;
    const std::map<std::string, std::uint64_t> &assigned() const { return values_; }

    struct CheckResult {
        bool accepted = true;
        std::optional<std::uint64_t> violated_n; // counting constraint breach
        std::string reason;                      // empty when accepted
    };

    // Validates without mutating: every proposed value must strictly
    // decrease the current one and the counting constraint must hold on
    // the hypothetical result.
    CheckResult check(const std::vector<std::pair<std::string, std::uint64_t>> &proposed) const;
    // check() + commit; throws RuleViolation if rejected.
    void apply(const std::vector<std::pair<std::string, std::uint64_t>> &proposed);

private:
    std::map<std::string, std::uint64_t> values_;
};

LevinProfile::CheckResult
levin_move_check(const LevinProfile &profile,
                 const std::vector<std::pair<std::string, std::uint64_t>> &proposed);

// ---- schema -----------------------------------------------------------

enum class MoveMode { Graph, Levin };

struct ComplexityParams {
    MoveMode mode = MoveMode::Graph;
    bool two_profile = false; // referee on (K_A, K_B) instead of min
    PropertyAlpha alpha;      // used when !two_profile
    TwoProfilePredicate alpha2;

    json to_json() const;
    static ComplexityParams from_json(const json &params); // throws ConfigError
};

class ComplexityState : public GameState {
public:
    DecompressorGraph graph[2];
    LevinProfile levin[2];
};

// Payloads: graph mode {"pairs":[[program,output],...]},
// levin mode {"bounds":[[x,value],...]}. Strings are over {0,1}; "" is ok.
class ComplexitySchema : public GameSchema {
public:
    explicit ComplexitySchema(ComplexityParams params);
    const std::string &name() const override { return name_; }
    json params_json() const override { return params_.to_json(); }
    std::unique_ptr<GameState> initial_state() const override;
    void apply_move(GameState &state, Player mover, const json &payload) const override;
    Verdict adjudicate(const GameState &state) const override;
    std::vector<std::uint64_t> growth_counters(const GameState &state) const override;
    std::vector<std::pair<std::string, std::string>> metrics(const GameState &state) const override;

    const ComplexityParams &params() const { return params_; }

private:
    std::string name_ = "complexity";
    ComplexityParams params_;
};

// ---- strategies and tables ---------------------------------------------

// Binary strings of length <= max_len in shortlex order ("", "0", "1", "00", ...).
std::vector<std::string> shortlex_strings(unsigned max_len);

// Stand-in for the optimal decompressor at desk scale: x -> x for every
// string of length <= max_len, so K_B(x) = |x| once fully enumerated.
DecompressorGraph identity_table(unsigned max_len);

// Strategy factory; names: pass, copy_prefix, random_assign, table_enum
// (graph mode), pass, levin_random (levin mode).
std::unique_ptr<Strategy> make_strategy(const ComplexitySchema &schema, Player role,
                                        const std::string &name, const json &extras,
                                        std::uint64_t seed);

struct LemmaReport {
    ComplexityProfile kmin;
    ComplexityProfile kb;
    // kb(x) - kmin(x) on the union of finite kb domain and alpha domain;
    // nullopt where kb is infinite but kmin is finite.
    std::map<std::string, Value> delta;
    bool alpha_verdict = false;
    MatchTrace trace;
};

// Plays Alice's strategy against the fixed shortlex enumeration of
// optimal_table and reports the combined profile, the per-string gap to
// K_B, and alpha on the combined profile.
LemmaReport lemma_simulation(Strategy &alice, const DecompressorGraph &optimal_table,
                             const PropertyAlpha &alpha, const HorizonPolicy &horizon,
                             std::uint64_t seed);

} // namespace kcg::complexity
