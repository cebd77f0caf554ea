#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "kcgames/engine.hpp"

namespace kcg::bijection {

// Total function [N] -> [N] as a value table.
using FunctionVec = std::vector<std::uint32_t>;
// Partial injective map x -> y.
using PartialMatching = std::map<std::uint32_t, std::uint32_t>;

struct NotInjectiveError : GameError {
    using GameError::GameError;
};

struct DegreeBoundViolatedError : GameError {
    using GameError::GameError;
};

struct BijectionParams {
    std::uint32_t domain_size = 64;

    json to_json() const { return json{{"domain_size", domain_size}}; }
    static BijectionParams from_json(const json &params); // throws ConfigError
};

class BijectionState : public GameState {
public:
    std::uint32_t n = 0;
    std::vector<FunctionVec> fs;
    std::vector<FunctionVec> gs;
    std::vector<FunctionVec> hs; // each verified to be a permutation on insertion
};

struct Counterexample {
    std::uint32_t x = 0, y = 0;
    std::size_t i = 0, j = 0; // 1-based indices into fs/gs
};

bool is_permutation(const FunctionVec &h, std::uint32_t n);

// Mutually confirmed pairs {(x,y) : f_i(x)=y and g_j(y)=x for some i,j},
// each listed once, ordered by (x, y).
std::vector<std::pair<std::uint32_t, std::uint32_t>> confirmed_pairs(const BijectionState &state);

// First confirmed pair missed by every published bijection, scanning x,
// then i, then j ascending; nullopt when the responder is safe.
std::optional<Counterexample> find_counterexample(const BijectionState &state);

// {(x, f(x)) : g(f(x)) = x}; injective by construction.
PartialMatching induced_matching(const FunctionVec &f, const FunctionVec &g);

// Extends a partial matching to a permutation, pairing unmatched sources
// with unmatched targets in ascending order. Throws NotInjectiveError.
FunctionVec complete_to_bijection(const PartialMatching &matching, std::uint32_t n);

// Pads the given bipartite graph (max degree <= m on both sides) to an
// m-regular multigraph and splits it into exactly m perfect matchings, so
// every input edge lies in one of the returned permutations. Throws
// DegreeBoundViolatedError if the degree precondition fails.
std::vector<FunctionVec> offline_cover(const std::vector<std::pair<std::uint32_t, std::uint32_t>> &edges,
                                       std::uint32_t n, std::uint32_t m);

// Payloads: adversary (Bob) {"f":[table,...]} and/or {"g":[table,...]};
// responder (Alice) {"h":[perm,...]}.
class BijectionSchema : public GameSchema {
public:
    explicit BijectionSchema(BijectionParams params) : params_(params) {}
    const std::string &name() const override { return name_; }
    json params_json() const override { return params_.to_json(); }
    std::unique_ptr<GameState> initial_state() const override;
    void apply_move(GameState &state, Player mover, const json &payload) const override;
    Verdict adjudicate(const GameState &state) const override;
    std::vector<std::uint64_t> growth_counters(const GameState &state) const override;
    std::vector<std::pair<std::string, std::string>> metrics(const GameState &state) const override;

    const BijectionParams &params() const { return params_; }

private:
    std::string name_ = "bijection";
    BijectionParams params_;
};

// Alice (responder): pairwise, minimizer, pass.
// Bob (adversary): constant (extras: moves), random_roster (extras: moves
// per side), pass.
std::unique_ptr<Strategy> make_strategy(const BijectionSchema &schema, Player role,
                                        const std::string &name, const json &extras,
                                        std::uint64_t seed);

} // namespace kcg::bijection
