#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kcgames/engine.hpp"

namespace kcg::total_function {

// A total function {0,1}^n -> {0,1}^n as a full value table indexed by y.
using FunctionTable = std::vector<std::uint32_t>;

struct Witness {
    std::uint32_t x = 0;
    std::uint32_t y = 0;
};

struct TotalFunctionParams {
    unsigned n = 1;
    std::uint64_t points() const { return 1ull << n; }
    std::uint64_t quota() const { return (1ull << n) - 1; } // at most 2^n - 1 functions

    json to_json() const { return json{{"n", n}}; }
    static TotalFunctionParams from_json(const json &params); // throws ConfigError
};

class TotalFunctionState : public GameState {
public:
    unsigned n = 1;
    std::vector<std::optional<std::uint32_t>> f; // partial map, index = y
    std::vector<FunctionTable> gs;
    std::size_t f_defined = 0;
};

// We win iff some f(y)=x avoids every listed g at y; returns the least
// witness ordered by (x, y), or nullopt.
std::optional<Witness> find_witness(const TotalFunctionState &state);

// One step of the paper strategy: pass once a witness exists, otherwise
// claim the least undefined y with the least x outside {g_i(y)}. Throws
// GameError if no choice exists (impossible against quota-legal opponents).
std::optional<std::pair<std::uint32_t, std::uint32_t>> builder_step(const TotalFunctionState &state);

// Length of the shortest "program" for a total function mapping y to x,
// with program length of universe position i read as ceil(log2(i+1)).
// Infinite (nullopt) when no universe function maps y to x.
std::optional<std::uint64_t> kbar(std::uint32_t x, std::uint32_t y,
                                  const std::vector<FunctionTable> &universe);

// index-th table in the fixed enumeration order: value tuples ordered
// lexicographically, leftmost position most significant.
FunctionTable table_at_index(unsigned n, std::uint64_t index);

// Payloads: Alice {"set":[[y,x],...]}, Bob {"add":[[v0,...,v_{2^n-1}],...]}.
class TotalFunctionSchema : public GameSchema {
public:
    explicit TotalFunctionSchema(TotalFunctionParams params) : params_(params) {}
    const std::string &name() const override { return name_; }
    json params_json() const override { return params_.to_json(); }
    std::unique_ptr<GameState> initial_state() const override;
    void apply_move(GameState &state, Player mover, const json &payload) const override;
    Verdict adjudicate(const GameState &state) const override;
    std::vector<std::uint64_t> growth_counters(const GameState &state) const override;
    std::vector<std::pair<std::string, std::string>> metrics(const GameState &state) const override;

    const TotalFunctionParams &params() const { return params_; }

private:
    std::string name_ = "total_function";
    TotalFunctionParams params_;
};

// Alice: builder, pass. Bob: enumerating (extras: budget), random (extras:
// budget), pass.
std::unique_ptr<Strategy> make_strategy(const TotalFunctionSchema &schema, Player role,
                                        const std::string &name, const json &extras,
                                        std::uint64_t seed);

} // namespace kcg::total_function
