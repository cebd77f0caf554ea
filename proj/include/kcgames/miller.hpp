#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kcgames/engine.hpp"
#include "kcgames/rational.hpp"

namespace kcg::miller {

struct MillerParams {
    std::uint64_t ratio_target = 1;   // C
    std::vector<std::uint64_t> sizes; // per set; N = sizes.size()

    std::uint64_t num_sets() const { return sizes.size(); }
    std::uint64_t total_elements() const;

    json to_json() const;
    static MillerParams from_json(const json &params); // throws ConfigError
};

// Alice has a winning strategy under any of: N >= 2^(8C) with all sizes
// >= 8C; all sizes exactly 4C with N >= 2^(4C); all sizes multiples of 4C
// with N >= 2^(4C).
bool winnability(const MillerParams &params);

// Group count the doubling strategy uses per set: 4C when the size is a
// multiple of 4C, 8C otherwise.
std::uint64_t group_count_for(std::uint64_t size, std::uint64_t ratio_target);

// Partition of [0, size) into m contiguous groups with sizes differing by
// at most one, larger groups first.
std::vector<std::vector<std::uint64_t>> build_groups(std::uint64_t size, std::uint64_t m);

class MillerState : public GameState {
public:
    // layout
    std::vector<std::uint64_t> offset; // first element id per set
    std::vector<std::uint32_t> set_of; // per element

    std::vector<Rat> a;          // Alice weight per element
    std::vector<Rat> b;          // Bob weight per set; per-element share is b[j]/size
    std::vector<bool> disabled;  // per element
    std::vector<std::uint64_t> enabled; // per set
    Rat a_total, b_total;
    std::vector<Rat> a_set_spend;   // per set
    std::vector<Rat> max_enabled_a; // per set cache
    std::vector<bool> winning;      // per set cache of the referee condition
    std::uint64_t winning_count = 0;
    std::uint64_t disabled_count = 0;
    std::uint64_t a_positive = 0; // elements with positive Alice weight
    std::uint64_t b_positive = 0; // sets with positive Bob weight
};

struct SetLedgerRow {
    std::uint64_t set_index = 0;
    Rat alice_spend;
    Rat bob_spend;
    bool paid = false; // Bob's fair level reached Alice's top weight in the set
    bool won = false;  // set holds a referee witness in the final state
};

std::vector<SetLedgerRow> set_ledger(const MillerState &state, const MillerParams &params);

// Least enabled element with A(s) > 0 on zero Bob weight, or exact ratio
// A(s)/B(s) >= C.
std::optional<std::uint64_t> find_witness(const MillerState &state, const MillerParams &params);

// Payloads (all weights as exact "p/q" strings):
//   Alice {"add": [[element, "p/q"], ...]}
//   Bob   {"raise": [[set, "p/q"], ...], "disable": [element, ...]}
class MillerSchema : public GameSchema {
public:
    explicit MillerSchema(MillerParams params);
    const std::string &name() const override { return name_; }
    json params_json() const override { return params_.to_json(); }
    std::unique_ptr<GameState> initial_state() const override;
    void apply_move(GameState &state, Player mover, const json &payload) const override;
    Verdict adjudicate(const GameState &state) const override;
    std::vector<std::uint64_t> growth_counters(const GameState &state) const override;
    std::vector<std::pair<std::string, std::string>> metrics(const GameState &state) const override;

    const MillerParams &params() const { return params_; }

private:
    void refresh_winning(MillerState &state, std::uint64_t set_index) const;
    void rescan_max(MillerState &state, std::uint64_t set_index) const;

    std::string name_ = "miller";
    MillerParams params_;
};

// Alice: doubling, pass. Bob: defensive, random, pass.
std::unique_ptr<Strategy> make_strategy(const MillerSchema &schema, Player role,
                                        const std::string &name, const json &extras,
                                        std::uint64_t seed);

} // namespace kcg::miller
