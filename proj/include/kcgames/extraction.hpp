#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kcgames/engine.hpp"
#include "kcgames/rational.hpp"

namespace kcg::extraction {

struct ExtractionParams {
    std::uint64_t left_size = 4;
    std::uint64_t right_size = 64;
    std::uint64_t degree_cap = 2;
    std::uint64_t threshold = 2;

    json to_json() const;
    static ExtractionParams from_json(const json &params); // throws ConfigError
};

struct StageRecord {
    std::uint64_t stage = 0;         // stage completed by this mark (0-based)
    std::uint64_t mark = 0;          // element of L marked
    std::uint64_t selected_before = 0;
    std::uint64_t selected_after = 0;
};

class ExtractionState : public GameState {
public:
    std::vector<std::vector<std::uint32_t>> neighbors; // per r, sorted, <= degree_cap
    std::vector<bool> marked;                          // per l
    std::uint64_t marked_count = 0;
    std::vector<bool> selected;                        // per r; starts full, only shrinks
    std::uint64_t selected_count = 0;
    std::uint64_t stage = 0;                           // number of marks in the chain
    std::vector<std::uint32_t> chain;                  // marks in order
    std::vector<StageRecord> ledger;
    std::uint64_t edge_count = 0;
};

// Elements of R qualifying for the win: every neighbor marked, vacuously
// including neighborless elements.
std::vector<std::uint64_t> qualifying_elements(const ExtractionState &state);

// One step of the staged marker: pass while >= threshold selected elements
// have at most `stage` neighbors (those are exactly the ones whose
// neighbors are all chain marks); otherwise mark the most frequent
// non-chain neighbor of the selected set, least element on ties.
std::optional<std::uint64_t> marker_step(const ExtractionState &state,
                                         const ExtractionParams &params);

struct WinnabilityReport {
    bool winnable = true;
    std::vector<Rat> stage_bounds; // worst-case selected-set sizes s_1..s_d
};

// Iterates s_{k+1} = (s_k - threshold)/left_size from s_0 = right_size and
// requires every bound to stay >= threshold through stage degree_cap.
// BigInt arguments so the paper-shape instances (|R| = 2^(n^2)) check exactly.
WinnabilityReport winnability_condition(const BigInt &left_size, const BigInt &right_size,
                                        const BigInt &degree_cap, const BigInt &threshold);
WinnabilityReport winnability_condition(const ExtractionParams &params);

// Payloads: Alice {"mark": l}, Bob {"edges": [[l, r], ...]}. A mark also
// advances the strategy bookkeeping kept in the state: selected narrows to
// the elements having that mark as a neighbor and the stage counter bumps.
// The referee never reads that bookkeeping.
class ExtractionSchema : public GameSchema {
public:
    explicit ExtractionSchema(ExtractionParams params) : params_(params) {}
    const std::string &name() const override { return name_; }
    json params_json() const override { return params_.to_json(); }
    std::unique_ptr<GameState> initial_state() const override;
    void apply_move(GameState &state, Player mover, const json &payload) const override;
    Verdict adjudicate(const GameState &state) const override;
    std::vector<std::uint64_t> growth_counters(const GameState &state) const override;
    std::vector<std::pair<std::string, std::string>> metrics(const GameState &state) const override;

    const ExtractionParams &params() const { return params_; }

private:
    std::string name_ = "extraction";
    ExtractionParams params_;
};

// Alice: marker, pass. Bob: random_edges, flooding, pass.
std::unique_ptr<Strategy> make_strategy(const ExtractionSchema &schema, Player role,
                                        const std::string &name, const json &extras,
                                        std::uint64_t seed);

} // namespace kcg::extraction
