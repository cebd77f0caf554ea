#include "kcgames/extraction.hpp"

#include <algorithm>
#include <map>

#include "kcgames/rng.hpp"

namespace kcg::extraction {

json ExtractionParams::to_json() const {
    return json{{"left_size", left_size},
                {"right_size", right_size},
                {"degree_cap", degree_cap},
                {"threshold", threshold}};
}

ExtractionParams ExtractionParams::from_json(const json &params) {
    ExtractionParams out;
    out.left_size = params.value("left_size", 4ull);
    out.right_size = params.value("right_size", 64ull);
    out.degree_cap = params.value("degree_cap", 2ull);
    out.threshold = params.value("threshold", 2ull);
    if (out.left_size == 0) throw ConfigError("left_size", "must be positive");
    if (out.right_size == 0) throw ConfigError("right_size", "must be positive");
    if (out.degree_cap == 0) throw ConfigError("degree_cap", "must be positive");
    if (out.threshold == 0) throw ConfigError("threshold", "must be positive");
    if (out.right_size > (1ull << 22)) throw ConfigError("right_size", "too large to simulate");
    if (out.left_size > (1ull << 22)) throw ConfigError("left_size", "too large to simulate");
    return out;
}

std::vector<std::uint64_t> qualifying_elements(const ExtractionState &state) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t r = 0; r < state.neighbors.size(); ++r) {
        bool all_marked = true;
        for (auto l : state.neighbors[r]) {
            if (!state.marked[l]) {
                all_marked = false;
                break;
            }
        }
        if (all_marked) out.push_back(r);
    }
    return out;
}

std::optional<std::uint64_t> marker_step(const ExtractionState &state,
                                         const ExtractionParams &params) {
    std::uint64_t settled = 0;
    for (std::uint64_t r = 0; r < state.neighbors.size(); ++r)
        if (state.selected[r] && state.neighbors[r].size() <= state.stage) ++settled;
    if (settled >= params.threshold) return std::nullopt;

    // Not enough settled elements: mark the heaviest non-chain neighbor.
    std::map<std::uint32_t, std::uint64_t> freq;
    std::vector<bool> in_chain(params.left_size, false);
    for (auto l : state.chain) in_chain[l] = true;
    for (std::uint64_t r = 0; r < state.neighbors.size(); ++r) {
        if (!state.selected[r]) continue;
        for (auto l : state.neighbors[r])
            if (!in_chain[l]) ++freq[l];
    }
    if (freq.empty()) return std::nullopt;
    std::uint64_t best_count = 0;
    std::uint32_t best_l = 0;
    for (const auto &[l, count] : freq) {
        if (count > best_count) { // map order makes ties resolve to the least l
            best_count = count;
            best_l = l;
        }
    }
    return best_l;
}

WinnabilityReport winnability_condition(const BigInt &left_size, const BigInt &right_size,
                                        const BigInt &degree_cap, const BigInt &threshold) {
    WinnabilityReport report;
    const Rat left(left_size, BigInt(1));
    const Rat thr(threshold, BigInt(1));
    Rat s(right_size, BigInt(1));
    if (!degree_cap.fits_u64()) throw ConfigError("degree_cap", "too large");
    const std::uint64_t d = degree_cap.magnitude_u64();
    for (std::uint64_t k = 1; k <= d; ++k) {
        s = (s - thr) / left;
        report.stage_bounds.push_back(s);
        if (s < thr) {
            report.winnable = false;
            break;
        }
    }
    return report;
}

WinnabilityReport winnability_condition(const ExtractionParams &params) {
    return winnability_condition(BigInt(params.left_size), BigInt(params.right_size),
                                 BigInt(params.degree_cap), BigInt(params.threshold));
}

std::unique_ptr<GameState> ExtractionSchema::initial_state() const {
    auto state = std::make_unique<ExtractionState>();
    state->neighbors.assign(params_.right_size, {});
    state->marked.assign(params_.left_size, false);
    state->selected.assign(params_.right_size, true);
    state->selected_count = params_.right_size;
    return state;
}

void ExtractionSchema::apply_move(GameState &state, Player mover, const json &payload) const {
    auto &st = dynamic_cast<ExtractionState &>(state);
    if (mover == Player::Alice) {
        std::uint64_t l = 0;
        if (!payload.is_object() || !payload.contains("mark") || !json_uint(payload.at("mark"), l))
            throw RuleViolation("alice payload must be {\"mark\": l}");
        if (l >= params_.left_size) throw RuleViolation("mark outside L");
        if (!st.marked[l]) {
            st.marked[l] = true;
            ++st.marked_count;
        }
        StageRecord record;
        record.stage = st.stage;
        record.mark = l;
        record.selected_before = st.selected_count;
        for (std::uint64_t r = 0; r < st.neighbors.size(); ++r) {
            if (!st.selected[r]) continue;
            const auto &nb = st.neighbors[r];
            if (!std::binary_search(nb.begin(), nb.end(), static_cast<std::uint32_t>(l))) {
                st.selected[r] = false;
                --st.selected_count;
            }
        }
        record.selected_after = st.selected_count;
        st.chain.push_back(static_cast<std::uint32_t>(l));
        ++st.stage;
        st.ledger.push_back(record);
        return;
    }
    if (!payload.is_object() || !payload.contains("edges") || !payload.at("edges").is_array())
        throw RuleViolation("bob payload must be {\"edges\": [[l, r], ...]}");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (const auto &item : payload.at("edges")) {
        std::uint64_t l = 0, r = 0;
        if (!item.is_array() || item.size() != 2 || !json_uint(item[0], l) ||
            !json_uint(item[1], r))
            throw RuleViolation("each edge must be [l, r]");
        if (l >= params_.left_size) throw RuleViolation("edge endpoint outside L");
        if (r >= params_.right_size) throw RuleViolation("edge endpoint outside R");
        edges.emplace_back(static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(r));
    }
    // degree check on the whole batch before committing; duplicates are no-ops
    std::map<std::uint32_t, std::vector<std::uint32_t>> fresh_by_r;
    for (const auto &[l, r] : edges) {
        const auto &nb = st.neighbors[r];
        if (std::binary_search(nb.begin(), nb.end(), l)) continue;
        auto &fresh = fresh_by_r[r];
        if (std::find(fresh.begin(), fresh.end(), l) == fresh.end()) fresh.push_back(l);
    }
    for (const auto &[r, fresh] : fresh_by_r) {
        if (st.neighbors[r].size() + fresh.size() > params_.degree_cap)
            throw RuleViolation("degree cap exceeded at r=" + std::to_string(r));
    }
    for (const auto &[r, fresh] : fresh_by_r) {
        auto &nb = st.neighbors[r];
        for (auto l : fresh) {
            nb.insert(std::lower_bound(nb.begin(), nb.end(), l), l);
            ++st.edge_count;
        }
    }
}

Verdict ExtractionSchema::adjudicate(const GameState &state) const {
    const auto &st = dynamic_cast<const ExtractionState &>(state);
    Verdict verdict;
    auto qualifying = qualifying_elements(st);
    if (qualifying.size() >= params_.threshold) {
        verdict.winner = Player::Alice;
        verdict.certificate = json{{"qualifying", qualifying}};
    } else {
        verdict.winner = Player::Bob;
        verdict.certificate = json::object();
    }
    return verdict;
}

std::vector<std::uint64_t> ExtractionSchema::growth_counters(const GameState &state) const {
    const auto &st = dynamic_cast<const ExtractionState &>(state);
    // selected only shrinks, so track its complement
    return {st.edge_count, st.marked_count, st.stage, st.neighbors.size() - st.selected_count};
}

std::vector<std::pair<std::string, std::string>>
ExtractionSchema::metrics(const GameState &state) const {
    const auto &st = dynamic_cast<const ExtractionState &>(state);
    return {{"marks", std::to_string(st.marked_count)},
            {"qualifying", std::to_string(qualifying_elements(st).size())},
            {"edges", std::to_string(st.edge_count)}};
}

namespace {

class PassStrategy : public Strategy {
public:
    const std::string &name() const override { return name_; }
    json propose(const GameState &, const MatchTrace &) override { return json{}; }

private:
    std::string name_ = "pass";
};

class MarkerStrategy : public Strategy {
public:
    explicit MarkerStrategy(ExtractionParams params) : params_(params) {}
    const std::string &name() const override { return name_; }
    json propose(const GameState &state, const MatchTrace &) override {
        const auto &st = dynamic_cast<const ExtractionState &>(state);
        auto mark = marker_step(st, params_);
        if (!mark) return json{};
        return json{{"mark", *mark}};
    }

private:
    std::string name_ = "marker";
    ExtractionParams params_;
};

class RandomEdgeAdversary : public Strategy {
public:
    RandomEdgeAdversary(ExtractionParams params, std::uint64_t seed)
        : params_(params), rng_(seed) {}
    const std::string &name() const override { return name_; }
    json propose(const GameState &state, const MatchTrace &) override {
        const auto &st = dynamic_cast<const ExtractionState &>(state);
        if (st.edge_count >= params_.right_size * params_.degree_cap) return json{};
        json edges = json::array();
        std::map<std::uint64_t, std::uint64_t> batched; // conservative slack per r
        const auto has_room = [&](std::uint64_t r) {
            return st.neighbors[r].size() + batched[r] < params_.degree_cap;
        };
        const int want = 1 + static_cast<int>(rng_.below(6));
        for (int i = 0; i < want; ++i) {
            std::uint64_t r = rng_.below(params_.right_size);
            bool found = has_room(r);
            for (int attempt = 0; attempt < 16 && !found; ++attempt) {
                r = rng_.below(params_.right_size);
                found = has_room(r);
            }
            if (!found) {
                for (r = 0; r < params_.right_size; ++r)
                    if (has_room(r)) break;
                if (r == params_.right_size) break;
            }
            ++batched[r];
            edges.push_back(json::array({rng_.below(params_.left_size), r}));
        }
        if (edges.empty()) return json{};
        return json{{"edges", edges}};
    }

private:
    std::string name_ = "random_edges";
    ExtractionParams params_;
    SplitMix64 rng_;
};

// Gives every element of R one neighbor before any element gets a second,
// walking R in order within each pass.
class FloodingAdversary : public Strategy {
public:
    FloodingAdversary(ExtractionParams params, std::uint64_t seed)
        : params_(params), rng_(seed) {}
    const std::string &name() const override { return name_; }
    json propose(const GameState &state, const MatchTrace &) override {
        const auto &st = dynamic_cast<const ExtractionState &>(state);
        json edges = json::array();
        const int want = 1 + static_cast<int>(rng_.below(4));
        for (int i = 0; i < want; ++i) {
            while (pass_ < params_.degree_cap && cursor_ >= params_.right_size) {
                ++pass_;
                cursor_ = 0;
            }
            if (pass_ >= params_.degree_cap) break;
            const std::uint64_t r = cursor_++;
            const auto &nb = st.neighbors[r];
            if (nb.size() >= params_.degree_cap || nb.size() >= params_.left_size) continue;
            std::uint64_t l = rng_.below(params_.left_size);
            while (std::binary_search(nb.begin(), nb.end(), static_cast<std::uint32_t>(l)))
                l = (l + 1) % params_.left_size;
            edges.push_back(json::array({l, r}));
        }
        if (edges.empty()) return json{};
        return json{{"edges", edges}};
    }

private:
    std::string name_ = "flooding";
    ExtractionParams params_;
    SplitMix64 rng_;
    std::uint64_t pass_ = 0;
    std::uint64_t cursor_ = 0;
};

} // namespace

std::unique_ptr<Strategy> make_strategy(const ExtractionSchema &schema, Player role,
                                        const std::string &name, const json &,
                                        std::uint64_t seed) {
    const std::uint64_t stream = SplitMix64::derive(seed, role == Player::Alice ? 1 : 2);
    if (name == "pass") return std::make_unique<PassStrategy>();
    if (name == "marker") return std::make_unique<MarkerStrategy>(schema.params());
    if (name == "random_edges")
        return std::make_unique<RandomEdgeAdversary>(schema.params(), stream);
    if (name == "flooding") return std::make_unique<FloodingAdversary>(schema.params(), stream);
    throw ConfigError("strategy", "unknown extraction strategy " + name);
}

} // namespace kcg::extraction
