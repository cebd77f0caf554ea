#include "kcgames/total_function.hpp"

#include <algorithm>
#include <bit>

#include "kcgames/rng.hpp"

namespace kcg::total_function {

TotalFunctionParams TotalFunctionParams::from_json(const json &params) {
    TotalFunctionParams out;
    out.n = params.value("n", 1u);
    if (out.n < 1 || out.n > 10) throw ConfigError("n", "bit width must be in [1, 10]");
    return out;
}

std::optional<Witness> find_witness(const TotalFunctionState &state) {
    std::optional<Witness> best;
    const std::uint64_t points = 1ull << state.n;
    for (std::uint32_t y = 0; y < points; ++y) {
        if (!state.f[y]) continue;
        const std::uint32_t x = *state.f[y];
        bool avoided = true;
        for (const auto &g : state.gs) {
            if (g[y] == x) {
                avoided = false;
                break;
            }
        }
        if (!avoided) continue;
        if (!best || x < best->x || (x == best->x && y < best->y)) best = Witness{x, y};
    }
    return best;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> builder_step(const TotalFunctionState &state) {
    if (find_witness(state)) return std::nullopt;
    const std::uint64_t points = 1ull << state.n;
    for (std::uint32_t y = 0; y < points; ++y) {
        if (state.f[y]) continue;
        // least x different from every currently listed g(y)
        std::vector<bool> taken(points, false);
        for (const auto &g : state.gs) taken[g[y]] = true;
        for (std::uint32_t x = 0; x < points; ++x)
            if (!taken[x]) return std::make_pair(y, x);
        throw GameError("exhausted: no value choice left at y=" + std::to_string(y));
    }
    throw GameError("exhausted: f is total but no witness exists");
}

std::optional<std::uint64_t> kbar(std::uint32_t x, std::uint32_t y,
                                  const std::vector<FunctionTable> &universe) {
    std::optional<std::uint64_t> best;
    for (std::size_t i = 0; i < universe.size(); ++i) {
        if (universe[i][y] != x) continue;
        const std::uint64_t len = std::bit_width(static_cast<std::uint64_t>(i));
        if (!best || len < *best) best = len;
    }
    return best;
}

FunctionTable table_at_index(unsigned n, std::uint64_t index) {
    const std::uint64_t points = 1ull << n;
    FunctionTable table(points, 0);
    for (std::size_t pos = points; pos-- > 0;) {
        table[pos] = static_cast<std::uint32_t>(index % points);
        index /= points;
    }
    return table;
}

std::unique_ptr<GameState> TotalFunctionSchema::initial_state() const {
    auto state = std::make_unique<TotalFunctionState>();
    state->n = params_.n;
    state->f.assign(params_.points(), std::nullopt);
    return state;
}

void TotalFunctionSchema::apply_move(GameState &state, Player mover, const json &payload) const {
    auto &st = dynamic_cast<TotalFunctionState &>(state);
    const std::uint64_t points = params_.points();
    if (mover == Player::Alice) {
        if (!payload.is_object() || !payload.contains("set") || !payload.at("set").is_array())
            throw RuleViolation("alice payload must be {\"set\": [[y, x], ...]}");
        // validate the whole batch before touching state
        std::vector<std::pair<std::uint32_t, std::uint32_t>> sets;
        for (const auto &item : payload.at("set")) {
            std::uint64_t y = 0, x = 0;
            if (!item.is_array() || item.size() != 2 || !json_uint(item[0], y) ||
                !json_uint(item[1], x))
                throw RuleViolation("each entry must be [y, x]");
            if (y >= points || x >= points) throw RuleViolation("y or x outside {0,1}^n");
            sets.emplace_back(static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(x));
        }
        auto tentative = st.f;
        std::size_t defined = st.f_defined;
        for (const auto &[y, x] : sets) {
            if (tentative[y]) {
                if (*tentative[y] != x)
                    throw RuleViolation("f(" + std::to_string(y) + ") is already defined");
                continue;
            }
            tentative[y] = x;
            ++defined;
        }
        st.f = std::move(tentative);
        st.f_defined = defined;
        return;
    }
    if (!payload.is_object() || !payload.contains("add") || !payload.at("add").is_array())
        throw RuleViolation("bob payload must be {\"add\": [table, ...]}");
    std::vector<FunctionTable> tables;
    for (const auto &item : payload.at("add")) {
        if (!item.is_array() || item.size() != points)
            throw RuleViolation("each table must list exactly 2^n values");
        FunctionTable table;
        table.reserve(points);
        for (const auto &v : item) {
            std::uint64_t value = 0;
            if (!json_uint(v, value) || value >= points)
                throw RuleViolation("table value outside {0,1}^n");
            table.push_back(static_cast<std::uint32_t>(value));
        }
        tables.push_back(std::move(table));
    }
    if (st.gs.size() + tables.size() > params_.quota())
        throw RuleViolation("opponent quota of 2^n - 1 total functions exceeded");
    for (auto &t : tables) st.gs.push_back(std::move(t));
}

Verdict TotalFunctionSchema::adjudicate(const GameState &state) const {
    const auto &st = dynamic_cast<const TotalFunctionState &>(state);
    Verdict verdict;
    if (auto witness = find_witness(st)) {
        verdict.winner = Player::Alice;
        verdict.certificate = json{{"x", witness->x}, {"y", witness->y}};
    } else {
        verdict.winner = Player::Bob;
        verdict.certificate = json::object();
    }
    return verdict;
}

std::vector<std::uint64_t> TotalFunctionSchema::growth_counters(const GameState &state) const {
    const auto &st = dynamic_cast<const TotalFunctionState &>(state);
    return {st.f_defined, st.gs.size()};
}

std::vector<std::pair<std::string, std::string>>
TotalFunctionSchema::metrics(const GameState &state) const {
    const auto &st = dynamic_cast<const TotalFunctionState &>(state);
    return {{"f_defined", std::to_string(st.f_defined)},
            {"functions_listed", std::to_string(st.gs.size())}};
}

namespace {

class PassStrategy : public Strategy {
public:
    const std::string &name() const override { return name_; }
    json propose(const GameState &, const MatchTrace &) override { return json{}; }

private:
    std::string name_ = "pass";
};

class BuilderStrategy : public Strategy {
public:
    const std::string &name() const override { return name_; }
    json propose(const GameState &state, const MatchTrace &) override {
        const auto &st = dynamic_cast<const TotalFunctionState &>(state);
        auto step = builder_step(st);
        if (!step) return json{};
        return json{{"set", json::array({json::array({step->first, step->second})})}};
    }

private:
    std::string name_ = "builder";
};

json table_payload(std::vector<FunctionTable> tables) {
    json add = json::array();
    for (const auto &t : tables) {
        json row = json::array();
        for (auto v : t) row.push_back(v);
        add.push_back(std::move(row));
    }
    return json{{"add", add}};
}

// Appends one function per round in the fixed lexicographic-table order
// until the budget runs out, then passes forever.
class EnumeratingAdversary : public Strategy {
public:
    EnumeratingAdversary(unsigned n, std::uint64_t budget) : n_(n), budget_(budget) {}
    const std::string &name() const override { return name_; }
    json propose(const GameState &, const MatchTrace &) override {
        if (next_ >= budget_) return json{};
        return table_payload({table_at_index(n_, next_++)});
    }

private:
    std::string name_ = "enumerating";
    unsigned n_;
    std::uint64_t budget_;
    std::uint64_t next_ = 0;
};

class RandomAdversary : public Strategy {
public:
    RandomAdversary(unsigned n, std::uint64_t budget, std::uint64_t seed)
        : n_(n), budget_(budget), rng_(seed) {}
    const std::string &name() const override { return name_; }
    json propose(const GameState &state, const MatchTrace &) override {
        const auto &st = dynamic_cast<const TotalFunctionState &>(state);
        const std::uint64_t left = budget_ > st.gs.size() ? budget_ - st.gs.size() : 0;
        if (left == 0) return json{};
        std::uint64_t count = rng_.below(4) == 0 ? 2 : 1;
        count = std::min(count, left);
        const std::uint64_t points = 1ull << n_;
        std::vector<FunctionTable> tables;
        for (std::uint64_t i = 0; i < count; ++i) {
            FunctionTable t(points);
            for (auto &v : t) v = static_cast<std::uint32_t>(rng_.below(points));
            tables.push_back(std::move(t));
        }
        return table_payload(std::move(tables));
    }

private:
    std::string name_ = "random";
    unsigned n_;
    std::uint64_t budget_;
    SplitMix64 rng_;
};

} // namespace

std::unique_ptr<Strategy> make_strategy(const TotalFunctionSchema &schema, Player role,
                                        const std::string &name, const json &extras,
                                        std::uint64_t seed) {
    const unsigned n = schema.params().n;
    const std::uint64_t stream = SplitMix64::derive(seed, role == Player::Alice ? 1 : 2);
    if (name == "pass") return std::make_unique<PassStrategy>();
    if (name == "builder") return std::make_unique<BuilderStrategy>();
    const std::uint64_t budget =
        std::min<std::uint64_t>(extras.value("budget", schema.params().quota()),
                                schema.params().quota());
    if (name == "enumerating") return std::make_unique<EnumeratingAdversary>(n, budget);
    if (name == "random") return std::make_unique<RandomAdversary>(n, budget, stream);
    throw ConfigError("strategy", "unknown total_function strategy " + name);
}

} // namespace kcg::total_function
