#include "kcgames/bijection.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "kcgames/rng.hpp"

namespace kcg::bijection {

BijectionParams BijectionParams::from_json(const json &params) {
    BijectionParams out;
    out.domain_size = params.value("domain_size", 64u);
    if (out.domain_size == 0) throw ConfigError("domain_size", "must be positive");
    if (out.domain_size > (1u << 16)) throw ConfigError("domain_size", "too large to simulate");
    return out;
}

bool is_permutation(const FunctionVec &h, std::uint32_t n) {
    if (h.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (auto v : h) {
        if (v >= n || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

namespace {

bool covered(const BijectionState &state, std::uint32_t x, std::uint32_t y) {
    for (const auto &h : state.hs)
        if (h[x] == y) return true;
    return false;
}

bool confirmed_backward(const BijectionState &state, std::uint32_t x, std::uint32_t y) {
    for (const auto &g : state.gs)
        if (g[y] == x) return true;
    return false;
}

} // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> confirmed_pairs(const BijectionState &state) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t x = 0; x < state.n; ++x) {
        std::vector<std::uint32_t> ys;
        for (const auto &f : state.fs) {
            const std::uint32_t y = f[x];
            if (std::find(ys.begin(), ys.end(), y) != ys.end()) continue;
            if (confirmed_backward(state, x, y)) ys.push_back(y);
        }
        std::sort(ys.begin(), ys.end());
        for (auto y : ys) out.emplace_back(x, y);
    }
    return out;
}

std::optional<Counterexample> find_counterexample(const BijectionState &state) {
    for (std::uint32_t x = 0; x < state.n; ++x) {
        for (std::size_t i = 0; i < state.fs.size(); ++i) {
            const std::uint32_t y = state.fs[i][x];
            for (std::size_t j = 0; j < state.gs.size(); ++j) {
                if (state.gs[j][y] != x) continue;
                if (!covered(state, x, y)) return Counterexample{x, y, i + 1, j + 1};
                break; // this (x, y) is confirmed and covered; later j add nothing
            }
        }
    }
    return std::nullopt;
}

PartialMatching induced_matching(const FunctionVec &f, const FunctionVec &g) {
    PartialMatching out;
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        const std::uint32_t y = f[x];
        if (y < g.size() && g[y] == x) out.emplace(x, y);
    }
    return out;
}

FunctionVec complete_to_bijection(const PartialMatching &matching, std::uint32_t n) {
    std::vector<bool> target_used(n, false);
    for (const auto &[x, y] : matching) {
        if (x >= n || y >= n) throw NotInjectiveError("matching entry outside domain");
        if (target_used[y]) throw NotInjectiveError("matching maps two sources to one target");
        target_used[y] = true;
    }
    FunctionVec out(n, 0);
    std::vector<bool> source_done(n, false);
    for (const auto &[x, y] : matching) {
        out[x] = y;
        source_done[x] = true;
    }
    std::uint32_t next_target = 0;
    for (std::uint32_t x = 0; x < n; ++x) {
        if (source_done[x]) continue;
        while (target_used[next_target]) ++next_target;
        out[x] = next_target;
        target_used[next_target] = true;
    }
    return out;
}

// ---- m-regular padding + matching extraction ---------------------------------

namespace {

// Hopcroft-Karp maximum matching on the support of a bipartite multigraph.
class BipartiteMatcher {
public:
    BipartiteMatcher(std::uint32_t n, const std::vector<std::vector<std::uint32_t>> &adj)
        : n_(n), adj_(adj) {}

    // Returns match_left; caller checks perfection.
    std::vector<std::int64_t> solve() {
        match_left_.assign(n_, -1);
        match_right_.assign(n_, -1);
        while (bfs()) {
            for (std::uint32_t u = 0; u < n_; ++u)
                if (match_left_[u] < 0) dfs(u);
        }
        return match_left_;
    }

private:
    static constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

    bool bfs() {
        std::queue<std::uint32_t> queue;
        dist_.assign(n_, kInf);
        for (std::uint32_t u = 0; u < n_; ++u) {
            if (match_left_[u] < 0) {
                dist_[u] = 0;
                queue.push(u);
            }
        }
        bool found = false;
        while (!queue.empty()) {
            const std::uint32_t u = queue.front();
            queue.pop();
            for (auto v : adj_[u]) {
                const std::int64_t w = match_right_[v];
                if (w < 0) {
                    found = true;
                } else if (dist_[static_cast<std::uint32_t>(w)] == kInf) {
                    dist_[static_cast<std::uint32_t>(w)] = dist_[u] + 1;
                    queue.push(static_cast<std::uint32_t>(w));
                }
            }
        }
        return found;
    }

    bool dfs(std::uint32_t u) {
        for (auto v : adj_[u]) {
            const std::int64_t w = match_right_[v];
            if (w < 0 || (dist_[static_cast<std::uint32_t>(w)] == dist_[u] + 1 &&
                          dfs(static_cast<std::uint32_t>(w)))) {
                match_left_[u] = v;
                match_right_[v] = u;
                return true;
            }
        }
        dist_[u] = kInf;
        return false;
    }

    std::uint32_t n_;
    const std::vector<std::vector<std::uint32_t>> &adj_;
    std::vector<std::int64_t> match_left_, match_right_;
    std::vector<std::uint32_t> dist_;
};

} // namespace

std::vector<FunctionVec> offline_cover(const std::vector<std::pair<std::uint32_t, std::uint32_t>> &edges,
                                       std::uint32_t n, std::uint32_t m) {
    // multiplicity matrix as sparse maps x -> (y -> count)
    std::vector<std::map<std::uint32_t, std::uint32_t>> mult(n);
    std::vector<std::uint32_t> deg_left(n, 0), deg_right(n, 0);
    for (const auto &[x, y] : edges) {
        if (x >= n || y >= n) throw DegreeBoundViolatedError("edge endpoint outside domain");
        if (++mult[x][y] > 1) throw DegreeBoundViolatedError("duplicate edge in cover input");
        ++deg_left[x];
        ++deg_right[y];
    }
    for (std::uint32_t v = 0; v < n; ++v) {
        if (deg_left[v] > m || deg_right[v] > m)
            throw DegreeBoundViolatedError("vertex degree exceeds cover bound m=" +
                                           std::to_string(m));
    }

    // pad to m-regular with parallel edges, pairing deficient vertices in order
    std::uint32_t rx = 0;
    for (std::uint32_t x = 0; x < n; ++x) {
        while (deg_left[x] < m) {
            while (rx < n && deg_right[rx] >= m) ++rx;
            ++mult[x][rx];
            ++deg_left[x];
            ++deg_right[rx];
        }
    }

    std::vector<FunctionVec> out;
    for (std::uint32_t round = 0; round < m; ++round) {
        std::vector<std::vector<std::uint32_t>> support(n);
        for (std::uint32_t x = 0; x < n; ++x)
            for (const auto &[y, count] : mult[x])
                if (count > 0) support[x].push_back(y);
        BipartiteMatcher matcher(n, support);
        auto match = matcher.solve();
        FunctionVec perm(n, 0);
        for (std::uint32_t x = 0; x < n; ++x) {
            if (match[x] < 0)
                throw GameError("internal: regular multigraph lost its perfect matching");
            const std::uint32_t y = static_cast<std::uint32_t>(match[x]);
            perm[x] = y;
            --mult[x][y];
        }
        out.push_back(std::move(perm));
    }
    return out;
}

// ---- schema ---------------------------------------------------------------

std::unique_ptr<GameState> BijectionSchema::initial_state() const {
    auto state = std::make_unique<BijectionState>();
    state->n = params_.domain_size;
    return state;
}

namespace {

std::vector<FunctionVec> parse_tables(const json &payload, const char *key, std::uint32_t n,
                                      bool permutations_only) {
    std::vector<FunctionVec> out;
    if (!payload.contains(key)) return out;
    const json &arr = payload.at(key);
    if (!arr.is_array()) throw RuleViolation(std::string(key) + " must be a list of tables");
    for (const auto &item : arr) {
        if (!item.is_array() || item.size() != n)
            throw RuleViolation("each table must list exactly N values");
        FunctionVec table;
        table.reserve(n);
        for (const auto &v : item) {
            std::uint64_t value = 0;
            if (!json_uint(v, value) || value >= n)
                throw RuleViolation("table value outside [0, N)");
            table.push_back(static_cast<std::uint32_t>(value));
        }
        if (permutations_only && !is_permutation(table, n))
            throw RuleViolation("published bijection is not a permutation");
        out.push_back(std::move(table));
    }
    return out;
}

} // namespace

void BijectionSchema::apply_move(GameState &state, Player mover, const json &payload) const {
    auto &st = dynamic_cast<BijectionState &>(state);
    if (!payload.is_object()) throw RuleViolation("payload must be an object");
    const std::uint32_t n = params_.domain_size;
    if (mover == Player::Alice) {
        auto hs = parse_tables(payload, "h", n, true);
        if (hs.empty()) throw RuleViolation("responder move must publish at least one bijection");
        for (auto &h : hs) st.hs.push_back(std::move(h));
        return;
    }
    auto fs = parse_tables(payload, "f", n, false);
    auto gs = parse_tables(payload, "g", n, false);
    if (fs.empty() && gs.empty())
        throw RuleViolation("adversary move must add at least one function");
    for (auto &f : fs) st.fs.push_back(std::move(f));
    for (auto &g : gs) st.gs.push_back(std::move(g));
}

Verdict BijectionSchema::adjudicate(const GameState &state) const {
    const auto &st = dynamic_cast<const BijectionState &>(state);
    Verdict verdict;
    if (auto cx = find_counterexample(st)) {
        verdict.winner = Player::Bob;
        verdict.certificate = json{{"x", cx->x}, {"y", cx->y}, {"i", cx->i}, {"j", cx->j}};
    } else {
        verdict.winner = Player::Alice;
        verdict.certificate = json{{"confirmed_pairs", confirmed_pairs(st).size()},
                                   {"bijections", st.hs.size()}};
    }
    return verdict;
}

std::vector<std::uint64_t> BijectionSchema::growth_counters(const GameState &state) const {
    const auto &st = dynamic_cast<const BijectionState &>(state);
    return {st.fs.size(), st.gs.size(), st.hs.size()};
}

std::vector<std::pair<std::string, std::string>>
BijectionSchema::metrics(const GameState &state) const {
    const auto &st = dynamic_cast<const BijectionState &>(state);
    return {{"bijections", std::to_string(st.hs.size())},
            {"adversary_f", std::to_string(st.fs.size())},
            {"adversary_g", std::to_string(st.gs.size())},
            {"confirmed", std::to_string(confirmed_pairs(st).size())}};
}

// ---- strategies -------------------------------------------------------------

namespace {

class PassStrategy : public Strategy {
public:
    const std::string &name() const override { return name_; }
    json propose(const GameState &, const MatchTrace &) override { return json{}; }

private:
    std::string name_ = "pass";
};

json tables_payload(const char *key, const std::vector<FunctionVec> &tables) {
    json arr = json::array();
    for (const auto &t : tables) {
        json row = json::array();
        for (auto v : t) row.push_back(v);
        arr.push_back(std::move(row));
    }
    return json{{key, arr}};
}

// One h_{ij} per new roster pair, in lexicographic (i, j) order.
class PairwiseResponder : public Strategy {
public:
    const std::string &name() const override { return name_; }
    json propose(const GameState &state, const MatchTrace &) override {
        const auto &st = dynamic_cast<const BijectionState &>(state);
        std::vector<FunctionVec> hs;
        for (std::size_t i = 0; i < st.fs.size(); ++i) {
            for (std::size_t j = 0; j < st.gs.size(); ++j) {
                if (i < done_f_ && j < done_g_) continue;
                hs.push_back(complete_to_bijection(induced_matching(st.fs[i], st.gs[j]), st.n));
            }
        }
        done_f_ = st.fs.size();
        done_g_ = st.gs.size();
        if (hs.empty()) return json{};
        return tables_payload("h", hs);
    }

private:
    std::string name_ = "pairwise";
    std::size_t done_f_ = 0;
    std::size_t done_g_ = 0;
};

// Publishes the fewest bijections restoring safety each turn: the uncovered
// confirmed pairs form a bipartite graph of some max degree D, D bijections
// are necessary (a degree-D vertex meets each permutation at most once) and
// D suffice by the regular-cover decomposition.
class MinimizerResponder : public Strategy {
public:
    const std::string &name() const override { return name_; }
    json propose(const GameState &state, const MatchTrace &) override {
        const auto &st = dynamic_cast<const BijectionState &>(state);
        std::vector<std::pair<std::uint32_t, std::uint32_t>> uncovered;
        for (const auto &[x, y] : confirmed_pairs(st))
            if (!covered(st, x, y)) uncovered.emplace_back(x, y);
        if (uncovered.empty()) return json{};
        std::vector<std::uint32_t> deg_left(st.n, 0), deg_right(st.n, 0);
        std::uint32_t max_degree = 0;
        for (const auto &[x, y] : uncovered) {
            max_degree = std::max({max_degree, ++deg_left[x], ++deg_right[y]});
        }
        return tables_payload("h", offline_cover(uncovered, st.n, max_degree));
    }

private:
    std::string name_ = "minimizer";
};

// Constant functions only: an f move selects a right vertex, a g move a
// left vertex, always the least index not already linked by a published
// bijection to the opposite selection. Alternates sides starting with f.
class ConstantAdversary : public Strategy {
public:
    explicit ConstantAdversary(std::uint64_t moves) : moves_left_(moves) {}
    const std::string &name() const override { return name_; }
    json propose(const GameState &state, const MatchTrace &) override {
        if (moves_left_ == 0) return json{};
        const auto &st = dynamic_cast<const BijectionState &>(state);
        const bool f_side = next_is_f_;
        auto fresh = find_fresh(st, f_side);
        if (!fresh) return json{};
        --moves_left_;
        next_is_f_ = !next_is_f_;
        if (f_side) {
            selected_right_.push_back(*fresh);
            return tables_payload("f", {FunctionVec(st.n, *fresh)});
        }
        selected_left_.push_back(*fresh);
        return tables_payload("g", {FunctionVec(st.n, *fresh)});
    }

private:
    std::optional<std::uint32_t> find_fresh(const BijectionState &st, bool f_side) const {
        for (std::uint32_t v = 0; v < st.n; ++v) {
            bool ok = true;
            if (f_side) {
                // right vertex v: no h may send a selected left vertex to it
                for (auto b : selected_left_)
                    if (linked(st, b, v)) { ok = false; break; }
                if (ok && std::find(selected_right_.begin(), selected_right_.end(), v) !=
                              selected_right_.end())
                    ok = false;
            } else {
                for (auto a : selected_right_)
                    if (linked(st, v, a)) { ok = false; break; }
                if (ok && std::find(selected_left_.begin(), selected_left_.end(), v) !=
                              selected_left_.end())
                    ok = false;
            }
            if (ok) return v;
        }
        return std::nullopt;
    }

    static bool linked(const BijectionState &st, std::uint32_t left, std::uint32_t right) {
        for (const auto &h : st.hs)
            if (h[left] == right) return true;
        return false;
    }

    std::string name_ = "constant";
    std::uint64_t moves_left_;
    bool next_is_f_ = true;
    std::vector<std::uint32_t> selected_left_;
    std::vector<std::uint32_t> selected_right_;
};

// Random total functions, filling both roster sides up to a per-side budget.
class RandomRosterAdversary : public Strategy {
public:
    RandomRosterAdversary(std::uint64_t per_side, std::uint64_t seed)
        : per_side_(per_side), rng_(seed) {}
    const std::string &name() const override { return name_; }
    json propose(const GameState &state, const MatchTrace &) override {
        const auto &st = dynamic_cast<const BijectionState &>(state);
        const bool f_open = st.fs.size() < per_side_;
        const bool g_open = st.gs.size() < per_side_;
        if (!f_open && !g_open) return json{};
        bool pick_f = f_open && (!g_open || rng_.below(2) == 0);
        FunctionVec table(st.n);
        for (auto &v : table) v = static_cast<std::uint32_t>(rng_.below(st.n));
        return tables_payload(pick_f ? "f" : "g", {table});
    }

private:
    std::string name_ = "random_roster";
    std::uint64_t per_side_;
    SplitMix64 rng_;
};

} // namespace

std::unique_ptr<Strategy> make_strategy(const BijectionSchema &schema, Player role,
                                        const std::string &name, const json &extras,
                                        std::uint64_t seed) {
    (void)schema;
    const std::uint64_t stream = SplitMix64::derive(seed, role == Player::Alice ? 1 : 2);
    if (name == "pass") return std::make_unique<PassStrategy>();
    if (name == "pairwise") return std::make_unique<PairwiseResponder>();
    if (name == "minimizer") return std::make_unique<MinimizerResponder>();
    if (name == "constant")
        return std::make_unique<ConstantAdversary>(extras.value("moves", 8ull));
    if (name == "random_roster")
        return std::make_unique<RandomRosterAdversary>(extras.value("moves", 4ull), stream);
    throw ConfigError("strategy", "unknown bijection strategy " + name);
}

} // namespace kcg::bijection
