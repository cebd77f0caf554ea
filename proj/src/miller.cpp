#include "kcgames/miller.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "kcgames/rng.hpp"

namespace kcg::miller {

std::uint64_t MillerParams::total_elements() const {
    std::uint64_t total = 0;
    for (auto s : sizes) total += s;
    return total;
}

json MillerParams::to_json() const {
    return json{{"ratio_target", ratio_target}, {"sizes", sizes}};
}

MillerParams MillerParams::from_json(const json &params) {
    MillerParams out;
    out.ratio_target = params.value("ratio_target", 1ull);
    if (out.ratio_target == 0) throw ConfigError("ratio_target", "must be positive");
    if (!params.contains("sizes") || !params.at("sizes").is_array() ||
        params.at("sizes").empty())
        throw ConfigError("sizes", "must be a nonempty list of set sizes");
    for (const auto &s : params.at("sizes")) {
        std::uint64_t size = 0;
        if (!json_uint(s, size) || size == 0)
            throw ConfigError("sizes", "every set size must be positive");
        out.sizes.push_back(size);
    }
    if (out.total_elements() > (1ull << 20)) throw ConfigError("sizes", "too many elements");
    return out;
}

bool winnability(const MillerParams &params) {
    const std::uint64_t c = params.ratio_target;
    const std::uint64_t n = params.num_sets();
    const auto at_least = [&](std::uint64_t exp) {
        return exp < 63 && n >= (1ull << exp);
    };
    bool lemma_shape = at_least(8 * c);
    bool exact_shape = at_least(4 * c);
    bool multiple_shape = at_least(4 * c);
    for (auto size : params.sizes) {
        lemma_shape = lemma_shape && size >= 8 * c;
        exact_shape = exact_shape && size == 4 * c;
        multiple_shape = multiple_shape && size % (4 * c) == 0;
    }
    return lemma_shape || exact_shape || multiple_shape;
}

std::uint64_t group_count_for(std::uint64_t size, std::uint64_t ratio_target) {
    const std::uint64_t four_c = 4 * ratio_target;
    return size % four_c == 0 ? four_c : 8 * ratio_target;
}

std::vector<std::vector<std::uint64_t>> build_groups(std::uint64_t size, std::uint64_t m) {
    std::vector<std::vector<std::uint64_t>> groups;
    const std::uint64_t used = std::min(size, m); // never create empty groups
    const std::uint64_t base = size / used;
    const std::uint64_t extra = size % used;
    std::uint64_t next = 0;
    for (std::uint64_t g = 0; g < used; ++g) {
        const std::uint64_t count = base + (g < extra ? 1 : 0);
        std::vector<std::uint64_t> members;
        for (std::uint64_t i = 0; i < count; ++i) members.push_back(next++);
        groups.push_back(std::move(members));
    }
    return groups;
}

// ---- state helpers ----------------------------------------------------------

namespace {

// A(s)/B(s) >= C on an enabled element, with zero Bob weight counting as an
// unbounded ratio whenever A(s) > 0. Exact: A(s) * |S_j| >= C * B(j).
bool element_wins(const MillerState &st, const MillerParams &params, std::uint64_t element) {
    if (st.disabled[element]) return false;
    const Rat &weight = st.a[element];
    if (weight.sign() <= 0) return false;
    const std::uint64_t j = st.set_of[element];
    if (st.b[j].is_zero()) return true;
    return weight * Rat(static_cast<long long>(params.sizes[j])) >=
           st.b[j] * Rat(static_cast<long long>(params.ratio_target));
}

} // namespace

std::optional<std::uint64_t> find_witness(const MillerState &state, const MillerParams &params) {
    for (std::uint64_t s = 0; s < state.a.size(); ++s)
        if (element_wins(state, params, s)) return s;
    return std::nullopt;
}

std::vector<SetLedgerRow> set_ledger(const MillerState &state, const MillerParams &params) {
    std::vector<SetLedgerRow> rows;
    for (std::uint64_t j = 0; j < params.num_sets(); ++j) {
        SetLedgerRow row;
        row.set_index = j;
        row.alice_spend = state.a_set_spend[j];
        row.bob_spend = state.b[j];
        Rat top; // Alice's highest weight in the set, disabled elements included
        for (std::uint64_t s = state.offset[j]; s < state.offset[j] + params.sizes[j]; ++s)
            if (state.a[s] > top) top = state.a[s];
        row.paid = row.alice_spend.sign() > 0 && state.b[j].sign() > 0 &&
                   state.b[j] * Rat(static_cast<long long>(params.ratio_target)) >=
                       top * Rat(static_cast<long long>(params.sizes[j]));
        row.won = state.winning[j];
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---- schema -----------------------------------------------------------------

MillerSchema::MillerSchema(MillerParams params) : params_(std::move(params)) {}

std::unique_ptr<GameState> MillerSchema::initial_state() const {
    auto state = std::make_unique<MillerState>();
    const std::uint64_t n = params_.num_sets();
    state->offset.reserve(n);
    std::uint64_t next = 0;
    for (std::uint64_t j = 0; j < n; ++j) {
        state->offset.push_back(next);
        for (std::uint64_t i = 0; i < params_.sizes[j]; ++i)
            state->set_of.push_back(static_cast<std::uint32_t>(j));
        next += params_.sizes[j];
    }
    state->a.assign(next, Rat());
    state->b.assign(n, Rat());
    state->disabled.assign(next, false);
    state->enabled = params_.sizes;
    state->a_set_spend.assign(n, Rat());
    state->max_enabled_a.assign(n, Rat());
    state->winning.assign(n, false);
    return state;
}

void MillerSchema::rescan_max(MillerState &state, std::uint64_t j) const {
    Rat best;
    for (std::uint64_t s = state.offset[j]; s < state.offset[j] + params_.sizes[j]; ++s)
        if (!state.disabled[s] && state.a[s] > best) best = state.a[s];
    state.max_enabled_a[j] = std::move(best);
}

void MillerSchema::refresh_winning(MillerState &state, std::uint64_t j) const {
    bool now = false;
    if (state.max_enabled_a[j].sign() > 0) {
        now = state.b[j].is_zero() ||
              state.max_enabled_a[j] * Rat(static_cast<long long>(params_.sizes[j])) >=
                  state.b[j] * Rat(static_cast<long long>(params_.ratio_target));
    }
    if (now != state.winning[j]) {
        state.winning[j] = now;
        state.winning_count += now ? 1 : -1;
    }
}

namespace {

Rat rat_field(const json &value, const char *what) {
    if (!value.is_string()) throw RuleViolation(std::string(what) + " must be a \"p/q\" string");
    Rat r;
    try {
        r = Rat::from_string(value.get<std::string>());
    } catch (const std::exception &) {
        throw RuleViolation(std::string(what) + " is not a valid rational");
    }
    if (r.is_negative()) throw RuleViolation(std::string(what) + " must be nonnegative");
    return r;
}

} // namespace

void MillerSchema::apply_move(GameState &state, Player mover, const json &payload) const {
    auto &st = dynamic_cast<MillerState &>(state);
    if (!payload.is_object()) throw RuleViolation("payload must be an object");
    std::set<std::uint64_t> touched;

    if (mover == Player::Alice) {
        if (!payload.contains("add") || !payload.at("add").is_array())
            throw RuleViolation("alice payload must be {\"add\": [[element, \"p/q\"], ...]}");
        std::vector<std::pair<std::uint64_t, Rat>> adds;
        Rat sum;
        for (const auto &item : payload.at("add")) {
            std::uint64_t s = 0;
            if (!item.is_array() || item.size() != 2 || !json_uint(item[0], s))
                throw RuleViolation("each entry must be [element, \"p/q\"]");
            if (s >= st.a.size()) throw RuleViolation("element out of range");
            Rat inc = rat_field(item[1], "alice increment");
            sum += inc;
            adds.emplace_back(s, std::move(inc));
        }
        if (st.a_total + sum > Rat(1))
            throw RuleViolation("alice total weight would exceed 1");
        for (auto &[s, inc] : adds) {
            if (inc.is_zero()) continue;
            if (st.a[s].is_zero()) ++st.a_positive;
            st.a[s] += inc;
            const std::uint64_t j = st.set_of[s];
            st.a_set_spend[j] += inc;
            if (!st.disabled[s] && st.a[s] > st.max_enabled_a[j]) st.max_enabled_a[j] = st.a[s];
            touched.insert(j);
        }
        st.a_total += sum;
        for (auto j : touched) refresh_winning(st, j);
        return;
    }

    std::vector<std::pair<std::uint64_t, Rat>> raises;
    std::vector<std::uint64_t> disables;
    Rat sum;
    if (payload.contains("raise")) {
        if (!payload.at("raise").is_array())
            throw RuleViolation("raise must be [[set, \"p/q\"], ...]");
        for (const auto &item : payload.at("raise")) {
            std::uint64_t j = 0;
            if (!item.is_array() || item.size() != 2 || !json_uint(item[0], j))
                throw RuleViolation("each raise must be [set, \"p/q\"]");
            if (j >= params_.num_sets()) throw RuleViolation("set index out of range");
            Rat inc = rat_field(item[1], "bob increment");
            sum += inc;
            raises.emplace_back(j, std::move(inc));
        }
    }
    if (payload.contains("disable")) {
        if (!payload.at("disable").is_array()) throw RuleViolation("disable must be [element, ...]");
        for (const auto &item : payload.at("disable")) {
            std::uint64_t s = 0;
            if (!json_uint(item, s)) throw RuleViolation("disable entries must be elements");
            if (s >= st.a.size()) throw RuleViolation("element out of range");
            disables.push_back(s);
        }
    }
    if (raises.empty() && disables.empty())
        throw RuleViolation("bob move must raise or disable something");
    if (st.b_total + sum > Rat(1)) throw RuleViolation("bob total weight would exceed 1");
    {
        // never-empty rule, checked against the whole batch
        std::map<std::uint64_t, std::uint64_t> fresh_per_set;
        std::set<std::uint64_t> seen;
        for (auto s : disables) {
            if (st.disabled[s] || !seen.insert(s).second) continue;
            ++fresh_per_set[st.set_of[s]];
        }
        for (const auto &[j, fresh] : fresh_per_set) {
            if (st.enabled[j] < fresh + 1)
                throw RuleViolation("set " + std::to_string(j) +
                                    " would have no enabled element left");
        }
    }
    for (auto &[j, inc] : raises) {
        if (inc.is_zero()) continue;
        if (st.b[j].is_zero()) ++st.b_positive;
        st.b[j] += inc;
        touched.insert(j);
    }
    st.b_total += sum;
    for (auto s : disables) {
        if (st.disabled[s]) continue;
        st.disabled[s] = true;
        ++st.disabled_count;
        const std::uint64_t j = st.set_of[s];
        --st.enabled[j];
        if (st.a[s] == st.max_enabled_a[j]) rescan_max(st, j);
        touched.insert(j);
    }
    for (auto j : touched) refresh_winning(st, j);
}

Verdict MillerSchema::adjudicate(const GameState &state) const {
    const auto &st = dynamic_cast<const MillerState &>(state);
    Verdict verdict;
    json ledger = json::array();
    for (const auto &row : set_ledger(st, params_)) {
        const char *outcome = row.won ? "won"
                              : row.paid ? "paid"
                              : row.alice_spend.sign() > 0 ? "open"
                                                           : "untouched";
        ledger.push_back(json{{"set", row.set_index},
                              {"alice_spend", row.alice_spend.to_string()},
                              {"bob_spend", row.bob_spend.to_string()},
                              {"paid", row.paid},
                              {"won", row.won},
                              {"outcome_of_set", outcome}});
    }
    if (auto witness = find_witness(st, params_)) {
        const std::uint64_t j = st.set_of[*witness];
        verdict.winner = Player::Alice;
        verdict.certificate =
            json{{"element", *witness},
                 {"set", j},
                 {"a", st.a[*witness].to_string()},
                 {"b_element", (st.b[j] / Rat(static_cast<long long>(params_.sizes[j]))).to_string()},
                 {"ledger", ledger}};
    } else {
        verdict.winner = Player::Bob;
        verdict.certificate = json{{"ledger", ledger}};
    }
    return verdict;
}

std::vector<std::uint64_t> MillerSchema::growth_counters(const GameState &state) const {
    const auto &st = dynamic_cast<const MillerState &>(state);
    return {st.a_positive, st.b_positive, st.disabled_count};
}

std::vector<std::pair<std::string, std::string>>
MillerSchema::metrics(const GameState &state) const {
    const auto &st = dynamic_cast<const MillerState &>(state);
    std::uint64_t paid_sets = 0;
    std::optional<Rat> min_ratio; // bob_spend / alice_spend over paid sets
    for (const auto &row : set_ledger(st, params_)) {
        if (!row.paid) continue;
        ++paid_sets;
        Rat ratio = row.bob_spend / row.alice_spend;
        if (!min_ratio || ratio < *min_ratio) min_ratio = std::move(ratio);
    }
    return {{"paid_sets", std::to_string(paid_sets)},
            {"alice_total", st.a_total.to_string()},
            {"bob_total", st.b_total.to_string()},
            {"min_paid_ratio", min_ratio ? min_ratio->to_string() : "-"},
            {"disabled", std::to_string(st.disabled_count)}};
}

// ---- strategies ---------------------------------------------------------------

namespace {

class PassStrategy : public Strategy {
public:
    const std::string &name() const override { return name_; }
    json propose(const GameState &, const MatchTrace &) override { return json{}; }

private:
    std::string name_ = "pass";
};

// Per-set escalation: weight alpha * 2^t / 2^M on the t-th group, spread
// uniformly over the group, doubling while Bob disables whole groups and
// leaving the set once Bob's fair level covers the current group weight.
// Passes exactly when the referee condition already holds somewhere.
class DoublingAlice : public Strategy {
public:
    explicit DoublingAlice(const MillerParams &params) : params_(params) {
        if (!winnability(params_))
            throw ConfigError("alice", "doubling strategy requires winnable parameters");
        for (std::uint64_t j = 0; j < params_.num_sets(); ++j) {
            const std::uint64_t m = group_count_for(params_.sizes[j], params_.ratio_target);
            group_counts_.push_back(m);
            groups_.push_back(build_groups(params_.sizes[j], m));
        }
    }
    const std::string &name() const override { return name_; }

    json propose(const GameState &state, const MatchTrace &) override {
        const auto &st = dynamic_cast<const MillerState &>(state);
        if (st.winning_count > 0) return json{};
        while (true) {
            if (set_ >= params_.num_sets()) return json{};
            if (assigned_) {
                if (bob_paid(st)) {
                    alpha_ -= set_spent_;
                    set_spent_ = Rat();
                    assigned_ = false;
                    group_ = 0;
                    ++set_;
                    continue;
                }
                if (group_fully_disabled(st)) {
                    assigned_ = false;
                    ++group_;
                    continue;
                }
                return json{}; // wait on Bob's dilemma
            }
            if (group_ >= groups_[set_].size()) return json{};
            if (group_fully_disabled(st)) {
                ++group_;
                continue;
            }
            return assign(st);
        }
    }

private:
    bool bob_paid(const MillerState &st) const {
        if (st.b[set_].is_zero()) return false;
        return st.b[set_] * Rat(static_cast<long long>(params_.ratio_target)) >=
               per_element_ * Rat(static_cast<long long>(params_.sizes[set_]));
    }

    bool group_fully_disabled(const MillerState &st) const {
        for (auto rel : groups_[set_][group_])
            if (!st.disabled[st.offset[set_] + rel]) return false;
        return true;
    }

    json assign(const MillerState &st) {
        const auto &members = groups_[set_][group_];
        const std::uint64_t m = group_counts_[set_];
        // w = alpha * 2^group / 2^m, spread uniformly over the group
        Rat weight = alpha_ * Rat(BigInt::pow2(static_cast<unsigned>(group_)),
                                  BigInt::pow2(static_cast<unsigned>(m)));
        per_element_ = weight / Rat(static_cast<long long>(members.size()));
        json add = json::array();
        for (auto rel : members)
            add.push_back(json::array({st.offset[set_] + rel, per_element_.to_string()}));
        set_spent_ += weight;
        assigned_ = true;
        return json{{"add", add}};
    }

    std::string name_ = "doubling";
    MillerParams params_;
    std::vector<std::uint64_t> group_counts_;
    std::vector<std::vector<std::vector<std::uint64_t>>> groups_;
    std::uint64_t set_ = 0;
    std::uint64_t group_ = 0;
    bool assigned_ = false;
    Rat alpha_ = Rat(1);
    Rat set_spent_;
    Rat per_element_;
};

// The cheaper legal response to a threat in set j: disabling the
// threatened elements costs no budget and is preferred whenever the set
// keeps an enabled element; otherwise the fair weight rises to just above
// Alice's level. Nothing affordable means conceding the set.
struct DefensePlan {
    std::vector<std::uint64_t> disable;
    std::optional<Rat> raise_by;
};

std::optional<DefensePlan> plan_defense(const MillerState &st, const MillerParams &params,
                                        std::uint64_t j, const Rat &budget_left,
                                        bool prefer_pay = false) {
    std::vector<std::uint64_t> threatened;
    for (std::uint64_t s = st.offset[j]; s < st.offset[j] + params.sizes[j]; ++s)
        if (element_wins(st, params, s)) threatened.push_back(s);
    if (threatened.empty()) return std::nullopt;
    DefensePlan plan;
    const bool can_disable = st.enabled[j] > threatened.size();
    const Rat target = (st.max_enabled_a[j] * Rat(static_cast<long long>(params.sizes[j])) /
                        Rat(static_cast<long long>(params.ratio_target)))
                           .dyadic_above(4);
    const Rat inc = target - st.b[j];
    const bool can_pay = inc.sign() > 0 && inc <= budget_left;
    if ((prefer_pay && can_pay) || (!can_disable && can_pay)) {
        plan.raise_by = inc;
        return plan;
    }
    if (can_disable) {
        plan.disable = std::move(threatened);
        return plan;
    }
    return std::nullopt;
}

class DefensiveBob : public Strategy {
public:
    explicit DefensiveBob(const MillerParams &params) : params_(params) {}
    const std::string &name() const override { return name_; }

    json propose(const GameState &state, const MatchTrace &) override {
        const auto &st = dynamic_cast<const MillerState &>(state);
        if (st.winning_count == 0) return json{};
        json raise = json::array();
        json disable = json::array();
        Rat budget_left = Rat(1) - st.b_total;
        for (std::uint64_t j = 0; j < params_.num_sets(); ++j) {
            if (!st.winning[j]) continue;
            auto plan = plan_defense(st, params_, j, budget_left);
            if (!plan) continue;
            for (auto s : plan->disable) disable.push_back(s);
            if (plan->raise_by) {
                budget_left -= *plan->raise_by;
                raise.push_back(json::array({j, plan->raise_by->to_string()}));
            }
        }
        if (raise.empty() && disable.empty()) return json{};
        json payload = json::object();
        if (!raise.empty()) payload["raise"] = raise;
        if (!disable.empty()) payload["disable"] = disable;
        return payload;
    }

private:
    std::string name_ = "defensive";
    MillerParams params_;
};

// Finitely many random legal moves (dyadic raises, partial disables), then
// passes forever so matches reach quiescence.
class RandomBob : public Strategy {
public:
    RandomBob(const MillerParams &params, std::uint64_t seed)
        : params_(params), rng_(seed), moves_left_(16 + rng_.below(33)) {}
    const std::string &name() const override { return name_; }

    json propose(const GameState &state, const MatchTrace &) override {
        if (moves_left_ == 0) return json{};
        --moves_left_;
        const auto &st = dynamic_cast<const MillerState &>(state);
        const std::uint64_t n = params_.num_sets();
        json raise = json::array();
        json disable = json::array();
        Rat budget_left = Rat(1) - st.b_total;
        std::map<std::uint64_t, std::uint64_t> planned_disables;
        std::set<std::uint64_t> chosen;
        // half the time, contest the lowest threatened set like a defender
        if (st.winning_count > 0 && rng_.chance_percent(50)) {
            const bool prefer_pay = rng_.chance_percent(50);
            for (std::uint64_t j = 0; j < n; ++j) {
                if (!st.winning[j]) continue;
                auto plan = plan_defense(st, params_, j, budget_left, prefer_pay);
                if (!plan) break;
                json payload = json::object();
                if (!plan->disable.empty()) {
                    for (auto s : plan->disable) disable.push_back(s);
                    payload["disable"] = disable;
                }
                if (plan->raise_by)
                    payload["raise"] =
                        json::array({json::array({j, plan->raise_by->to_string()})});
                return payload;
            }
        }
        const int ops = 1 + static_cast<int>(rng_.below(3));
        for (int op = 0; op < ops; ++op) {
            if (rng_.chance_percent(55)) {
                const std::uint64_t j = rng_.below(n);
                Rat amount(BigInt(1 + rng_.below(15)), BigInt::pow2(4 + static_cast<unsigned>(rng_.below(9))));
                if (amount > budget_left) amount = budget_left;
                if (amount.sign() <= 0) continue;
                budget_left -= amount;
                raise.push_back(json::array({j, amount.to_string()}));
            } else {
                const std::uint64_t j = rng_.below(n);
                std::vector<std::uint64_t> candidates;
                for (std::uint64_t s = st.offset[j]; s < st.offset[j] + params_.sizes[j]; ++s)
                    if (!st.disabled[s] && !chosen.count(s)) candidates.push_back(s);
                const std::uint64_t slack = st.enabled[j] - planned_disables[j];
                if (slack < 2 || candidates.empty()) continue;
                std::uint64_t count = 1 + rng_.below(slack - 1);
                count = std::min<std::uint64_t>(count, candidates.size());
                for (std::uint64_t c = 0; c < count; ++c) {
                    const std::uint64_t pick = rng_.below(candidates.size());
                    const std::uint64_t s = candidates[pick];
                    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
                    chosen.insert(s);
                    ++planned_disables[j];
                    disable.push_back(s);
                }
            }
        }
        if (raise.empty() && disable.empty()) return json{};
        json payload = json::object();
        if (!raise.empty()) payload["raise"] = raise;
        if (!disable.empty()) payload["disable"] = disable;
        return payload;
    }

private:
    std::string name_ = "random";
    MillerParams params_;
    SplitMix64 rng_;
    std::uint64_t moves_left_;
};

} // namespace

std::unique_ptr<Strategy> make_strategy(const MillerSchema &schema, Player role,
                                        const std::string &name, const json &,
                                        std::uint64_t seed) {
    const std::uint64_t stream = SplitMix64::derive(seed, role == Player::Alice ? 1 : 2);
    if (name == "pass") return std::make_unique<PassStrategy>();
    if (name == "doubling") return std::make_unique<DoublingAlice>(schema.params());
    if (name == "defensive") return std::make_unique<DefensiveBob>(schema.params());
    if (name == "random") return std::make_unique<RandomBob>(schema.params(), stream);
    throw ConfigError("strategy", "unknown miller strategy " + name);
}

} // namespace kcg::miller
