#include "kcgames/complexity.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace kcg::complexity {

namespace {

bool is_bitstring(const std::string &s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

void require_bitstring(const std::string &s, const char *what) {
    if (!is_bitstring(s)) throw RuleViolation(std::string(what) + " is not a binary string");
}

std::uint64_t bits_of(std::uint64_t n) {
    return n == 0 ? 0 : static_cast<std::uint64_t>(64 - std::countl_zero(n));
}

} // namespace

// ---- graph and profiles -------------------------------------------------

void DecompressorGraph::add_pair(const std::string &program, const std::string &output) {
    require_bitstring(program, "program");
    require_bitstring(output, "output");
    auto [it, inserted] = pairs_.emplace(program, output);
    if (!inserted && it->second != output)
        throw RuleViolation("program '" + program + "' already maps to a different output");
}

Value ComplexityProfile::get(const std::string &x) const {
    auto it = finite_.find(x);
    if (it == finite_.end()) return std::nullopt;
    return it->second;
}

json ComplexityProfile::to_json(const std::vector<std::string> &domain) const {
    json out = json::object();
    for (const auto &x : domain) {
        Value v = get(x);
        if (v) out[x] = *v;
        else out[x] = nullptr;
    }
    return out;
}

Value complexity_of(const DecompressorGraph &graph, const std::string &x) {
    Value best;
    for (const auto &[program, output] : graph.pairs()) {
        if (output != x) continue;
        const std::uint64_t len = program.size();
        if (!best || len < *best) best = len;
    }
    return best;
}

ComplexityProfile profile_of(const DecompressorGraph &graph,
                             const std::vector<std::string> &domain) {
    ComplexityProfile profile;
    for (const auto &x : domain) {
        if (Value v = complexity_of(graph, x)) profile.set(x, *v);
    }
    return profile;
}

ComplexityProfile combined_complexity(const ComplexityProfile &ka, const ComplexityProfile &kb) {
    ComplexityProfile out = ka;
    for (const auto &[x, v] : kb.finite()) {
        Value cur = out.get(x);
        if (!cur || v < *cur) out.set(x, v);
    }
    return out;
}

// ---- alpha --------------------------------------------------------------

namespace {

const char *infinite_rule_name(InfiniteRule r) {
    switch (r) {
    case InfiniteRule::FalseOnInfinite: return "false";
    case InfiniteRule::TrueOnInfinite: return "true";
    default: return "reject";
    }
}

InfiniteRule infinite_rule_from(const std::string &s) {
    if (s == "false") return InfiniteRule::FalseOnInfinite;
    if (s == "true") return InfiniteRule::TrueOnInfinite;
    if (s == "reject") return InfiniteRule::Reject;
    throw ConfigError("infinite_rule", "unknown rule " + s);
}

} // namespace

bool PropertyAlpha::evaluate(const ComplexityProfile &profile) const {
    for (const auto &x : domain) {
        if (!profile.get(x)) {
            switch (infinite_rule) {
            case InfiniteRule::FalseOnInfinite: return false;
            case InfiniteRule::TrueOnInfinite: return true;
            case InfiniteRule::Reject:
                throw DomainMismatchError("profile infinite at '" + x +
                                          "' and alpha declares no infinite rule");
            }
        }
    }
    if (name == "true" || name == "all_finite") return true;
    if (name == "false") return false;
    if (name == "even_at") {
        return *profile.get(params.at("x").get<std::string>()) % 2 == 0;
    }
    if (name == "value_le_at") {
        return *profile.get(params.at("x").get<std::string>()) <=
               params.at("bound").get<std::uint64_t>();
    }
    if (name == "above_half_len") {
        const long long c = params.at("c").get<long long>();
        for (const auto &x : domain) {
            const long long v = static_cast<long long>(*profile.get(x));
            if (2 * v <= static_cast<long long>(x.size()) + 2 * c) return false;
        }
        return true;
    }
    throw ConfigError("alpha", "unknown property " + name);
}

json PropertyAlpha::to_json() const {
    return json{{"name", name},
                {"domain", domain},
                {"params", params},
                {"infinite_rule", infinite_rule_name(infinite_rule)}};
}

PropertyAlpha PropertyAlpha::from_json(const json &spec) {
    PropertyAlpha alpha;
    if (!spec.is_object()) throw ConfigError("alpha", "must be an object");
    alpha.name = spec.value("name", std::string{});
    static const std::vector<std::string> known{"true",    "false",       "all_finite",
                                                "even_at", "value_le_at", "above_half_len"};
    if (std::find(known.begin(), known.end(), alpha.name) == known.end())
        throw ConfigError("alpha", "unknown property " + alpha.name);
    if (auto it = spec.find("domain"); it != spec.end()) {
        for (const auto &x : *it) {
            std::string s = x.get<std::string>();
            if (!is_bitstring(s)) throw ConfigError("alpha.domain", "'" + s + "' is not binary");
            alpha.domain.push_back(std::move(s));
        }
    }
    if (auto it = spec.find("params"); it != spec.end()) alpha.params = *it;
    if (alpha.name == "even_at" || alpha.name == "value_le_at") {
        if (!alpha.params.contains("x")) throw ConfigError("alpha.params", "missing x");
        const std::string x = alpha.params.at("x").get<std::string>();
        if (std::find(alpha.domain.begin(), alpha.domain.end(), x) == alpha.domain.end())
            throw ConfigError("alpha.params", "x must lie in the declared domain");
    }
    if (alpha.name == "value_le_at" && !alpha.params.contains("bound"))
        throw ConfigError("alpha.params", "missing bound");
    if (alpha.name == "above_half_len" && !alpha.params.contains("c"))
        throw ConfigError("alpha.params", "missing c");
    alpha.infinite_rule = infinite_rule_from(spec.value("infinite_rule", std::string("false")));
    return alpha;
}

namespace {

ComplexityProfile shifted_profile(const ComplexityProfile &p, long long delta) {
    ComplexityProfile out;
    for (const auto &[x, v] : p.finite()) {
        const long long shifted = static_cast<long long>(v) + delta;
        out.set(x, shifted < 0 ? 0 : static_cast<std::uint64_t>(shifted));
    }
    return out;
}

// Pointwise distance on the alpha domain; nullopt when unbounded (one side
// infinite, the other not).
std::optional<std::uint64_t> profile_distance(const ComplexityProfile &a,
                                              const ComplexityProfile &b,
                                              const std::vector<std::string> &domain) {
    std::uint64_t dist = 0;
    for (const auto &x : domain) {
        Value va = a.get(x), vb = b.get(x);
        if (!va && !vb) continue;
        if (!va || !vb) return std::nullopt;
        dist = std::max(dist, *va > *vb ? *va - *vb : *vb - *va);
    }
    return dist;
}

} // namespace

StabilityReport check_o1_stable(const PropertyAlpha &alpha,
                                const std::vector<ComplexityProfile> &profiles,
                                std::uint64_t shift_bound) {
    StabilityReport report;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const bool base = alpha.evaluate(profiles[i]);
        for (std::uint64_t d = 1; d <= shift_bound; ++d) {
            for (long long sign : {1ll, -1ll}) {
                ComplexityProfile shifted =
                    shifted_profile(profiles[i], sign * static_cast<long long>(d));
                if (alpha.evaluate(shifted) != base) {
                    report.stable = false;
                    report.counterexample =
                        json{{"kind", "shift"},
                             {"profile", profiles[i].to_json(alpha.domain)},
                             {"shift", sign * static_cast<long long>(d)},
                             {"alpha_base", base},
                             {"alpha_shifted", !base}};
                    return report;
                }
            }
        }
        for (std::size_t j = i + 1; j < profiles.size(); ++j) {
            auto dist = profile_distance(profiles[i], profiles[j], alpha.domain);
            if (!dist || *dist > shift_bound) continue;
            const bool bj = alpha.evaluate(profiles[j]);
            if (bj != base) {
                report.stable = false;
                report.counterexample = json{{"kind", "pair"},
                                             {"first", profiles[i].to_json(alpha.domain)},
                                             {"second", profiles[j].to_json(alpha.domain)},
                                             {"distance", *dist},
                                             {"alpha_first", base},
                                             {"alpha_second", bj}};
                return report;
            }
        }
    }
    return report;
}

// ---- two-profile referee --------------------------------------------------

bool TwoProfilePredicate::evaluate(const ComplexityProfile &ka,
                                   const ComplexityProfile &kb) const {
    if (name == "always_true") return true;
    if (name == "pointwise_le") {
        for (const auto &x : domain) {
            Value a = ka.get(x), b = kb.get(x);
            if (!a && b) return false;
            if (a && b && *a > *b) return false;
        }
        return true;
    }
    if (name == "kb_even_at") {
        Value v = kb.get(params.at("x").get<std::string>());
        return v && *v % 2 == 0;
    }
    if (name == "chain_rule") {
        const std::uint64_t c = params.at("c").get<std::uint64_t>();
        const std::uint64_t kmax = params.at("kmax").get<std::uint64_t>();
        const std::uint64_t lmax = params.at("lmax").get<std::uint64_t>();
        for (const auto &entry : params.at("entries")) {
            const Value pair_v = kb.get(entry.at("pair").get<std::string>());
            if (!pair_v) continue; // infinite: antecedent never fires
            const Value x_v = ka.get(entry.at("x").get<std::string>());
            const Value cond_v = ka.get(entry.at("cond").get<std::string>());
            const std::uint64_t logn = bits_of(entry.at("n").get<std::uint64_t>());
            for (std::uint64_t k = 0; k <= kmax; ++k) {
                for (std::uint64_t l = 0; l <= lmax; ++l) {
                    if (*pair_v >= k + l) continue;
                    const bool left = x_v && *x_v < k + c * logn;
                    const bool right = cond_v && *cond_v < l + c * logn;
                    if (!left && !right) return false;
                }
            }
        }
        return true;
    }
    throw ConfigError("alpha2", "unknown predicate " + name);
}

json TwoProfilePredicate::to_json() const {
    return json{{"name", name}, {"domain", domain}, {"params", params}};
}

TwoProfilePredicate TwoProfilePredicate::from_json(const json &spec) {
    TwoProfilePredicate pred;
    if (!spec.is_object()) throw ConfigError("alpha2", "must be an object");
    pred.name = spec.value("name", std::string{});
    static const std::vector<std::string> known{"always_true", "pointwise_le", "chain_rule",
                                                "kb_even_at"};
    if (std::find(known.begin(), known.end(), pred.name) == known.end())
        throw ConfigError("alpha2", "unknown predicate " + pred.name);
    if (auto it = spec.find("domain"); it != spec.end())
        for (const auto &x : *it) pred.domain.push_back(x.get<std::string>());
    if (auto it = spec.find("params"); it != spec.end()) pred.params = *it;
    if (pred.name == "chain_rule") {
        for (const char *key : {"c", "kmax", "lmax", "entries"})
            if (!pred.params.contains(key))
                throw ConfigError("alpha2.params", std::string("missing ") + key);
    }
    if (pred.name == "kb_even_at" && !pred.params.contains("x"))
        throw ConfigError("alpha2.params", "missing x");
    return pred;
}

namespace {

ComplexityProfile nudged(const ComplexityProfile &p, SplitMix64 &rng, bool down) {
    ComplexityProfile out;
    for (const auto &[x, v] : p.finite()) {
        const std::uint64_t d = rng.below(3);
        if (down) out.set(x, v >= d ? v - d : 0);
        else out.set(x, v + d);
    }
    return out;
}

} // namespace

Player monotone_referee(const TwoProfilePredicate &alpha2, const ComplexityProfile &ka,
                        const ComplexityProfile &kb) {
    const bool holds = alpha2.evaluate(ka, kb);
    if (holds) {
        // Declared monotone: lowering ka or raising kb must keep it true.
        SplitMix64 rng(0xa1fa2);
        for (int sample = 0; sample < 8; ++sample) {
            ComplexityProfile ka2 = nudged(ka, rng, true);
            ComplexityProfile kb2 = nudged(kb, rng, false);
            if (!alpha2.evaluate(ka2, kb2))
                throw MonotonicityViolationError(
                    "predicate '" + alpha2.name +
                    "' flipped true->false under a favorable perturbation");
        }
        for (std::uint64_t d : {1ull, 2ull}) {
            ComplexityProfile ka2, kb2;
            for (const auto &[x, v] : ka.finite()) ka2.set(x, v >= d ? v - d : 0);
            for (const auto &[x, v] : kb.finite()) kb2.set(x, v + d);
            if (!alpha2.evaluate(ka2, kb2))
                throw MonotonicityViolationError("predicate '" + alpha2.name +
                                                 "' flipped true->false under a uniform shift");
        }
    }
    return holds ? Player::Alice : Player::Bob;
}

// ---- levin profiles -------------------------------------------------------

Value LevinProfile::get(const std::string &x) const {
    auto it = values_.find(x);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

LevinProfile::CheckResult
LevinProfile::check(const std::vector<std::pair<std::string, std::uint64_t>> &proposed) const {
    CheckResult res;
    std::map<std::string, std::uint64_t> next = values_;
    for (const auto &[x, v] : proposed) {
        if (!is_bitstring(x)) {
            res.accepted = false;
            res.reason = "'" + x + "' is not a binary string";
            return res;
        }
        auto it = next.find(x);
        if (it != next.end() && v >= it->second) {
            res.accepted = false;
            res.reason = "value at '" + x + "' must strictly decrease";
            return res;
        }
        next[x] = v;
    }
    std::vector<std::uint64_t> vals;
    vals.reserve(next.size());
    for (const auto &[x, v] : next) vals.push_back(v);
    std::sort(vals.begin(), vals.end());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const std::uint64_t v = vals[i];
        const std::uint64_t count = i + 1; // = #{values <= v} at the last occurrence of v
        if (v < 63 && count > (1ull << v)) {
            res.accepted = false;
            res.violated_n = v + 1;
            res.reason = "counting constraint: " + std::to_string(count) +
                         " strings below " + std::to_string(v + 1) + " exceeds 2^" +
                         std::to_string(v);
            return res;
        }
    }
    return res;
}

void LevinProfile::apply(const std::vector<std::pair<std::string, std::uint64_t>> &proposed) {
    CheckResult res = check(proposed);
    if (!res.accepted) throw RuleViolation(res.reason);
    for (const auto &[x, v] : proposed) values_[x] = v;
}

LevinProfile::CheckResult
levin_move_check(const LevinProfile &profile,
                 const std::vector<std::pair<std::string, std::uint64_t>> &proposed) {
    return profile.check(proposed);
}

// ---- schema ---------------------------------------------------------------

json ComplexityParams::to_json() const {
    json out{{"mode", mode == MoveMode::Graph ? "graph" : "levin"}};
    if (two_profile) out["alpha2"] = alpha2.to_json();
    else out["alpha"] = alpha.to_json();
    return out;
}

ComplexityParams ComplexityParams::from_json(const json &params) {
    ComplexityParams out;
    const std::string mode = params.value("mode", std::string("graph"));
    if (mode == "graph") out.mode = MoveMode::Graph;
    else if (mode == "levin") out.mode = MoveMode::Levin;
    else throw ConfigError("mode", "must be graph or levin");
    if (params.contains("alpha2")) {
        out.two_profile = true;
        out.alpha2 = TwoProfilePredicate::from_json(params.at("alpha2"));
        if (out.mode == MoveMode::Levin)
            throw ConfigError("alpha2", "two-profile referee applies to graph mode only");
    } else {
        json spec = params.value("alpha", json{{"name", "all_finite"}, {"domain", {"0", "1"}}});
        out.alpha = PropertyAlpha::from_json(spec);
    }
    return out;
}

ComplexitySchema::ComplexitySchema(ComplexityParams params) : params_(std::move(params)) {}

std::unique_ptr<GameState> ComplexitySchema::initial_state() const {
    return std::make_unique<ComplexityState>();
}

namespace {

std::vector<std::pair<std::string, std::string>> parse_pairs(const json &payload) {
    if (!payload.is_object() || !payload.contains("pairs") || !payload.at("pairs").is_array())
        throw RuleViolation("graph move payload must be {\"pairs\": [[program, output], ...]}");
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto &item : payload.at("pairs")) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_string() || !item[1].is_string())
            throw RuleViolation("each pair must be [program, output]");
        out.emplace_back(item[0].get<std::string>(), item[1].get<std::string>());
    }
    return out;
}

std::vector<std::pair<std::string, std::uint64_t>> parse_bounds(const json &payload) {
    if (!payload.is_object() || !payload.contains("bounds") || !payload.at("bounds").is_array())
        throw RuleViolation("levin move payload must be {\"bounds\": [[string, value], ...]}");
    std::vector<std::pair<std::string, std::uint64_t>> out;
    for (const auto &item : payload.at("bounds")) {
        std::uint64_t value = 0;
        if (!item.is_array() || item.size() != 2 || !item[0].is_string() ||
            !json_uint(item[1], value))
            throw RuleViolation("each bound must be [string, nonnegative value]");
        out.emplace_back(item[0].get<std::string>(), value);
    }
    return out;
}

} // namespace

void ComplexitySchema::apply_move(GameState &state, Player mover, const json &payload) const {
    auto &st = dynamic_cast<ComplexityState &>(state);
    const int side = mover == Player::Alice ? 0 : 1;
    if (params_.mode == MoveMode::Graph) {
        const auto pairs = parse_pairs(payload);
        DecompressorGraph tentative = st.graph[side];
        for (const auto &[program, output] : pairs) tentative.add_pair(program, output);
        st.graph[side] = std::move(tentative);
    } else {
        st.levin[side].apply(parse_bounds(payload));
    }
}

Verdict ComplexitySchema::adjudicate(const GameState &state) const {
    const auto &st = dynamic_cast<const ComplexityState &>(state);
    Verdict verdict;
    if (params_.two_profile) {
        const auto ka = profile_of(st.graph[0], params_.alpha2.domain);
        const auto kb = profile_of(st.graph[1], params_.alpha2.domain);
        verdict.winner = monotone_referee(params_.alpha2, ka, kb);
        verdict.certificate = json{{"alpha2", params_.alpha2.name},
                                   {"holds", verdict.winner == Player::Alice},
                                   {"ka", ka.to_json(params_.alpha2.domain)},
                                   {"kb", kb.to_json(params_.alpha2.domain)}};
        return verdict;
    }
    ComplexityProfile kmin;
    if (params_.mode == MoveMode::Graph) {
        kmin = combined_complexity(profile_of(st.graph[0], params_.alpha.domain),
                                   profile_of(st.graph[1], params_.alpha.domain));
    } else {
        for (const auto &x : params_.alpha.domain) {
            Value a = st.levin[0].get(x), b = st.levin[1].get(x);
            Value m = !a ? b : (!b ? a : std::min(*a, *b));
            if (m) kmin.set(x, *m);
        }
    }
    const bool holds = params_.alpha.evaluate(kmin);
    verdict.winner = holds ? Player::Alice : Player::Bob;
    verdict.certificate = json{{"alpha", params_.alpha.name},
                               {"holds", holds},
                               {"profile", kmin.to_json(params_.alpha.domain)}};
    return verdict;
}

std::vector<std::uint64_t> ComplexitySchema::growth_counters(const GameState &state) const {
    const auto &st = dynamic_cast<const ComplexityState &>(state);
    return {st.graph[0].size(), st.graph[1].size(),
            st.levin[0].assigned().size(), st.levin[1].assigned().size()};
}

std::vector<std::pair<std::string, std::string>>
ComplexitySchema::metrics(const GameState &state) const {
    const auto &st = dynamic_cast<const ComplexityState &>(state);
    return {{"alice_pairs", std::to_string(st.graph[0].size())},
            {"bob_pairs", std::to_string(st.graph[1].size())}};
}

// ---- tables and strategies --------------------------------------------------

std::vector<std::string> shortlex_strings(unsigned max_len) {
    std::vector<std::string> out{""};
    for (unsigned len = 1; len <= max_len; ++len) {
        for (std::uint64_t v = 0; v < (1ull << len); ++v) {
            std::string s(len, '0');
            for (unsigned b = 0; b < len; ++b)
                if (v & (1ull << (len - 1 - b))) s[b] = '1';
            out.push_back(std::move(s));
        }
    }
    return out;
}

DecompressorGraph identity_table(unsigned max_len) {
    DecompressorGraph table;
    for (const auto &x : shortlex_strings(max_len)) table.add_pair(x, x);
    return table;
}

namespace {

std::string random_bitstring(SplitMix64 &rng, unsigned max_len) {
    const unsigned len = static_cast<unsigned>(rng.below(max_len + 1));
    std::string s(len, '0');
    for (auto &c : s)
        if (rng.below(2)) c = '1';
    return s;
}

class PassStrategy : public Strategy {
public:
    const std::string &name() const override { return name_; }
    json propose(const GameState &, const MatchTrace &) override { return json{}; }

private:
    std::string name_ = "pass";
};

// Mirrors every opponent pair with the program prefixed by one bit, so all
// of this player's lengths run one above the opponent's.
class CopyPrefixStrategy : public Strategy {
public:
    explicit CopyPrefixStrategy(Player role) : role_(role) {}
    const std::string &name() const override { return name_; }

    json propose(const GameState &, const MatchTrace &so_far) override {
        json pairs = json::array();
        for (; cursor_ < so_far.moves.size(); ++cursor_) {
            const auto &move = so_far.moves[cursor_];
            if (move.player == role_ || move.payload.is_null()) continue;
            if (!move.payload.contains("pairs")) continue;
            for (const auto &item : move.payload.at("pairs"))
                pairs.push_back(json::array({"0" + item[0].get<std::string>(), item[1]}));
        }
        if (pairs.empty()) return json{};
        return json{{"pairs", pairs}};
    }

private:
    std::string name_ = "copy_prefix";
    Player role_;
    std::size_t cursor_ = 0;
};

class RandomAssignStrategy : public Strategy {
public:
    RandomAssignStrategy(Player role, std::uint64_t seed, unsigned max_program_len,
                         unsigned max_output_len, int active_rounds)
        : role_(role), rng_(seed), max_program_len_(max_program_len),
          max_output_len_(max_output_len), rounds_left_(active_rounds) {}
    const std::string &name() const override { return name_; }

    json propose(const GameState &state, const MatchTrace &) override {
        if (rounds_left_ <= 0) return json{};
        --rounds_left_;
        if (!rng_.chance_percent(85)) return json{};
        const auto &st = dynamic_cast<const ComplexityState &>(state);
        const auto &own = st.graph[role_ == Player::Alice ? 0 : 1];
        json pairs = json::array();
        std::map<std::string, std::string> batch;
        const int want = 1 + static_cast<int>(rng_.below(3));
        for (int i = 0; i < want; ++i) {
            std::string program = random_bitstring(rng_, max_program_len_);
            std::string output = random_bitstring(rng_, max_output_len_);
            auto it = own.pairs().find(program);
            if (it != own.pairs().end() && it->second != output) continue;
            auto batched = batch.find(program);
            if (batched != batch.end() && batched->second != output) continue;
            batch.emplace(program, output);
            pairs.push_back(json::array({program, output}));
        }
        if (pairs.empty()) return json{};
        return json{{"pairs", pairs}};
    }

private:
    std::string name_ = "random_assign";
    Player role_;
    SplitMix64 rng_;
    unsigned max_program_len_;
    unsigned max_output_len_;
    int rounds_left_;
};

// Enumerates a fixed table in shortlex order of programs, a chunk per move,
// ignoring the opponent entirely.
class TableEnumStrategy : public Strategy {
public:
    TableEnumStrategy(const DecompressorGraph &table, std::size_t chunk) : chunk_(chunk) {
        for (const auto &[program, output] : table.pairs()) entries_.emplace_back(program, output);
        std::sort(entries_.begin(), entries_.end(), [](const auto &a, const auto &b) {
            if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
            return a.first < b.first;
        });
    }
    const std::string &name() const override { return name_; }

    json propose(const GameState &, const MatchTrace &) override {
        if (next_ >= entries_.size()) return json{};
        json pairs = json::array();
        for (std::size_t i = 0; i < chunk_ && next_ < entries_.size(); ++i, ++next_)
            pairs.push_back(json::array({entries_[next_].first, entries_[next_].second}));
        return json{{"pairs", pairs}};
    }

private:
    std::string name_ = "table_enum";
    std::vector<std::pair<std::string, std::string>> entries_;
    std::size_t chunk_;
    std::size_t next_ = 0;
};

class LevinRandomStrategy : public Strategy {
public:
    LevinRandomStrategy(Player role, std::uint64_t seed, int active_rounds)
        : role_(role), rng_(seed), rounds_left_(active_rounds), pool_(shortlex_strings(6)) {}
    const std::string &name() const override { return name_; }

    json propose(const GameState &state, const MatchTrace &) override {
        if (rounds_left_ <= 0) return json{};
        --rounds_left_;
        const auto &st = dynamic_cast<const ComplexityState &>(state);
        const auto &own = st.levin[role_ == Player::Alice ? 0 : 1];
        std::vector<std::pair<std::string, std::uint64_t>> batch;
        for (int attempt = 0; attempt < 8 && batch.size() < 2; ++attempt) {
            const std::string &x = pool_[rng_.below(pool_.size())];
            Value cur = own.get(x);
            std::uint64_t v;
            if (!cur) v = 2 + rng_.below(14);
            else if (*cur > 0) v = rng_.below(*cur);
            else continue;
            batch.emplace_back(x, v);
            if (!own.check(batch).accepted) batch.pop_back();
        }
        if (batch.empty()) return json{};
        json bounds = json::array();
        for (const auto &[x, v] : batch) bounds.push_back(json::array({x, v}));
        return json{{"bounds", bounds}};
    }

private:
    std::string name_ = "levin_random";
    Player role_;
    SplitMix64 rng_;
    int rounds_left_;
    std::vector<std::string> pool_;
};

} // namespace

std::unique_ptr<Strategy> make_strategy(const ComplexitySchema &schema, Player role,
                                        const std::string &name, const json &extras,
                                        std::uint64_t seed) {
    const std::uint64_t stream =
        SplitMix64::derive(seed, role == Player::Alice ? 1 : 2);
    if (name == "pass") return std::make_unique<PassStrategy>();
    if (schema.params().mode == MoveMode::Levin) {
        if (name == "levin_random")
            return std::make_unique<LevinRandomStrategy>(role, stream,
                                                         extras.value("active_rounds", 32));
        throw ConfigError("strategy", "unknown levin-mode strategy " + name);
    }
    if (name == "copy_prefix") return std::make_unique<CopyPrefixStrategy>(role);
    if (name == "random_assign")
        return std::make_unique<RandomAssignStrategy>(role, stream,
                                                      extras.value("max_program_len", 9u),
                                                      extras.value("max_output_len", 8u),
                                                      extras.value("active_rounds", 48));
    if (name == "table_enum")
        return std::make_unique<TableEnumStrategy>(identity_table(extras.value("table_len", 8u)),
                                                   extras.value("chunk", 8u));
    throw ConfigError("strategy", "unknown complexity strategy " + name);
}

LemmaReport lemma_simulation(Strategy &alice, const DecompressorGraph &optimal_table,
                             const PropertyAlpha &alpha, const HorizonPolicy &horizon,
                             std::uint64_t seed) {
    ComplexityParams params;
    params.mode = MoveMode::Graph;
    params.alpha = alpha;
    ComplexitySchema schema(std::move(params));
    TableEnumStrategy bob(optimal_table, 8);

    MatchResult played = play_match(schema, alice, bob, horizon, seed);
    const auto &st = dynamic_cast<const ComplexityState &>(*played.final_state);

    std::vector<std::string> domain = alpha.domain;
    for (const auto &[program, output] : optimal_table.pairs())
        if (std::find(domain.begin(), domain.end(), output) == domain.end())
            domain.push_back(output);

    LemmaReport report;
    report.kb = profile_of(st.graph[1], domain);
    report.kmin = combined_complexity(profile_of(st.graph[0], domain), report.kb);
    for (const auto &x : domain) {
        Value kb = report.kb.get(x);
        Value kmin = report.kmin.get(x);
        if (kb && kmin) report.delta[x] = *kb - *kmin;
        else if (!kb && !kmin) report.delta[x] = 0;
        else report.delta[x] = std::nullopt; // kb infinite, kmin finite
    }
    report.alpha_verdict = alpha.evaluate(report.kmin);
    report.trace = std::move(played.trace);
    return report;
}

} // namespace kcg::complexity
