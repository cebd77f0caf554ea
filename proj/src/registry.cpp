#include "kcgames/registry.hpp"

#include <algorithm>
#include <set>

#include "kcgames/bijection.hpp"
#include "kcgames/complexity.hpp"
#include "kcgames/extraction.hpp"
#include "kcgames/miller.hpp"
#include "kcgames/total_function.hpp"

namespace kcg {

namespace {

const std::set<std::string> kGames{"complexity", "total_function", "extraction", "bijection",
                                   "miller"};

std::uint64_t parse_u64(const std::string &key, const std::string &value) {
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception &) {
        throw ConfigError(key, "expected a nonnegative integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string &key, const std::string &value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError(key, "expected true/false");
}

// Comma list of binary strings; the token "e" stands for the empty string.
std::vector<std::string> parse_domain(const std::string &value) {
    std::vector<std::string> out;
    std::string current;
    const auto flush = [&]() {
        out.push_back(current == "e" ? "" : current);
        current.clear();
    };
    for (char c : value) {
        if (c == ',') flush();
        else current.push_back(c);
    }
    if (!current.empty()) flush();
    return out;
}

struct DefaultPlayers {
    const char *alice;
    const char *bob;
};

DefaultPlayers default_players(const std::string &game) {
    if (game == "complexity") return {"random_assign", "table_enum"};
    if (game == "total_function") return {"builder", "enumerating"};
    if (game == "extraction") return {"marker", "random_edges"};
    if (game == "bijection") return {"pairwise", "random_roster"};
    return {"doubling", "defensive"}; // miller
}

} // namespace

std::shared_ptr<const GameSchema> make_schema(const std::string &game, const json &params) {
    if (game == "complexity")
        return std::make_shared<complexity::ComplexitySchema>(
            complexity::ComplexityParams::from_json(params));
    if (game == "total_function")
        return std::make_shared<total_function::TotalFunctionSchema>(
            total_function::TotalFunctionParams::from_json(params));
    if (game == "extraction")
        return std::make_shared<extraction::ExtractionSchema>(
            extraction::ExtractionParams::from_json(params));
    if (game == "bijection")
        return std::make_shared<bijection::BijectionSchema>(
            bijection::BijectionParams::from_json(params));
    if (game == "miller")
        return std::make_shared<miller::MillerSchema>(miller::MillerParams::from_json(params));
    throw ConfigError("game", "unknown game '" + game + "'");
}

std::unique_ptr<Strategy> make_strategy(const GameSchema &schema, Player role,
                                        const std::string &name, const json &extras,
                                        std::uint64_t seed) {
    if (auto *s = dynamic_cast<const complexity::ComplexitySchema *>(&schema))
        return complexity::make_strategy(*s, role, name, extras, seed);
    if (auto *s = dynamic_cast<const total_function::TotalFunctionSchema *>(&schema))
        return total_function::make_strategy(*s, role, name, extras, seed);
    if (auto *s = dynamic_cast<const extraction::ExtractionSchema *>(&schema))
        return extraction::make_strategy(*s, role, name, extras, seed);
    if (auto *s = dynamic_cast<const bijection::BijectionSchema *>(&schema))
        return bijection::make_strategy(*s, role, name, extras, seed);
    if (auto *s = dynamic_cast<const miller::MillerSchema *>(&schema))
        return miller::make_strategy(*s, role, name, extras, seed);
    throw ConfigError("game", "schema has no strategy factory");
}

RunSpec spec_from_config(const std::map<std::string, std::string> &config) {
    static const std::set<std::string> known{
        "game",        "seed",       "max_rounds", "quiescence",  "alice",
        "bob",         "strict",     "n",          "budget",      "left_size",
        "right_size",  "degree_cap", "threshold",  "domain_size", "moves",
        "ratio_target", "num_sets",  "set_size",   "sizes",       "mode",
        "alpha",       "alpha_domain", "alpha_x",  "alpha_bound", "alpha_c",
        "infinite_rule", "alpha2",   "chunk",      "table_len",   "active_rounds",
        "max_program_len", "max_output_len"};
    for (const auto &[key, value] : config)
        if (!known.count(key)) throw ConfigError(key, "unknown config key");

    const auto get = [&](const char *key) -> const std::string * {
        auto it = config.find(key);
        return it == config.end() ? nullptr : &it->second;
    };

    RunSpec spec;
    if (const auto *game = get("game")) spec.game = *game;
    if (!kGames.count(spec.game))
        throw ConfigError("game", "must be one of complexity, total_function, extraction, "
                                  "bijection, miller");
    if (const auto *v = get("seed")) spec.seed = parse_u64("seed", *v);
    if (const auto *v = get("max_rounds")) {
        spec.horizon.max_rounds = static_cast<int>(parse_u64("max_rounds", *v));
        if (spec.horizon.max_rounds <= 0) throw ConfigError("max_rounds", "must be positive");
    }
    if (const auto *v = get("quiescence")) spec.horizon.quiescence = parse_bool("quiescence", *v);
    if (const auto *v = get("strict")) spec.strict = parse_bool("strict", *v);

    const DefaultPlayers defaults = default_players(spec.game);
    spec.alice = get("alice") ? *get("alice") : defaults.alice;
    spec.bob = get("bob") ? *get("bob") : defaults.bob;

    json params = json::object();
    if (spec.game == "total_function") {
        if (const auto *v = get("n")) params["n"] = parse_u64("n", *v);
    } else if (spec.game == "extraction") {
        if (const auto *v = get("left_size")) params["left_size"] = parse_u64("left_size", *v);
        if (const auto *v = get("right_size")) params["right_size"] = parse_u64("right_size", *v);
        if (const auto *v = get("degree_cap")) params["degree_cap"] = parse_u64("degree_cap", *v);
        if (const auto *v = get("threshold")) params["threshold"] = parse_u64("threshold", *v);
    } else if (spec.game == "bijection") {
        if (const auto *v = get("domain_size")) params["domain_size"] = parse_u64("domain_size", *v);
    } else if (spec.game == "miller") {
        const std::uint64_t c = get("ratio_target") ? parse_u64("ratio_target", *get("ratio_target")) : 1;
        params["ratio_target"] = c;
        std::vector<std::uint64_t> sizes;
        if (const auto *v = get("sizes")) {
            std::string current;
            const auto flush = [&]() {
                if (!current.empty()) sizes.push_back(parse_u64("sizes", current));
                current.clear();
            };
            for (char ch : *v) {
                if (ch == ',') flush();
                else current.push_back(ch);
            }
            flush();
        } else {
            const std::uint64_t n = get("num_sets") ? parse_u64("num_sets", *get("num_sets")) : 16;
            const std::uint64_t size = get("set_size") ? parse_u64("set_size", *get("set_size")) : 4 * c;
            sizes.assign(n, size);
        }
        params["sizes"] = sizes;
    } else { // complexity
        if (const auto *v = get("mode")) params["mode"] = *v;
        json alpha = json::object();
        alpha["name"] = get("alpha") ? *get("alpha") : "all_finite";
        alpha["domain"] = get("alpha_domain") ? parse_domain(*get("alpha_domain"))
                                              : std::vector<std::string>{"0", "1"};
        json alpha_params = json::object();
        if (const auto *v = get("alpha_x")) alpha_params["x"] = *v == "e" ? "" : *v;
        if (const auto *v = get("alpha_bound")) alpha_params["bound"] = parse_u64("alpha_bound", *v);
        if (const auto *v = get("alpha_c"))
            alpha_params["c"] = static_cast<long long>(parse_u64("alpha_c", *v));
        alpha["params"] = alpha_params;
        if (const auto *v = get("infinite_rule")) alpha["infinite_rule"] = *v;
        if (const auto *v = get("alpha2")) {
            params["alpha2"] = json{{"name", *v}, {"domain", alpha["domain"]}};
        } else {
            params["alpha"] = alpha;
        }
    }
    spec.params = std::move(params);

    for (const char *key : {"budget", "moves", "chunk", "table_len", "active_rounds",
                            "max_program_len", "max_output_len"})
        if (const auto *v = get(key)) spec.extras[key] = parse_u64(key, *v);

    // fail early on bad schema params
    make_schema(spec.game, spec.params);
    return spec;
}

MatchResult run_spec(const RunSpec &spec) {
    auto schema = make_schema(spec.game, spec.params);
    if (spec.strict) {
        if (spec.game == "extraction") {
            const auto params = extraction::ExtractionParams::from_json(spec.params);
            if (!extraction::winnability_condition(params).winnable)
                throw ConfigError("strict",
                                  "extraction parameters fail the winnability iteration");
        } else if (spec.game == "miller") {
            const auto params = miller::MillerParams::from_json(spec.params);
            if (!miller::winnability(params))
                throw ConfigError("strict", "miller parameters are not winnable for Alice");
        }
    }
    auto alice = make_strategy(*schema, Player::Alice, spec.alice, spec.extras, spec.seed);
    auto bob = make_strategy(*schema, Player::Bob, spec.bob, spec.extras, spec.seed);
    return play_match(*schema, *alice, *bob, spec.horizon, spec.seed);
}

ReplayResult replay_trace(const MatchTrace &trace) {
    auto schema = make_schema(trace.schema, trace.params);
    return replay(trace, *schema);
}

TraceDiagnosis validate_trace(const MatchTrace &trace) {
    std::shared_ptr<const GameSchema> schema;
    try {
        schema = make_schema(trace.schema, trace.params);
    } catch (const ConfigError &e) {
        TraceDiagnosis diag;
        diag.ok = false;
        diag.violation = e.what();
        return diag;
    }
    return validate_trace(trace, *schema);
}

std::vector<std::string> metric_names(const std::string &game) {
    json params = json::object();
    if (game == "miller") params["sizes"] = std::vector<std::uint64_t>{4, 4};
    auto schema = make_schema(game, params);
    auto state = schema->initial_state();
    std::vector<std::string> names;
    for (const auto &[key, value] : schema->metrics(*state)) names.push_back(key);
    return names;
}

} // namespace kcg
