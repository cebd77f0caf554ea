#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace kcg {

using json = nlohmann::json;

enum class Player { Alice, Bob };

Player other(Player p);
const char *to_string(Player p);
Player player_from_string(const std::string &s); // throws std::invalid_argument

// JSON integers arrive as signed or unsigned depending on how the value
// was built; payload parsing accepts both.
inline bool json_uint(const json &value, std::uint64_t &out) {
    if (value.is_number_unsigned()) {
        out = value.get<std::uint64_t>();
        return true;
    }
    if (value.is_number_integer()) {
        const auto v = value.get<std::int64_t>();
        if (v < 0) return false;
        out = static_cast<std::uint64_t>(v);
        return true;
    }
    return false;
}

// ---- errors ----------------------------------------------------------

struct GameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad parameters or config values; the CLI maps this to exit code 1.
struct ConfigError : GameError {
    ConfigError(std::string field_in, const std::string &msg)
        : GameError(field_in + ": " + msg), field(std::move(field_in)) {}
    std::string field;
};

// Thrown by schemas when a proposed move breaks a game rule.
struct RuleViolation : GameError {
    using GameError::GameError;
};

// RuleViolation surfaced by the engine with attribution.
struct IllegalMoveError : GameError {
    IllegalMoveError(Player p, int round_in, const std::string &why)
        : GameError("illegal move by " + std::string(to_string(p)) + " at round " +
                    std::to_string(round_in) + ": " + why),
          player(p), round(round_in) {}
    Player player;
    int round;
};

struct TraceParseError : GameError {
    TraceParseError(int line_in, const std::string &msg)
        : GameError("trace parse error at line " + std::to_string(line_in) + ": " + msg),
          line(line_in) {}
    int line;
};

struct TraceCorruptError : GameError {
    TraceCorruptError(int round_in, const std::string &msg)
        : GameError("trace corrupt at round " + std::to_string(round_in) + ": " + msg),
          round(round_in) {}
    int round;
};

// ---- trace -----------------------------------------------------------

struct MoveRecord {
    int round = 0; // 1-based
    Player player = Player::Alice;
    json payload;  // null = pass
};

struct MatchTrace {
    std::string schema;
    json params;
    std::uint64_t seed = 0;
    std::string engine_version;
    std::vector<MoveRecord> moves;
    Player outcome = Player::Bob;
    json certificate;
    bool quiescent = false;
    int rounds = 0;
};

// Line-delimited JSON: header {engine_version, params, schema, seed}, one
// {payload, player, round} object per move, footer {certificate, outcome,
// quiescent, rounds}. Serialization is byte-deterministic.
std::string trace_to_text(const MatchTrace &trace);
MatchTrace trace_from_text(const std::string &text); // throws TraceParseError

// ---- game and strategy interfaces -------------------------------------

class GameState {
public:
    virtual ~GameState() = default;
};

struct Verdict {
    Player winner = Player::Bob;
    json certificate;
};

class GameSchema {
public:
    virtual ~GameSchema() = default;
    virtual const std::string &name() const = 0;
    virtual json params_json() const = 0;
    virtual std::unique_ptr<GameState> initial_state() const = 0;
    // Throws RuleViolation on an illegal payload; must not mutate state then.
    virtual void apply_move(GameState &state, Player mover, const json &payload) const = 0;
    virtual Verdict adjudicate(const GameState &state) const = 0;
    // Nondecreasing per accepted move; the engine asserts this after every
    // move as the cheap arm of the monotone-growth invariant.
    virtual std::vector<std::uint64_t> growth_counters(const GameState &state) const = 0;
    // Name/value pairs for sweep tables.
    virtual std::vector<std::pair<std::string, std::string>> metrics(const GameState &) const {
        return {};
    }
};

// Strategies see the whole trace so far (full-information game). Each
// instance serves one match; randomized ones are seeded at construction.
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual const std::string &name() const = 0;
    // Returns the move payload, or null json to pass.
    virtual json propose(const GameState &state, const MatchTrace &so_far) = 0;
};

struct HorizonPolicy {
    int max_rounds = 10000;
    bool quiescence = true; // stop once both players pass within one round
};

struct MatchResult {
    MatchTrace trace;
    std::unique_ptr<GameState> final_state;
    Verdict verdict;
};

// One round = one Alice move then one Bob move; Alice always moves first.
MatchResult play_match(const GameSchema &schema, Strategy &alice, Strategy &bob,
                       const HorizonPolicy &horizon, std::uint64_t seed);

MatchTrace run_match(const GameSchema &schema, Strategy &alice, Strategy &bob,
                     const HorizonPolicy &horizon, std::uint64_t seed);

struct ReplayResult {
    std::unique_ptr<GameState> final_state;
    Verdict verdict;
};

// Re-applies recorded moves through the schema. Throws TraceCorruptError
// if a recorded move is illegal at its position.
ReplayResult replay(const MatchTrace &trace, const GameSchema &schema);

struct TraceDiagnosis {
    bool ok = true;
    std::string violation; // empty when ok
    int round = 0;         // first offending round, 0 = header/footer level
};

TraceDiagnosis validate_trace(const MatchTrace &trace, const GameSchema &schema);

} // namespace kcg
