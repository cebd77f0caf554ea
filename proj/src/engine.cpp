#include "kcgames/engine.hpp"

#include "kcgames/version.hpp"

namespace kcg {

namespace {

void check_growth(const std::vector<std::uint64_t> &before,
                  const std::vector<std::uint64_t> &after) {
    if (before.size() != after.size())
        throw GameError("internal: growth counter arity changed mid-match");
    for (std::size_t i = 0; i < before.size(); ++i)
        if (after[i] < before[i])
            throw GameError("internal: monotone growth violated at counter " + std::to_string(i));
}

} // namespace

MatchResult play_match(const GameSchema &schema, Strategy &alice, Strategy &bob,
                       const HorizonPolicy &horizon, std::uint64_t seed) {
    if (horizon.max_rounds <= 0) throw ConfigError("max_rounds", "must be positive");

    MatchResult result;
    MatchTrace &trace = result.trace;
    trace.schema = schema.name();
    trace.params = schema.params_json();
    trace.seed = seed;
    trace.engine_version = engine_version;

    auto state = schema.initial_state();
    auto counters = schema.growth_counters(*state);

    bool quiescent = false;
    int round = 0;
    while (round < horizon.max_rounds) {
        ++round;
        bool all_passed = true;
        for (Player mover : {Player::Alice, Player::Bob}) {
            Strategy &strat = mover == Player::Alice ? alice : bob;
            json payload = strat.propose(*state, trace);
            if (!payload.is_null()) {
                all_passed = false;
                try {
                    schema.apply_move(*state, mover, payload);
                } catch (const RuleViolation &violation) {
                    throw IllegalMoveError(mover, round, violation.what());
                }
                auto next = schema.growth_counters(*state);
                check_growth(counters, next);
                counters = std::move(next);
            }
            trace.moves.push_back(MoveRecord{round, mover, std::move(payload)});
        }
        if (horizon.quiescence && all_passed) {
            quiescent = true;
            break;
        }
    }

    trace.rounds = round;
    trace.quiescent = quiescent;
    result.verdict = schema.adjudicate(*state);
    trace.outcome = result.verdict.winner;
    trace.certificate = result.verdict.certificate;
    result.final_state = std::move(state);
    return result;
}

MatchTrace run_match(const GameSchema &schema, Strategy &alice, Strategy &bob,
                     const HorizonPolicy &horizon, std::uint64_t seed) {
    return play_match(schema, alice, bob, horizon, seed).trace;
}

ReplayResult replay(const MatchTrace &trace, const GameSchema &schema) {
    auto state = schema.initial_state();
    auto counters = schema.growth_counters(*state);
    Player expected = Player::Alice;
    int expected_round = 1;
    for (const auto &move : trace.moves) {
        if (move.player != expected || move.round != expected_round)
            throw TraceCorruptError(move.round, "players must alternate within 1-based rounds");
        if (!move.payload.is_null()) {
            try {
                schema.apply_move(*state, move.player, move.payload);
            } catch (const RuleViolation &violation) {
                throw TraceCorruptError(move.round, violation.what());
            }
            auto next = schema.growth_counters(*state);
            try {
                check_growth(counters, next);
            } catch (const GameError &e) {
                throw TraceCorruptError(move.round, e.what());
            }
            counters = std::move(next);
        }
        if (expected == Player::Bob) ++expected_round;
        expected = other(expected);
    }
    if (expected != Player::Alice)
        throw TraceCorruptError(expected_round, "trace ends mid-round");
    ReplayResult result;
    result.verdict = schema.adjudicate(*state);
    result.final_state = std::move(state);
    return result;
}

TraceDiagnosis validate_trace(const MatchTrace &trace, const GameSchema &schema) {
    TraceDiagnosis diag;
    if (trace.schema != schema.name()) {
        diag.ok = false;
        diag.violation = "schema name mismatch: " + trace.schema;
        return diag;
    }
    ReplayResult replayed;
    try {
        replayed = replay(trace, schema);
    } catch (const TraceCorruptError &e) {
        diag.ok = false;
        diag.violation = e.what();
        diag.round = e.round;
        return diag;
    }
    if (!trace.moves.empty()) {
        const int last_round = trace.moves.back().round;
        if (trace.rounds != last_round) {
            diag.ok = false;
            diag.violation = "recorded rounds disagree with move list";
            diag.round = last_round;
            return diag;
        }
        if (trace.quiescent) {
            const auto &last = trace.moves[trace.moves.size() - 1];
            const auto &prev = trace.moves[trace.moves.size() - 2];
            if (!last.payload.is_null() || !prev.payload.is_null()) {
                diag.ok = false;
                diag.violation = "quiescent flag set but final round has a non-pass move";
                diag.round = last_round;
                return diag;
            }
        }
    }
    if (replayed.verdict.winner != trace.outcome) {
        diag.ok = false;
        diag.violation = std::string("recorded outcome contradicts referee: recorded ") +
                         to_string(trace.outcome) + ", referee says " +
                         to_string(replayed.verdict.winner);
        diag.round = trace.rounds;
        return diag;
    }
    if (replayed.verdict.certificate != trace.certificate) {
        diag.ok = false;
        diag.violation = "recorded certificate differs from replayed certificate";
        diag.round = trace.rounds;
        return diag;
    }
    return diag;
}

} // namespace kcg
