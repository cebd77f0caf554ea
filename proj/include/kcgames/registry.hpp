#pragma once

#include <map>
#include <memory>
#include <string>

#include "kcgames/engine.hpp"

namespace kcg {

// Everything a single match needs, parsed and validated.
struct RunSpec {
    std::string game;
    json params;       // canonical schema params
    std::string alice; // strategy names; empty = per-game default
    std::string bob;
    json extras = json::object(); // strategy knobs (budget, moves, ...)
    HorizonPolicy horizon;
    std::uint64_t seed = 0;
    bool strict = false; // refuse unwinnable parameters for the paper-side player
};

std::shared_ptr<const GameSchema> make_schema(const std::string &game, const json &params);

std::unique_ptr<Strategy> make_strategy(const GameSchema &schema, Player role,
                                        const std::string &name, const json &extras,
                                        std::uint64_t seed);

// Flat string config (CLI/C API surface) -> RunSpec. Unknown keys are
// rejected so typos fail loudly. Throws ConfigError.
RunSpec spec_from_config(const std::map<std::string, std::string> &config);

MatchResult run_spec(const RunSpec &spec);

// Schema resolution by trace header.
ReplayResult replay_trace(const MatchTrace &trace);
TraceDiagnosis validate_trace(const MatchTrace &trace);

// Stable metric column names for a game's sweep tables.
std::vector<std::string> metric_names(const std::string &game);

} // namespace kcg
