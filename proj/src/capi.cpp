#include "kcgames.h"

#include <map>
#include <string>
#include <vector>

#include "kcgames/engine.hpp"
#include "kcgames/registry.hpp"
#include "kcgames/version.hpp"

struct kcg_config {
    std::map<std::string, std::string> values;
};

struct kcg_result {
    int outcome = KCG_PLAYER_BOB;
    bool quiescent = false;
    std::int64_t rounds = 0;
    std::string trace_text;
    std::string report;
    std::vector<std::pair<std::string, std::string>> metrics;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_metric_names;

void set_error(const std::string &message) { g_last_error = message; }

int fail(int code, const std::string &message) {
    set_error(message);
    return code;
}

} // namespace

extern "C" {

const char *kcg_version(void) { return kcg::engine_version; }

const char *kcg_last_error(void) { return g_last_error.c_str(); }

kcg_config *kcg_config_new(void) { return new kcg_config(); }

void kcg_config_free(kcg_config *config) { delete config; }

int kcg_config_set(kcg_config *config, const char *key, const char *value) {
    if (!config || !key || !value) return fail(KCG_ERR_INVALID_ARGUMENT, "null argument");
    config->values[key] = value;
    return KCG_OK;
}

int kcg_run(const kcg_config *config, kcg_result **out) {
    if (!config || !out) return fail(KCG_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        const kcg::RunSpec spec = kcg::spec_from_config(config->values);
        kcg::MatchResult played = kcg::run_spec(spec);
        auto schema = kcg::make_schema(spec.game, spec.params);
        auto result = std::make_unique<kcg_result>();
        result->outcome =
            played.verdict.winner == kcg::Player::Alice ? KCG_PLAYER_ALICE : KCG_PLAYER_BOB;
        result->quiescent = played.trace.quiescent;
        result->rounds = played.trace.rounds;
        result->trace_text = kcg::trace_to_text(played.trace);
        result->report = std::string(kcg::to_string(played.verdict.winner)) + " wins in " +
                         std::to_string(played.trace.rounds) + " rounds" +
                         (played.trace.quiescent ? " (quiescent)" : " (horizon)");
        result->metrics = schema->metrics(*played.final_state);
        *out = result.release();
        return KCG_OK;
    } catch (const kcg::ConfigError &e) {
        return fail(KCG_ERR_CONFIG, e.what());
    } catch (const kcg::IllegalMoveError &e) {
        return fail(KCG_ERR_ILLEGAL_MOVE, e.what());
    } catch (const kcg::GameError &e) {
        return fail(KCG_ERR_INTERNAL, e.what());
    } catch (const std::exception &e) {
        return fail(KCG_ERR_INTERNAL, e.what());
    }
}

int kcg_verify(const char *trace_text, size_t length, kcg_result **out) {
    if (!trace_text || !out) return fail(KCG_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        const std::string text(trace_text, length);
        const kcg::MatchTrace trace = kcg::trace_from_text(text);
        const kcg::TraceDiagnosis diag = kcg::validate_trace(trace);
        auto result = std::make_unique<kcg_result>();
        result->outcome =
            trace.outcome == kcg::Player::Alice ? KCG_PLAYER_ALICE : KCG_PLAYER_BOB;
        result->quiescent = trace.quiescent;
        result->rounds = trace.rounds;
        if (diag.ok) {
            result->report = "trace valid";
            *out = result.release();
            return KCG_OK;
        }
        result->report = diag.violation +
                         (diag.round > 0 ? " (round " + std::to_string(diag.round) + ")" : "");
        set_error(result->report);
        *out = result.release();
        return KCG_ERR_VERIFY;
    } catch (const kcg::TraceParseError &e) {
        return fail(KCG_ERR_PARSE, e.what());
    } catch (const kcg::GameError &e) {
        return fail(KCG_ERR_INTERNAL, e.what());
    } catch (const std::exception &e) {
        return fail(KCG_ERR_INTERNAL, e.what());
    }
}

void kcg_result_free(kcg_result *result) { delete result; }

int kcg_result_outcome(const kcg_result *result) {
    return result ? result->outcome : KCG_PLAYER_BOB;
}

int kcg_result_quiescent(const kcg_result *result) {
    return result && result->quiescent ? 1 : 0;
}

int64_t kcg_result_rounds(const kcg_result *result) { return result ? result->rounds : 0; }

const char *kcg_result_trace(const kcg_result *result) {
    return result ? result->trace_text.c_str() : "";
}

const char *kcg_result_report(const kcg_result *result) {
    return result ? result->report.c_str() : "";
}

size_t kcg_result_metric_count(const kcg_result *result) {
    return result ? result->metrics.size() : 0;
}

const char *kcg_result_metric_name(const kcg_result *result, size_t index) {
    if (!result || index >= result->metrics.size()) return "";
    return result->metrics[index].first.c_str();
}

const char *kcg_result_metric_value(const kcg_result *result, size_t index) {
    if (!result || index >= result->metrics.size()) return "";
    return result->metrics[index].second.c_str();
}

const char *kcg_metric_names(const char *game) {
    if (!game) {
        set_error("null argument");
        return "";
    }
    try {
        std::string joined;
        for (const auto &name : kcg::metric_names(game)) {
            if (!joined.empty()) joined += ',';
            joined += name;
        }
        g_metric_names = std::move(joined);
        return g_metric_names.c_str();
    } catch (const std::exception &e) {
        set_error(e.what());
        return "";
    }
}

} // extern "C"
