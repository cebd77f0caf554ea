#ifndef KCGAMES_H
#define KCGAMES_H

/* C interface to the enumeration-game simulator. All state lives behind
 * opaque handles; every entry point returns a KCG_* status code and leaves
 * a message for kcg_last_error() on failure. Strings returned from a
 * result handle stay valid until the handle is freed. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KCG_API __declspec(dllexport)
#else
#define KCG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define KCG_OK 0
#define KCG_ERR_INVALID_ARGUMENT 1
#define KCG_ERR_CONFIG 2
#define KCG_ERR_ILLEGAL_MOVE 3
#define KCG_ERR_PARSE 4
#define KCG_ERR_VERIFY 5
#define KCG_ERR_INTERNAL 6

#define KCG_PLAYER_ALICE 0
#define KCG_PLAYER_BOB 1

typedef struct kcg_config kcg_config;
typedef struct kcg_result kcg_result;

KCG_API const char *kcg_version(void);
/* Message for the most recent failure on this thread; never NULL. */
KCG_API const char *kcg_last_error(void);

/* Flat key/value match configuration. Keys follow the CLI flags: game,
 * seed, alice, bob, max_rounds, quiescence, strict, plus per-game
 * parameters (n, left_size, right_size, degree_cap, threshold,
 * domain_size, moves, ratio_target, num_sets, set_size, sizes, budget,
 * mode, alpha, alpha_domain, ...). */
KCG_API kcg_config *kcg_config_new(void);
KCG_API void kcg_config_free(kcg_config *config);
KCG_API int kcg_config_set(kcg_config *config, const char *key, const char *value);

/* Plays one match. On KCG_OK the result holds the trace text, the outcome
 * and the per-game metrics. */
KCG_API int kcg_run(const kcg_config *config, kcg_result **out);

/* Replays and checks a trace. KCG_OK = valid; KCG_ERR_VERIFY = readable
 * but inconsistent (result explains the first violation); KCG_ERR_PARSE =
 * unreadable (no result). */
KCG_API int kcg_verify(const char *trace_text, size_t length, kcg_result **out);

KCG_API void kcg_result_free(kcg_result *result);
/* KCG_PLAYER_ALICE or KCG_PLAYER_BOB. */
KCG_API int kcg_result_outcome(const kcg_result *result);
KCG_API int kcg_result_quiescent(const kcg_result *result);
KCG_API int64_t kcg_result_rounds(const kcg_result *result);
/* Full trace text for run results; empty for verify results. */
KCG_API const char *kcg_result_trace(const kcg_result *result);
/* One human-readable line: verdict summary or first violation. */
KCG_API const char *kcg_result_report(const kcg_result *result);
KCG_API size_t kcg_result_metric_count(const kcg_result *result);
KCG_API const char *kcg_result_metric_name(const kcg_result *result, size_t index);
KCG_API const char *kcg_result_metric_value(const kcg_result *result, size_t index);

/* Comma-separated metric column names for a game, for table headers. */
KCG_API const char *kcg_metric_names(const char *game);

#ifdef __cplusplus
}
#endif

#endif /* KCGAMES_H */
