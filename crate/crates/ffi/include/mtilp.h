#ifndef MTILP_H
#define MTILP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MtilpStatus {
  MTILP_STATUS_OK = 0,
  MTILP_STATUS_NULL_POINTER = 1,
  MTILP_STATUS_INVALID_UTF8 = 2,
  MTILP_STATUS_DATASET = 3,
  MTILP_STATUS_UNKNOWN_STRATEGY = 4,
  // The requested task has no solution in this run.
  MTILP_STATUS_NOT_FOUND = 5,
  MTILP_STATUS_PANIC = 6,
} MtilpStatus;

// A loaded multi-task problem.
typedef struct MtilpDataset MtilpDataset;

// The result of one strategy run.
typedef struct MtilpRun MtilpRun;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The last error message on this thread, or an empty string. The pointer
// stays valid until the next failing call on this thread.
const char *mtilp_last_error(void);

// Loads a dataset directory.
//
// # Safety
// `path` must be a NUL-terminated string and `out` a valid pointer.
enum MtilpStatus mtilp_dataset_load(const char *path, struct MtilpDataset **out);

// Releases a dataset. Null is ignored.
//
// # Safety
// `ds` must come from [`mtilp_dataset_load`] and not be used afterwards.
void mtilp_dataset_free(struct MtilpDataset *ds);

// Number of tasks in the dataset.
//
// # Safety
// `ds` must be a live dataset handle and `out` a valid pointer.
enum MtilpStatus mtilp_dataset_task_count(const struct MtilpDataset *ds, size_t *out);

// Runs one strategy over the dataset. `strategy` is one of `naive`, `id`,
// `reset-id`, `reset-bfs`, `prio-ex`, `prio-cons`. A `timeout_ms` of 0
// means no timeout.
//
// # Safety
// `ds` must be a live dataset handle, `strategy` a NUL-terminated string
// and `out` a valid pointer.
enum MtilpStatus mtilp_run(const struct MtilpDataset *ds,
                           const char *strategy,
                           bool preserve,
                           uint64_t timeout_ms,
                           uint64_t seed,
                           struct MtilpRun **out);

// Releases a run. Null is ignored.
//
// # Safety
// `r` must come from [`mtilp_run`] and not be used afterwards.
void mtilp_run_free(struct MtilpRun *r);

// Number of tasks solved in the run.
//
// # Safety
// `r` must be a live run handle and `out` a valid pointer.
enum MtilpStatus mtilp_run_solved_count(const struct MtilpRun *r, size_t *out);

// Total hypotheses tested over all tasks in the run.
//
// # Safety
// `r` must be a live run handle and `out` a valid pointer.
enum MtilpStatus mtilp_run_tested_count(const struct MtilpRun *r, uint64_t *out);

// The learned program for `task` as clause text, one clause per line.
// Returns [`MtilpStatus::NotFound`] if the task was not solved.
//
// # Safety
// `r` must be a live run handle, `task` a NUL-terminated string and `out`
// a valid pointer. The string written to `out` is freed with
// [`mtilp_string_free`].
enum MtilpStatus mtilp_run_solution(const struct MtilpRun *r, const char *task, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void mtilp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MTILP_H */
