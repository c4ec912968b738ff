#ifndef PAPNI_H
#define PAPNI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PapniBackend {
  PapniBackend_Rpni = 0,
  PapniBackend_Edsm = 1,
} PapniBackend;

typedef enum PapniStatus {
  PapniStatus_Ok = 0,
  PapniStatus_NullPointer = 1,
  PapniStatus_InvalidUtf8 = 2,
  PapniStatus_InvalidInput = 3,
  PapniStatus_LabelConflict = 4,
  PapniStatus_NoWellMatchedSamples = 5,
  PapniStatus_GenerationFailed = 6,
  PapniStatus_Panic = 7,
} PapniStatus;

/**
 * Opaque labelled dataset.
 */
typedef struct PapniDataset PapniDataset;

/**
 * Opaque learned or parsed automaton (DFA or VDPA).
 */
typedef struct PapniModel PapniModel;

/**
 * Message of the last failed call on this thread, or null if none.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *papni_last_error(void);

/**
 * Parses a dataset in the `+`/`-` line format.
 *
 * # Safety
 * `text_ptr` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum PapniStatus papni_dataset_parse(const char *text_ptr, struct PapniDataset **out);

/**
 * Number of samples in `dataset`, or 0 for a null handle.
 *
 * # Safety
 * `dataset` must be null or a live handle from [`papni_dataset_parse`].
 */
uintptr_t papni_dataset_len(const struct PapniDataset *dataset);

/**
 * # Safety
 * `dataset` must be null or a live handle not yet freed.
 */
void papni_dataset_free(struct PapniDataset *dataset);

/**
 * Learns a VDPA from `dataset` using the alphabet file contents in
 * `alphabet`.
 *
 * # Safety
 * `dataset` must be a live handle, `alphabet` a NUL-terminated string and
 * `out` a valid pointer.
 */
enum PapniStatus papni_learn(const struct PapniDataset *dataset,
                             const char *alphabet,
                             enum PapniBackend backend,
                             struct PapniModel **out);

/**
 * Learns a DFA directly over the raw words of `dataset`.
 *
 * # Safety
 * `dataset` must be a live handle and `out` a valid pointer.
 */
enum PapniStatus papni_learn_dfa(const struct PapniDataset *dataset,
                                 enum PapniBackend backend,
                                 struct PapniModel **out);

/**
 * Parses a model in the textual automaton format.
 *
 * # Safety
 * `text_ptr` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PapniStatus papni_model_parse(const char *text_ptr, struct PapniModel **out);

/**
 * Classifies a whitespace-separated word. Symbols outside the model's
 * alphabet reject.
 *
 * # Safety
 * `model` must be a live handle, `word` a NUL-terminated string and
 * `accepted` a valid pointer.
 */
enum PapniStatus papni_model_accepts(const struct PapniModel *model,
                                     const char *word,
                                     bool *accepted);

/**
 * Number of states, or 0 for a null handle.
 *
 * # Safety
 * `model` must be null or a live handle.
 */
uintptr_t papni_model_size(const struct PapniModel *model);

/**
 * Whether the model is a VDPA (as opposed to a DFA).
 *
 * # Safety
 * `model` must be null or a live handle.
 */
bool papni_model_is_vdpa(const struct PapniModel *model);

/**
 * Canonical textual form; free with [`papni_string_free`]. Null on a null
 * handle.
 *
 * # Safety
 * `model` must be null or a live handle.
 */
char *papni_model_to_text(const struct PapniModel *model);

/**
 * Graphviz rendering; free with [`papni_string_free`]. Null on a null
 * handle.
 *
 * # Safety
 * `model` must be null or a live handle.
 */
char *papni_model_to_dot(const struct PapniModel *model);

/**
 * # Safety
 * `model` must be null or a live handle not yet freed.
 */
void papni_model_free(struct PapniModel *model);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void papni_string_free(char *s);

#endif  /* PAPNI_H */
