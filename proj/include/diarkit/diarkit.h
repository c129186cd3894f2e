/* diarkit.h: public C API of the diarization scoring toolkit.
 *
 * Copyright 2026 diarkit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *  http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * Every entry point returns a diarkit_status; on failure,
 * diarkit_last_error() describes the most recent error in the calling
 * thread.  Handles are opaque and freed with their _free function.  Model
 * handles are immutable after creation and safe to share across threads.
 */

#ifndef DIARKIT_DIARKIT_H_
#define DIARKIT_DIARKIT_H_

#include <stddef.h>

#if defined(_WIN32) && defined(DIARKIT_BUILDING_SHARED)
#define DIARKIT_API __declspec(dllexport)
#elif defined(_WIN32)
#define DIARKIT_API __declspec(dllimport)
#elif defined(__GNUC__)
#define DIARKIT_API __attribute__((visibility("default")))
#else
#define DIARKIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum diarkit_status {
  DIARKIT_OK = 0,
  DIARKIT_INVALID_ARGUMENT = 1,
  DIARKIT_NOT_FOUND = 2,
  DIARKIT_PARSE_ERROR = 3,
  DIARKIT_NUMERIC_ERROR = 4,
  DIARKIT_IO_ERROR = 5,
  DIARKIT_UNKNOWN_ERROR = 6
} diarkit_status;

/* Message of the last failure in this thread; valid until the next failing
 * call on the same thread. */
DIARKIT_API const char *diarkit_last_error(void);

DIARKIT_API void diarkit_string_free(char *s);
DIARKIT_API void diarkit_doubles_free(double *p);

typedef struct diarkit_plda diarkit_plda;
typedef struct diarkit_mixture diarkit_mixture;

/* ---- single PLDA model ---- */

DIARKIT_API diarkit_status diarkit_plda_load(const char *path,
                                             diarkit_plda **out);
DIARKIT_API diarkit_status diarkit_plda_save(const diarkit_plda *model,
                                             const char *path);
DIARKIT_API void diarkit_plda_free(diarkit_plda *model);
DIARKIT_API int diarkit_plda_dim(const diarkit_plda *model);

/* Same-vs-different-speaker log likelihood ratio of two raw embeddings. */
DIARKIT_API diarkit_status diarkit_plda_score_pair(const diarkit_plda *model,
                                                   const double *a,
                                                   const double *b,
                                                   size_t dim,
                                                   int length_normalize,
                                                   double *out_llr);

/* ---- speaker-type mixture model ---- */

DIARKIT_API diarkit_status diarkit_mixture_load(const char *path,
                                                diarkit_mixture **out);
DIARKIT_API diarkit_status diarkit_mixture_save(const diarkit_mixture *model,
                                                const char *path);
DIARKIT_API void diarkit_mixture_free(diarkit_mixture *model);
DIARKIT_API int diarkit_mixture_dim(const diarkit_mixture *model);

/* prior_spec grammar: "uniform" | "paper" | "oracle:<M|F|C>" |
 * "<M|F|C>=<p>,..." summing to 1.  NULL selects the model's stored default
 * prior. */
DIARKIT_API diarkit_status diarkit_mixture_score_pair(
    const diarkit_mixture *model, const char *prior_spec, const double *a,
    const double *b, size_t dim, int length_normalize, double *out_llr);

/* Scores records i and j of an embedding file with either model kind. */
DIARKIT_API diarkit_status diarkit_score_pair_file(
    const char *model_path, int is_mixture, const char *prior_spec,
    const char *embeddings_path, size_t i, size_t j, int length_normalize,
    double *out_llr);

/* ---- training ---- */

/* Trains on an embedding file plus a label file and writes a model file.
 * out_loglik (freed by the caller with diarkit_doubles_free) receives the
 * per-example objective trace, entry 0 at initialization, one entry per
 * iteration; out_len its length.  Either out pointer may be NULL.
 * length_normalize scales each embedding to norm sqrt(dim) before
 * estimation. */
DIARKIT_API diarkit_status diarkit_train_plda(
    const char *embeddings_path, const char *labels_path, int iterations,
    int length_normalize, const char *model_out_path, double **out_loglik,
    size_t *out_len);

/* Per-type training of the three-component mixture; labels must carry a
 * type for every speaker.  The objective trace holds three consecutive
 * blocks (M, F, C), each iterations+1 long. */
DIARKIT_API diarkit_status diarkit_train_mixture(
    const char *embeddings_path, const char *labels_path, int iterations,
    int length_normalize, const char *prior_spec,
    const char *model_out_path, double **out_loglik, size_t *out_len);

/* ---- diarization ---- */

typedef struct diarkit_diarize_options {
  const char *mode;       /* "single" | "mixture" | "oracle" */
  const char *model_path; /* PLDA file for single, mixture file otherwise */
  const char *embeddings_path;
  const char *sad_path;
  const char *type_labels_path; /* required by oracle mode */
  const char *posteriors_path;  /* mixture: per-segment priors (optional) */
  const char *prior_spec;       /* mixture: shared prior (optional) */
  const char *stop_spec; /* "thresh:<t>" | "num:<k>"; NULL = mode default
                          * (-0.2 single, 0.0 mixture and oracle) */
  int length_normalize;
  int jobs; /* recordings processed in parallel when > 1 */
  const char *rttm_out_path;
} diarkit_diarize_options;

/* Runs the pipeline over every recording in the embedding file and writes
 * the hypothesis RTTM.  out_segments / out_clusters (optional) receive
 * totals across recordings. */
DIARKIT_API diarkit_status diarkit_diarize(
    const diarkit_diarize_options *options, int *out_segments,
    int *out_clusters);

/* ---- evaluation ---- */

typedef struct diarkit_der_report {
  double fa;
  double miss;
  double sm;
  double total;
  double der;
} diarkit_der_report;

DIARKIT_API diarkit_status diarkit_der(const char *reference_rttm,
                                       const char *hypothesis_rttm,
                                       double collar, int score_overlap,
                                       diarkit_der_report *out);

/* ---- synthetic data ---- */

/* Generates corpus or conversation files from a flat key-value config (see
 * README for the key table) under the given path prefix. */
DIARKIT_API diarkit_status diarkit_simulate(const char *config_path,
                                            const char *out_prefix);

/* Runs a named experiment suite; *out_table receives the TSV table (freed
 * by the caller with diarkit_string_free).  config_path may be NULL. */
DIARKIT_API diarkit_status diarkit_experiment(const char *suite,
                                              const char *config_path,
                                              char **out_table);

#ifdef __cplusplus
}
#endif

#endif /* DIARKIT_DIARKIT_H_ */
