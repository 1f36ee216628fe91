#ifndef ENTANGLE_ENTANGLE_H
#define ENTANGLE_ENTANGLE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ENT_API __declspec(dllexport)
#else
#define ENT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  ENT_OK = 0,
  ENT_ERR_INVALID_ARGUMENT = 1,
  ENT_ERR_NOT_FOUND = 2,
  ENT_ERR_CONSTRUCTION = 3,
  ENT_ERR_DEGENERATE = 4,
  ENT_ERR_IO = 5,
  ENT_ERR_INTERNAL = 6
} ent_status;

typedef struct ent_pipeline ent_pipeline;

typedef struct {
  size_t vertices, edges, faces;
} ent_complex_counts;

typedef struct {
  ent_complex_counts box, cprime, cdoubleprime;
  size_t tree_edges;
  size_t non_tree_edges;
} ent_pipeline_counts;

typedef struct {
  /* "full", "sampled:K", or NULL for the per-check defaults. */
  const char* scope;
  uint64_t sample_seed;
  size_t knot_samples;
  size_t contraction_samples;
  size_t lemma_trials;
  int inject_negative;
  /* Comma-separated check names, or NULL for all. */
  const char* checks;
  int parallel;
} ent_verify_options;

ENT_API const char* ent_version(void);
ENT_API const char* ent_status_name(ent_status status);
/* Message of the last failed call on this thread; empty after a success. */
ENT_API const char* ent_last_error(void);
/* Releases strings returned through char** out-parameters. */
ENT_API void ent_string_free(char* s);

ENT_API ent_status ent_cuboid_counts(int64_t n1, int64_t n2, int64_t n3, ent_complex_counts* out);
/* formats: comma-separated subset of off, obj, dot, json. */
ENT_API ent_status ent_generate(int64_t n, const char* dir, const char* formats);

ENT_API ent_status ent_pipeline_build(int64_t n, uint64_t seed, ent_pipeline** out);
ENT_API void ent_pipeline_free(ent_pipeline* p);
ENT_API ent_status ent_pipeline_get_counts(const ent_pipeline* p, ent_pipeline_counts* out);
ENT_API ent_status ent_pipeline_write(const ent_pipeline* p, const char* dir, const char* formats);

ENT_API void ent_verify_options_init(ent_verify_options* options);
/* Report JSON in *report_json; *passed is 1 iff every check passed. */
ENT_API ent_status ent_pipeline_verify(const ent_pipeline* p, const ent_verify_options* options, char** report_json,
                                       int* passed);
/* Certificate JSON of the fundamental cycle of a non-tree edge of C'. */
ENT_API ent_status ent_pipeline_knot(const ent_pipeline* p, uint32_t edge, const uint32_t* primes, size_t prime_count,
                                     char** certificate_json);

#ifdef __cplusplus
}
#endif

#endif
