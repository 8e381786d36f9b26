/*
 * Copyright (c) 2026, The readmap Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the readmap library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an rm_status; on
 * failure rm_last_error() describes the problem. Strings returned through
 * char** out-parameters are heap-allocated and released with
 * rm_string_free(). */

#ifndef READMAP_READMAP_H
#define READMAP_READMAP_H

#include <stddef.h>
#include <stdint.h>

#if defined(READMAP_BUILDING_LIBRARY)
#define READMAP_API __attribute__((visibility("default")))
#else
#define READMAP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rm_status {
  RM_OK = 0,
  RM_ERR_INVALID_ARGUMENT = 1,
  RM_ERR_PARSE = 2,
  RM_ERR_IO = 3,
  RM_ERR_DOMAIN = 4,
  RM_ERR_NOT_FOUND = 5,
  RM_ERR_TIMEOUT = 6,
  RM_ERR_INTERNAL = 7
} rm_status;

typedef enum rm_similarity {
  RM_SIMILARITY_COSINE = 0,
  RM_SIMILARITY_JACCARD = 1,
  RM_SIMILARITY_RAW = 2
} rm_similarity;

typedef struct rm_corpus rm_corpus;
typedef struct rm_map rm_map;
typedef struct rm_server rm_server;

typedef struct rm_build_options {
  size_t threshold;               /* minimum distinct readers, default 16 */
  rm_similarity similarity;       /* default cosine */
  size_t k;                       /* 0 selects the area count automatically */
  uint64_t seed;                  /* default 42 */
  double canvas_width;            /* default 1000 */
  double canvas_height;           /* default 1000 */
  const char* source;             /* provenance label, may be NULL */
  const char* snapshot_date;      /* YYYY-MM-DD, may be NULL */
  const char* overrides_path;     /* area label overrides, may be NULL */
  const char* enrichment_url;     /* http:// label service, may be NULL */
  uint32_t enrichment_timeout_ms; /* default 5000 */
  const char* matrix_dump_path;   /* co-readership CSV, may be NULL */
} rm_build_options;

READMAP_API const char* rm_version(void);
READMAP_API const char* rm_status_string(rm_status status);
/* Message of the last failure on the calling thread. */
READMAP_API const char* rm_last_error(void);
READMAP_API void rm_string_free(char* text);

/* Corpus: newline-delimited JSON metadata and readership events. */
READMAP_API rm_status rm_corpus_load(const char* metadata_path, const char* events_path,
                                     rm_corpus** out);
READMAP_API void rm_corpus_free(rm_corpus* corpus);
READMAP_API size_t rm_corpus_document_count(const rm_corpus* corpus);
READMAP_API size_t rm_corpus_warning_count(const rm_corpus* corpus);
READMAP_API const char* rm_corpus_warning(const rm_corpus* corpus, size_t index);
READMAP_API rm_status rm_corpus_filter(const rm_corpus* corpus, size_t min_readers,
                                       rm_corpus** out);
/* Publication statistics as JSON; reference_date is YYYY-MM-DD. */
READMAP_API rm_status rm_corpus_stats_json(const rm_corpus* corpus, const char* reference_date,
                                           char** out_json);

/* Maps */
READMAP_API void rm_build_options_init(rm_build_options* options);
READMAP_API rm_status rm_map_build(const rm_corpus* corpus, const rm_build_options* options,
                                   rm_map** out);
READMAP_API rm_status rm_map_load(const char* path, rm_map** out);
READMAP_API void rm_map_free(rm_map* map);
READMAP_API rm_status rm_map_save(const rm_map* map, const char* path);
READMAP_API rm_status rm_map_to_json(const rm_map* map, char** out_json);
READMAP_API size_t rm_map_area_count(const rm_map* map);
READMAP_API size_t rm_map_document_count(const rm_map* map);
READMAP_API size_t rm_map_warning_count(const rm_map* map);
READMAP_API const char* rm_map_warning(const rm_map* map, size_t index);
/* Same JSON bodies as the HTTP endpoints. */
READMAP_API rm_status rm_map_search(const rm_map* map, const char* query, char** out_json);
READMAP_API rm_status rm_map_sort(const rm_map* map, const char* key, char** out_json);
READMAP_API rm_status rm_map_document_json(const rm_map* map, const char* doc_id,
                                           char** out_json);

/* Read-only HTTP service over a map file. port 0 binds an ephemeral port;
 * assets_dir may be NULL. The server runs on its own thread until
 * rm_server_stop(), which also releases the handle. */
READMAP_API rm_status rm_server_start(const char* map_path, const char* host, int port,
                                      const char* assets_dir, rm_server** out);
READMAP_API int rm_server_port(const rm_server* server);
READMAP_API void rm_server_stop(rm_server* server);

#ifdef __cplusplus
}
#endif

#endif /* READMAP_READMAP_H */
