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

#include "readmap/readmap.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "readmap/pipeline.hpp"
#include "readmap/server.hpp"

struct rm_corpus {
  readmap::Corpus corpus;
  readmap::Warnings warnings;
};

struct rm_map {
  readmap::KnowledgeMap map;
  readmap::Warnings warnings;
};

struct rm_server {
  std::unique_ptr<readmap::MapServer> server;
  int port = 0;
};

namespace {

thread_local std::string last_error;

rm_status to_status(readmap::ErrorCode code) {
  using readmap::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return RM_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse: return RM_ERR_PARSE;
    case ErrorCode::io: return RM_ERR_IO;
    case ErrorCode::domain: return RM_ERR_DOMAIN;
    case ErrorCode::not_found: return RM_ERR_NOT_FOUND;
    case ErrorCode::timeout: return RM_ERR_TIMEOUT;
  }
  return RM_ERR_INTERNAL;
}

template <typename Body>
rm_status guarded(Body&& body) {
  try {
    body();
    last_error.clear();
    return RM_OK;
  } catch (const readmap::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RM_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return RM_ERR_INTERNAL;
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw readmap::Error(readmap::ErrorCode::invalid_argument, what);
}

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* rm_version(void) { return readmap::tool_version(); }

const char* rm_status_string(rm_status status) {
  switch (status) {
    case RM_OK: return "ok";
    case RM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RM_ERR_PARSE: return "parse error";
    case RM_ERR_IO: return "i/o error";
    case RM_ERR_DOMAIN: return "domain error";
    case RM_ERR_NOT_FOUND: return "not found";
    case RM_ERR_TIMEOUT: return "timeout";
    case RM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* rm_last_error(void) { return last_error.c_str(); }

void rm_string_free(char* text) { std::free(text); }

rm_status rm_corpus_load(const char* metadata_path, const char* events_path, rm_corpus** out) {
  return guarded([&] {
    require(metadata_path && events_path && out, "null argument");
    *out = nullptr;
    auto handle = std::make_unique<rm_corpus>();
    handle->corpus = readmap::load_corpus_files(metadata_path, events_path, &handle->warnings);
    *out = handle.release();
  });
}

void rm_corpus_free(rm_corpus* corpus) { delete corpus; }

size_t rm_corpus_document_count(const rm_corpus* corpus) {
  return corpus ? corpus->corpus.size() : 0;
}

size_t rm_corpus_warning_count(const rm_corpus* corpus) {
  return corpus ? corpus->warnings.size() : 0;
}

const char* rm_corpus_warning(const rm_corpus* corpus, size_t index) {
  if (!corpus || index >= corpus->warnings.size()) return nullptr;
  return corpus->warnings[index].c_str();
}

rm_status rm_corpus_filter(const rm_corpus* corpus, size_t min_readers, rm_corpus** out) {
  return guarded([&] {
    require(corpus && out, "null argument");
    *out = nullptr;
    auto handle = std::make_unique<rm_corpus>();
    handle->corpus = readmap::filter_by_threshold(corpus->corpus, min_readers);
    *out = handle.release();
  });
}

rm_status rm_corpus_stats_json(const rm_corpus* corpus, const char* reference_date, char** out_json) {
  return guarded([&] {
    require(corpus && reference_date && out_json, "null argument");
    *out_json = nullptr;
    const auto date = readmap::CalendarDate::parse(reference_date);
    *out_json = copy_string(readmap::stats_to_json(readmap::publication_stats(corpus->corpus, date)));
  });
}

void rm_build_options_init(rm_build_options* options) {
  if (!options) return;
  *options = rm_build_options{};
  options->threshold = 16;
  options->similarity = RM_SIMILARITY_COSINE;
  options->k = 0;
  options->seed = 42;
  options->canvas_width = 1000.0;
  options->canvas_height = 1000.0;
  options->enrichment_timeout_ms = 5000;
}

rm_status rm_map_build(const rm_corpus* corpus, const rm_build_options* options, rm_map** out) {
  return guarded([&] {
    require(corpus && options && out, "null argument");
    *out = nullptr;
    readmap::BuildOptions build;
    build.threshold = options->threshold;
    switch (options->similarity) {
      case RM_SIMILARITY_COSINE: build.similarity = readmap::SimilarityScheme::cosine; break;
      case RM_SIMILARITY_JACCARD: build.similarity = readmap::SimilarityScheme::jaccard; break;
      case RM_SIMILARITY_RAW: build.similarity = readmap::SimilarityScheme::raw_scaled; break;
      default: require(false, "unknown similarity scheme");
    }
    if (options->k != 0) build.k = options->k;
    build.seed = options->seed;
    build.layout.canvas = {options->canvas_width, options->canvas_height};
    if (options->source) build.source = options->source;
    if (options->snapshot_date) build.snapshot_date = readmap::CalendarDate::parse(options->snapshot_date);
    if (options->overrides_path) build.labels.overrides = readmap::load_label_overrides(options->overrides_path);
    std::unique_ptr<readmap::HttpEnrichmentClient> client;
    if (options->enrichment_url) {
      client = std::make_unique<readmap::HttpEnrichmentClient>(
          options->enrichment_url, std::chrono::milliseconds(options->enrichment_timeout_ms));
      build.labels.client = client.get();
    }
    if (options->matrix_dump_path) build.matrix_dump = options->matrix_dump_path;

    auto result = readmap::build_map(corpus->corpus, build);
    auto handle = std::make_unique<rm_map>();
    handle->map = std::move(result.map);
    handle->warnings = std::move(result.warnings);
    *out = handle.release();
  });
}

rm_status rm_map_load(const char* path, rm_map** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = nullptr;
    auto handle = std::make_unique<rm_map>();
    handle->map = readmap::load_map_file(path);
    *out = handle.release();
  });
}

void rm_map_free(rm_map* map) { delete map; }

rm_status rm_map_save(const rm_map* map, const char* path) {
  return guarded([&] {
    require(map && path, "null argument");
    readmap::save_map_file(map->map, path);
  });
}

rm_status rm_map_to_json(const rm_map* map, char** out_json) {
  return guarded([&] {
    require(map && out_json, "null argument");
    *out_json = copy_string(readmap::serialize_map(map->map));
  });
}

size_t rm_map_area_count(const rm_map* map) { return map ? map->map.areas.size() : 0; }

size_t rm_map_document_count(const rm_map* map) { return map ? map->map.documents.size() : 0; }

size_t rm_map_warning_count(const rm_map* map) { return map ? map->warnings.size() : 0; }

const char* rm_map_warning(const rm_map* map, size_t index) {
  if (!map || index >= map->warnings.size()) return nullptr;
  return map->warnings[index].c_str();
}

rm_status rm_map_search(const rm_map* map, const char* query, char** out_json) {
  return guarded([&] {
    require(map && query && out_json, "null argument");
    *out_json = copy_string(readmap::search_response_json(map->map, readmap::SearchQuery::parse(query)));
  });
}

rm_status rm_map_sort(const rm_map* map, const char* key, char** out_json) {
  return guarded([&] {
    require(map && key && out_json, "null argument");
    *out_json = copy_string(readmap::list_response_json(map->map, readmap::parse_sort_key(key)));
  });
}

rm_status rm_map_document_json(const rm_map* map, const char* doc_id, char** out_json) {
  return guarded([&] {
    require(map && doc_id && out_json, "null argument");
    const auto* doc = map->map.find_document(doc_id);
    if (!doc) throw readmap::Error(readmap::ErrorCode::not_found, std::string("unknown document '") + doc_id + "'");
    *out_json = copy_string(readmap::document_to_json(*doc));
  });
}

rm_status rm_server_start(const char* map_path, const char* host, int port, const char* assets_dir,
                          rm_server** out) {
  return guarded([&] {
    require(map_path && out, "null argument");
    require(port >= 0 && port <= 65535, "port out of range");
    *out = nullptr;
    std::ifstream in(map_path, std::ios::binary);
    if (!in) throw readmap::Error(readmap::ErrorCode::io, std::string("cannot open ") + map_path);
    std::ostringstream bytes;
    bytes << in.rdbuf();

    auto handle = std::make_unique<rm_server>();
    handle->server = std::make_unique<readmap::MapServer>(bytes.str());
    readmap::ServerOptions options;
    if (host) options.host = host;
    options.port = port;
    if (assets_dir) options.assets_dir = assets_dir;
    handle->port = handle->server->start(options);
    *out = handle.release();
  });
}

int rm_server_port(const rm_server* server) { return server ? server->port : -1; }

void rm_server_stop(rm_server* server) {
  if (!server) return;
  server->server->stop();
  delete server;
}

}  // extern "C"
