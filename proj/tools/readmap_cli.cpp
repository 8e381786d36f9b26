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

// readmap command line: build, stats, serve, search, list.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "readmap/readmap.h"

namespace {

struct CorpusDeleter {
  void operator()(rm_corpus* c) const { rm_corpus_free(c); }
};
struct MapDeleter {
  void operator()(rm_map* m) const { rm_map_free(m); }
};
struct StringDeleter {
  void operator()(char* s) const { rm_string_free(s); }
};
using CorpusPtr = std::unique_ptr<rm_corpus, CorpusDeleter>;
using MapPtr = std::unique_ptr<rm_map, MapDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

int report(rm_status status, const char* action) {
  std::cerr << "readmap: " << action << " failed (" << rm_status_string(status)
            << "): " << rm_last_error() << "\n";
  return 1 + static_cast<int>(status);
}

bool load_corpus(const std::string& metadata, const std::string& events, CorpusPtr& out,
                 int& exit_code) {
  rm_corpus* corpus = nullptr;
  const rm_status status = rm_corpus_load(metadata.c_str(), events.c_str(), &corpus);
  if (status != RM_OK) {
    exit_code = report(status, "loading corpus");
    return false;
  }
  out.reset(corpus);
  for (size_t i = 0; i < rm_corpus_warning_count(corpus); ++i) {
    std::cerr << "warning: " << rm_corpus_warning(corpus, i) << "\n";
  }
  return true;
}

bool load_map(const std::string& path, MapPtr& out, int& exit_code) {
  rm_map* map = nullptr;
  const rm_status status = rm_map_load(path.c_str(), &map);
  if (status != RM_OK) {
    exit_code = report(status, "loading map");
    return false;
  }
  out.reset(map);
  return true;
}

int print_json(rm_status status, char* json, const char* action) {
  StringPtr owned(json);
  if (status != RM_OK) return report(status, action);
  std::cout << owned.get();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Co-readership knowledge-domain maps"};
  app.set_version_flag("--version", std::string(rm_version()));
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "Build a map file from metadata and readership events");
  std::string metadata_path;
  std::string events_path;
  std::string out_path;
  std::size_t threshold = 16;
  std::string similarity = "cosine";
  std::string k_text = "auto";
  std::uint64_t seed = 42;
  double width = 1000.0;
  double height = 1000.0;
  std::string source;
  std::string snapshot_date;
  std::string overrides_path;
  std::string enrich_url;
  std::uint32_t enrich_timeout_ms = 5000;
  std::string dump_matrix;
  build->add_option("--metadata", metadata_path, "Document metadata (JSON lines)")->required()->check(CLI::ExistingFile);
  build->add_option("--events", events_path, "Readership events (JSON lines)")->required()->check(CLI::ExistingFile);
  build->add_option("--threshold", threshold, "Minimum distinct readers per document")->capture_default_str();
  build->add_option("--similarity", similarity, "Co-readership normalization")
      ->check(CLI::IsMember({"cosine", "jaccard", "raw"}))
      ->capture_default_str();
  build->add_option("--k", k_text, "Number of areas, or 'auto'")->capture_default_str();
  build->add_option("--seed", seed, "Random seed")->capture_default_str();
  build->add_option("--out", out_path, "Output map file")->required();
  build->add_option("--width", width, "Canvas width")->capture_default_str()->check(CLI::PositiveNumber);
  build->add_option("--height", height, "Canvas height")->capture_default_str()->check(CLI::PositiveNumber);
  build->add_option("--source", source, "Provenance label of the data set");
  build->add_option("--snapshot-date", snapshot_date, "Date the data set was composed (YYYY-MM-DD)");
  build->add_option("--overrides", overrides_path, "Area label overrides (JSON object)")->check(CLI::ExistingFile);
  build->add_option("--enrich-url", enrich_url, "Label suggestion service (http://...)");
  build->add_option("--enrich-timeout-ms", enrich_timeout_ms, "Label service timeout")->capture_default_str();
  build->add_option("--dump-matrix", dump_matrix, "Write the co-readership matrix as CSV");

  // stats
  auto* stats = app.add_subcommand("stats", "Publication statistics of a corpus");
  std::string stats_metadata;
  std::string stats_events;
  std::string reference_date;
  std::size_t stats_threshold = 0;
  stats->add_option("--metadata", stats_metadata, "Document metadata (JSON lines)")->required()->check(CLI::ExistingFile);
  stats->add_option("--events", stats_events, "Readership events (JSON lines)")->required()->check(CLI::ExistingFile);
  stats->add_option("--date", reference_date, "Reference date (YYYY-MM-DD)")->required();
  stats->add_option("--threshold", stats_threshold, "Minimum distinct readers per document")->capture_default_str();

  // serve
  auto* serve = app.add_subcommand("serve", "Serve a map file over HTTP");
  std::string serve_map;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string assets;
  serve->add_option("--map", serve_map, "Map file")->required()->check(CLI::ExistingFile);
  serve->add_option("--port", port, "TCP port (0 picks one)")->capture_default_str()->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--assets", assets, "Viewer bundle served at /")->check(CLI::ExistingDirectory);

  // search / list
  auto* search = app.add_subcommand("search", "Documents matching all query terms");
  std::string search_map;
  std::string query;
  search->add_option("--map", search_map, "Map file")->required()->check(CLI::ExistingFile);
  search->add_option("--query,-q", query, "Search terms")->required();

  auto* list = app.add_subcommand("list", "Documents in list order");
  std::string list_map;
  std::string sort_key = "title";
  list->add_option("--map", list_map, "Map file")->required()->check(CLI::ExistingFile);
  list->add_option("--sort", sort_key, "Sort key")
      ->check(CLI::IsMember({"title", "area", "readers"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  int exit_code = 0;
  if (*build) {
    rm_build_options options;
    rm_build_options_init(&options);
    options.threshold = threshold;
    options.similarity = similarity == "jaccard" ? RM_SIMILARITY_JACCARD
                         : similarity == "raw"   ? RM_SIMILARITY_RAW
                                                 : RM_SIMILARITY_COSINE;
    if (k_text != "auto") {
      try {
        std::size_t consumed = 0;
        const unsigned long k = std::stoul(k_text, &consumed);
        if (consumed != k_text.size() || k == 0) throw std::invalid_argument(k_text);
        options.k = k;
      } catch (const std::exception&) {
        std::cerr << "readmap: --k expects 'auto' or a positive integer\n";
        return 2;
      }
    }
    options.seed = seed;
    options.canvas_width = width;
    options.canvas_height = height;
    options.source = source.empty() ? nullptr : source.c_str();
    options.snapshot_date = snapshot_date.empty() ? nullptr : snapshot_date.c_str();
    options.overrides_path = overrides_path.empty() ? nullptr : overrides_path.c_str();
    options.enrichment_url = enrich_url.empty() ? nullptr : enrich_url.c_str();
    options.enrichment_timeout_ms = enrich_timeout_ms;
    options.matrix_dump_path = dump_matrix.empty() ? nullptr : dump_matrix.c_str();

    CorpusPtr corpus;
    if (!load_corpus(metadata_path, events_path, corpus, exit_code)) return exit_code;
    rm_map* raw_map = nullptr;
    rm_status status = rm_map_build(corpus.get(), &options, &raw_map);
    if (status != RM_OK) return report(status, "building map");
    MapPtr map(raw_map);
    for (size_t i = 0; i < rm_map_warning_count(map.get()); ++i) {
      std::cerr << "warning: " << rm_map_warning(map.get(), i) << "\n";
    }
    status = rm_map_save(map.get(), out_path.c_str());
    if (status != RM_OK) return report(status, "writing map");
    std::cerr << "wrote " << out_path << ": " << rm_map_document_count(map.get()) << " documents in "
              << rm_map_area_count(map.get()) << " areas\n";
    return 0;
  }

  if (*stats) {
    CorpusPtr corpus;
    if (!load_corpus(stats_metadata, stats_events, corpus, exit_code)) return exit_code;
    if (stats_threshold > 0) {
      rm_corpus* filtered = nullptr;
      const rm_status status = rm_corpus_filter(corpus.get(), stats_threshold, &filtered);
      if (status != RM_OK) return report(status, "filtering corpus");
      corpus.reset(filtered);
    }
    char* json = nullptr;
    const rm_status status = rm_corpus_stats_json(corpus.get(), reference_date.c_str(), &json);
    return print_json(status, json, "computing statistics");
  }

  if (*serve) {
    // Block termination signals before the server threads start so that only
    // sigwait below receives them.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    rm_server* server = nullptr;
    const rm_status status = rm_server_start(serve_map.c_str(), host.c_str(), port,
                                             assets.empty() ? nullptr : assets.c_str(), &server);
    if (status != RM_OK) return report(status, "starting server");
    std::cerr << "serving " << serve_map << " on http://" << host << ":" << rm_server_port(server) << "\n";
    int received = 0;
    sigwait(&signals, &received);
    rm_server_stop(server);
    return 0;
  }

  if (*search) {
    MapPtr map;
    if (!load_map(search_map, map, exit_code)) return exit_code;
    char* json = nullptr;
    const rm_status status = rm_map_search(map.get(), query.c_str(), &json);
    return print_json(status, json, "searching");
  }

  if (*list) {
    MapPtr map;
    if (!load_map(list_map, map, exit_code)) return exit_code;
    char* json = nullptr;
    const rm_status status = rm_map_sort(map.get(), sort_key.c_str(), &json);
    return print_json(status, json, "sorting");
  }
  return 0;
}
