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

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include "readmap/mapio.hpp"

namespace httplib {
class Server;
}

namespace readmap {

struct ServerOptions {
  std::string host = "127.0.0.1";
  /// 0 binds an ephemeral port.
  int port = 8080;
  /// Static viewer bundle mounted at "/" when set.
  std::optional<std::filesystem::path> assets_dir;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// Response bodies shared by the HTTP routes and the C API.
std::string search_response_json(const KnowledgeMap& map, const SearchQuery& query);
std::string list_response_json(const KnowledgeMap& map, SortKey key);

/// Read-only service over one immutable map:
///   GET /map              the map file, byte for byte
///   GET /search?q=...     {"query", "terms", "doc_ids"} per search semantics
///   GET /documents/{id}   full metadata of one document
///   GET /list?sort=key    {"sort", "doc_ids"} ordered by sort_documents
class MapServer {
 public:
  /// Keeps `map_file` verbatim for GET /map. Throws Error(parse) if invalid.
  explicit MapServer(std::string map_file);
  explicit MapServer(const KnowledgeMap& map);
  ~MapServer();

  MapServer(const MapServer&) = delete;
  MapServer& operator=(const MapServer&) = delete;

  /// Routing without sockets. `params` are decoded query parameters.
  HttpResponse handle(std::string_view path,
                      const std::multimap<std::string, std::string>& params) const;

  /// Binds and serves on a background thread; returns the bound port.
  int start(const ServerOptions& options);
  /// Stops listening and joins the worker; safe to call more than once.
  void stop();

  const KnowledgeMap& map() const noexcept { return map_; }

 private:
  std::string map_file_;
  KnowledgeMap map_;
  std::unique_ptr<httplib::Server> server_;
  std::thread worker_;
};

}  // namespace readmap
