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

#include "readmap/server.hpp"

#include "httplib.h"
#include "json.hpp"

namespace readmap {

namespace {

HttpResponse error_response(int status, const std::string& message) {
  return {status, "application/json", nlohmann::ordered_json{{"error", message}}.dump() + "\n"};
}

bool valid_utf8(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t extra = 0;
    if (c < 0x80) {
      extra = 0;
    } else if ((c & 0xE0) == 0xC0 && c >= 0xC2) {
      extra = 1;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
    } else if ((c & 0xF8) == 0xF0 && c <= 0xF4) {
      extra = 3;
    } else {
      return false;
    }
    if (i + extra >= text.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

bool has_control_chars(std::string_view text) {
  for (unsigned char c : text) {
    if (c < 0x20 && c != '\t') return true;
  }
  return false;
}

}  // namespace

std::string search_response_json(const KnowledgeMap& map, const SearchQuery& query) {
  nlohmann::ordered_json body;
  body["query"] = query.raw;
  body["terms"] = query.terms;
  body["doc_ids"] = search(map, query);
  return body.dump(2) + "\n";
}

std::string list_response_json(const KnowledgeMap& map, SortKey key) {
  static constexpr const char* names[] = {"title", "area", "readers"};
  nlohmann::ordered_json body;
  body["sort"] = names[static_cast<int>(key)];
  body["doc_ids"] = sort_documents(map, key);
  return body.dump(2) + "\n";
}

MapServer::MapServer(std::string map_file) : map_file_(std::move(map_file)), map_(parse_map(map_file_)) {}

MapServer::MapServer(const KnowledgeMap& map) : map_file_(serialize_map(map)), map_(map) {}

MapServer::~MapServer() { stop(); }

HttpResponse MapServer::handle(std::string_view path,
                               const std::multimap<std::string, std::string>& params) const {
  if (path == "/map") return {200, "application/json", map_file_};

  if (path == "/search") {
    if (params.count("q") != 1) return error_response(400, "expected exactly one 'q' parameter");
    const auto& raw = params.find("q")->second;
    if (!valid_utf8(raw) || has_control_chars(raw)) return error_response(400, "malformed query");
    return {200, "application/json", search_response_json(map_, SearchQuery::parse(raw))};
  }

  if (path == "/list") {
    auto it = params.find("sort");
    const std::string key = it == params.end() ? "title" : it->second;
    SortKey sort_key;
    try {
      sort_key = parse_sort_key(key);
    } catch (const Error& e) {
      return error_response(400, e.what());
    }
    return {200, "application/json", list_response_json(map_, sort_key)};
  }

  constexpr std::string_view documents_prefix = "/documents/";
  if (path.substr(0, documents_prefix.size()) == documents_prefix) {
    const auto id = path.substr(documents_prefix.size());
    const MapDocument* doc = map_.find_document(id);
    if (doc == nullptr) return error_response(404, "unknown document '" + std::string(id) + "'");
    return {200, "application/json", document_to_json(*doc)};
  }

  return error_response(404, "no route for " + std::string(path));
}

int MapServer::start(const ServerOptions& options) {
  if (server_) throw Error(ErrorCode::invalid_argument, "server already started");
  server_ = std::make_unique<httplib::Server>();

  auto route = [this](const httplib::Request& request, httplib::Response& response) {
    std::multimap<std::string, std::string> params(request.params.begin(), request.params.end());
    auto result = handle(request.path, params);
    response.status = result.status;
    response.set_content(result.body, result.content_type);
  };
  server_->Get("/map", route);
  server_->Get("/search", route);
  server_->Get("/list", route);
  server_->Get(R"(/documents/.+)", route);
  if (options.assets_dir && !server_->set_mount_point("/", options.assets_dir->string())) {
    server_.reset();
    throw Error(ErrorCode::io, "cannot serve assets from " + options.assets_dir->string());
  }

  int port = options.port;
  if (port == 0) {
    port = server_->bind_to_any_port(options.host);
  } else if (!server_->bind_to_port(options.host, port)) {
    port = -1;
  }
  if (port < 0) {
    server_.reset();
    throw Error(ErrorCode::io, "cannot bind " + options.host + ":" + std::to_string(options.port));
  }
  worker_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port;
}

void MapServer::stop() {
  if (server_) server_->stop();
  if (worker_.joinable()) worker_.join();
  server_.reset();
}

}  // namespace readmap
