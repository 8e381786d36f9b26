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

#include "httplib.h"
#include "json.hpp"
#include "readmap/labeler.hpp"

namespace readmap {

HttpEnrichmentClient::HttpEnrichmentClient(std::string url, std::chrono::milliseconds timeout)
    : timeout_(timeout) {
  constexpr std::string_view scheme = "http://";
  if (url.rfind(scheme, 0) != 0) {
    throw Error(ErrorCode::invalid_argument, "enrichment url must start with http://");
  }
  const std::size_t path_start = url.find('/', scheme.size());
  if (path_start == std::string::npos) {
    scheme_host_port_ = url;
    path_ = "/";
  } else {
    scheme_host_port_ = url.substr(0, path_start);
    path_ = url.substr(path_start);
  }
  if (scheme_host_port_.size() == scheme.size()) {
    throw Error(ErrorCode::invalid_argument, "enrichment url has no host");
  }
  if (timeout_.count() <= 0) throw Error(ErrorCode::invalid_argument, "enrichment timeout must be positive");
}

std::vector<LabelSuggestion> HttpEnrichmentClient::suggest(const std::vector<std::string>& texts) {
  httplib::Client client(scheme_host_port_);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  const nlohmann::json request = {{"texts", texts}};
  auto response = client.Post(path_, request.dump(), "application/json");
  if (!response) {
    const auto error = response.error();
    if (error == httplib::Error::Read || error == httplib::Error::Write ||
        error == httplib::Error::ConnectionTimeout) {
      throw Error(ErrorCode::timeout, "enrichment request timed out (" + httplib::to_string(error) + ")");
    }
    throw Error(ErrorCode::io, "enrichment request failed: " + httplib::to_string(error));
  }
  if (response->status != 200) {
    throw Error(ErrorCode::io, "enrichment service answered HTTP " + std::to_string(response->status));
  }

  std::vector<LabelSuggestion> out;
  try {
    const auto body = nlohmann::json::parse(response->body);
    for (const auto& item : body.at("labels")) {
      out.push_back({item.at("label").get<std::string>(), item.at("confidence").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed enrichment response: ") + e.what());
  }
  return out;
}

}  // namespace readmap
