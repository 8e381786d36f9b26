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

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "readmap/server.hpp"
#include "support/maps.hpp"

using namespace readmap;

namespace {

const std::string& fixture_file() {
  static const std::string text = serialize_map(readmap::testing::fixture_build().map);
  return text;
}

using Params = std::multimap<std::string, std::string>;

}  // namespace

TEST_SUITE("server") {
  TEST_CASE("map passthrough") {
    const MapServer server(fixture_file());
    const auto r = server.handle("/map", {});
    CHECK(r.status == 200);
    CHECK(r.body == fixture_file());
  }

  TEST_CASE("search route") {
    const MapServer server(fixture_file());
    auto r = server.handle("/search", Params{{"q", ""}});
    REQUIRE(r.status == 200);
    auto body = nlohmann::json::parse(r.body);
    CHECK(body["doc_ids"].size() == server.map().documents.size());
    CHECK(body["terms"].empty());

    r = server.handle("/search", Params{{"q", "Game PLAY"}});
    body = nlohmann::json::parse(r.body);
    CHECK(body["query"] == "Game PLAY");
    CHECK(body["terms"] == nlohmann::json::array({"game", "play"}));
    CHECK(body["doc_ids"].get<std::vector<std::string>>() ==
          search(server.map(), SearchQuery::parse("game play")));

    CHECK(server.handle("/search", {}).status == 400);
    CHECK(server.handle("/search", Params{{"q", "a"}, {"q", "b"}}).status == 400);
    CHECK(server.handle("/search", Params{{"q", std::string("\xff\xfe")}}).status == 400);
    CHECK(server.handle("/search", Params{{"q", std::string("a\x01")}}).status == 400);
    CHECK(server.handle("/search", Params{{"q", "caf\xc3\xa9"}}).status == 200);
  }

  TEST_CASE("document route") {
    const MapServer server(fixture_file());
    const auto& first = server.map().documents.front();
    const auto r = server.handle("/documents/" + first.doc_id, {});
    CHECK(r.status == 200);
    const auto body = nlohmann::json::parse(r.body);
    CHECK(body["doc_id"] == first.doc_id);
    CHECK(body["title"] == first.title);
    CHECK(body["readers"] == first.readers);
    CHECK(server.handle("/documents/unknown", {}).status == 404);
    CHECK(server.handle("/nowhere", {}).status == 404);
  }

  TEST_CASE("list route") {
    const MapServer server(fixture_file());
    auto r = server.handle("/list", Params{{"sort", "readers"}});
    CHECK(r.status == 200);
    CHECK(nlohmann::json::parse(r.body)["doc_ids"].get<std::vector<std::string>>() ==
          sort_documents(server.map(), SortKey::readers));
    r = server.handle("/list", {});
    CHECK(nlohmann::json::parse(r.body)["sort"] == "title");
    CHECK(server.handle("/list", Params{{"sort", "colour"}}).status == 400);
  }

  TEST_CASE("invalid map file") {
    CHECK_THROWS_AS(MapServer("not a map"), Error);
  }

  TEST_CASE("live server") {
    const auto assets = std::filesystem::temp_directory_path() / "readmap_assets_test";
    std::filesystem::create_directories(assets);
    {
      std::ofstream(assets / "index.html") << "<html>viewer</html>";
    }
    MapServer server(fixture_file());
    ServerOptions options;
    options.port = 0;
    options.assets_dir = assets;
    const int port = server.start(options);
    REQUIRE(port > 0);

    httplib::Client client("127.0.0.1", port);
    auto res = client.Get("/map");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->body == fixture_file());

    res = client.Get("/search?q=mobile%20devices");
    REQUIRE(res);
    CHECK(nlohmann::json::parse(res->body)["terms"].size() == 2);

    const auto& id = server.map().documents.back().doc_id;
    res = client.Get("/documents/" + id);
    REQUIRE(res);
    CHECK(res->status == 200);
    res = client.Get("/documents/missing");
    REQUIRE(res);
    CHECK(res->status == 404);

    res = client.Get("/index.html");
    REQUIRE(res);
    CHECK(res->body == "<html>viewer</html>");

    server.stop();
    server.stop();
    CHECK_FALSE(client.Get("/map"));
    std::filesystem::remove_all(assets);
  }
}
