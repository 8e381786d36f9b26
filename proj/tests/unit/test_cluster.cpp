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

#include <cmath>
#include <limits>
#include <set>

#include "doctest.h"
#include "readmap/cluster.hpp"
#include "support/fixtures.hpp"

using namespace readmap;

namespace {

Embedding embedding_of(const std::vector<Point2>& pts) {
  Embedding e;
  for (std::size_t i = 0; i < pts.size(); ++i) e.labels.push_back(readmap::testing::doc_name(i));
  e.positions = pts;
  return e;
}

std::vector<Point2> blobs(std::size_t count, std::size_t per, double spread, std::uint64_t seed) {
  std::vector<Point2> pts;
  const auto jitter = readmap::testing::random_points(count * per, seed, spread);
  for (std::size_t c = 0; c < count; ++c) {
    const double angle = 2.0 * M_PI * static_cast<double>(c) / static_cast<double>(count);
    for (std::size_t j = 0; j < per; ++j) {
      const auto& q = jitter[c * per + j];
      pts.push_back({10.0 * std::cos(angle) + q.x, 10.0 * std::sin(angle) + q.y});
    }
  }
  return pts;
}

using Members = std::set<std::size_t>;

// Leaf sets merged at each step, from the library's node numbering.
std::vector<std::pair<Members, Members>> merged_sets(const Dendrogram& dg) {
  const std::size_t n = dg.leaf_count();
  std::vector<Members> node(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) node[i] = {i};
  std::vector<std::pair<Members, Members>> out;
  for (std::size_t t = 0; t < dg.merges.size(); ++t) {
    const auto& a = node.at(dg.merges[t].left);
    const auto& b = node.at(dg.merges[t].right);
    out.emplace_back(a, b);
    node[n + t] = a;
    node[n + t].insert(b.begin(), b.end());
  }
  return out;
}

// Exhaustive Ward: recompute every pairwise increase in within-cluster
// sum of squares from centroids at every step.
std::vector<std::pair<Members, Members>> oracle_ward(const std::vector<Point2>& pts,
                                                     std::vector<double>* costs) {
  std::vector<Members> clusters;
  for (std::size_t i = 0; i < pts.size(); ++i) clusters.push_back({i});
  auto centroid = [&](const Members& m) {
    Point2 c;
    for (auto i : m) {
      c.x += pts[i].x;
      c.y += pts[i].y;
    }
    return Point2{c.x / m.size(), c.y / m.size()};
  };
  std::vector<std::pair<Members, Members>> out;
  while (clusters.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t ba = 0;
    std::size_t bb = 0;
    for (std::size_t a = 0; a < clusters.size(); ++a) {
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        const auto ca = centroid(clusters[a]);
        const auto cb = centroid(clusters[b]);
        const double na = clusters[a].size();
        const double nb = clusters[b].size();
        const double delta = na * nb / (na + nb) * ((ca.x - cb.x) * (ca.x - cb.x) + (ca.y - cb.y) * (ca.y - cb.y));
        if (delta < best) {
          best = delta;
          ba = a;
          bb = b;
        }
      }
    }
    auto first = clusters[ba];
    auto second = clusters[bb];
    if (*second.begin() < *first.begin()) std::swap(first, second);
    out.emplace_back(first, second);
    costs->push_back(best);
    first.insert(second.begin(), second.end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bb));
    clusters[ba] = first;
  }
  return out;
}

std::vector<int> as_ints(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_SUITE("cluster") {
  TEST_CASE("single leaf") {
    const auto dg = ward_cluster(embedding_of({{1, 2}}));
    CHECK(dg.merges.empty());
    const auto a = cut(dg, 1);
    CHECK(a.area_of == std::vector<std::size_t>{0});
  }

  TEST_CASE("coincident pairs merge first at zero cost") {
    const auto dg = ward_cluster(embedding_of({{0, 0}, {0, 0}, {50, 0}, {50, 0}}));
    REQUIRE(dg.merges.size() == 3);
    CHECK(dg.merges[0].cost == 0.0);
    CHECK(dg.merges[1].cost == 0.0);
    CHECK(dg.merges[2].cost > 0.0);
    // Zero-cost tie goes to the smaller label pair.
    CHECK(dg.merges[0].left == 0);
    CHECK(dg.merges[0].right == 1);
    CHECK(dg.merges[2].cost == doctest::Approx(2.0 * 2.0 / 4.0 * 2500.0));
  }

  TEST_CASE("merge sequence equals exhaustive Ward") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto pts = readmap::testing::random_points(10, 100 + seed);
      const auto dg = ward_cluster(embedding_of(pts));
      std::vector<double> costs;
      const auto expected = oracle_ward(pts, &costs);
      const auto actual = merged_sets(dg);
      REQUIRE(actual.size() == expected.size());
      for (std::size_t t = 0; t < actual.size(); ++t) {
        CHECK(actual[t] == expected[t]);
        CHECK(dg.merges[t].cost == doctest::Approx(costs[t]).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("costs are non-decreasing and every node merges once") {
    const auto pts = readmap::testing::random_points(60, 8);
    const auto dg = ward_cluster(embedding_of(pts));
    std::set<std::size_t> used;
    for (std::size_t t = 0; t < dg.merges.size(); ++t) {
      if (t > 0) CHECK(dg.merges[t].cost >= dg.merges[t - 1].cost - 1e-12);
      CHECK(used.insert(dg.merges[t].left).second);
      CHECK(used.insert(dg.merges[t].right).second);
      CHECK(dg.merges[t].left < 60 + t);
      CHECK(dg.merges[t].right < 60 + t);
    }
    CHECK(used.size() == 2 * 60 - 2);
  }

  TEST_CASE("cut extremes") {
    const auto pts = readmap::testing::random_points(7, 4);
    const auto dg = ward_cluster(embedding_of(pts));
    const auto one = cut(dg, 1);
    for (auto a : one.area_of) CHECK(a == 0);
    const auto all = cut(dg, 7);
    CHECK(std::set<std::size_t>(all.area_of.begin(), all.area_of.end()).size() == 7);
    CHECK_THROWS_AS(cut(dg, 0), Error);
    CHECK_THROWS_AS(cut(dg, 8), Error);
  }

  TEST_CASE("two blobs split along membership") {
    const auto pts = blobs(2, 12, 1.0, 3);
    const auto a = cut(ward_cluster(embedding_of(pts)), 2);
    std::vector<int> planted;
    for (std::size_t i = 0; i < pts.size(); ++i) planted.push_back(static_cast<int>(i / 12));
    CHECK(readmap::testing::adjusted_rand_index(as_ints(a.area_of), planted) == 1.0);
    for (std::size_t area = 0; area < 2; ++area) CHECK(!a.members(area).empty());
  }

  TEST_CASE("areas are ordered by readers, then smallest label") {
    const auto pts = blobs(3, 4, 0.5, 5);
    const auto dg = ward_cluster(embedding_of(pts));
    std::vector<std::size_t> readers(12, 1);
    for (std::size_t i = 8; i < 12; ++i) readers[i] = 10;
    const auto a = cut(dg, 3, readers);
    CHECK(a.area_of[8] == 0);
    CHECK(a.area_of[0] == 1);
    CHECK(a.area_of[4] == 2);
    const auto plain = cut(dg, 3);
    CHECK(plain.area_of[0] == 0);
    CHECK(plain.area_of[4] == 1);
    CHECK(plain.area_of[8] == 2);
  }

  TEST_CASE("silhouette picks planted k") {
    {
      const auto pts = blobs(4, 10, 1.0, 11);
      const auto e = embedding_of(pts);
      CHECK(select_k(ward_cluster(e), e, 2, 10) == 4);
    }
    {
      const auto pts = blobs(2, 10, 1.0, 12);
      const auto e = embedding_of(pts);
      CHECK(select_k(ward_cluster(e), e, 2, 5) == 2);
    }
  }

  TEST_CASE("collinear points and silhouette ties") {
    // Equally spaced: k=2 scores 0.4667, k=3 scores 0.125 by hand.
    const auto line = embedding_of({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    const auto dl = ward_cluster(line);
    CHECK(mean_silhouette(line.positions, cut(dl, 2).area_of, 2) == doctest::Approx((0.6 + 1.0 / 3.0) / 2.0));
    CHECK(mean_silhouette(line.positions, cut(dl, 3).area_of, 3) == doctest::Approx(0.125));
    CHECK(select_k(dl, line, 2, 3) == 2);

    // Coincident points score 0 for every k: an exact tie.
    const auto same = embedding_of({{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}});
    CHECK(select_k(ward_cluster(same), same, 2, 4) == 2);
    CHECK(select_k(ward_cluster(same), same, 3, 4) == 3);
  }

  TEST_CASE("silhouette oracle") {
    const auto pts = readmap::testing::random_points(15, 30);
    const auto e = embedding_of(pts);
    const auto a = cut(ward_cluster(e), 4);
    double total = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto own = a.members(a.area_of[i]);
      if (own.size() == 1) continue;
      double in = 0.0;
      for (auto j : own) in += distance(pts[i], pts[j]);
      in /= static_cast<double>(own.size() - 1);
      double out = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < 4; ++c) {
        if (c == a.area_of[i]) continue;
        double sum = 0.0;
        for (auto j : a.members(c)) sum += distance(pts[i], pts[j]);
        out = std::min(out, sum / static_cast<double>(a.members(c).size()));
      }
      total += (out - in) / std::max(in, out);
    }
    CHECK(mean_silhouette(pts, a.area_of, 4) == doctest::Approx(total / 15.0).epsilon(1e-12));
  }

  TEST_CASE("select_k preconditions") {
    const auto e = embedding_of({{0, 0}, {1, 0}});
    CHECK_THROWS_AS(select_k(ward_cluster(e), e, 2, 2), Error);
    const auto f = embedding_of(readmap::testing::random_points(5, 1));
    CHECK_THROWS_AS(select_k(ward_cluster(f), f, 3, 2), Error);
    CHECK_THROWS_AS(select_k(ward_cluster(f), f, 2, 5), Error);
    CHECK(default_k_range(100) == std::pair<std::size_t, std::size_t>{2, 25});
    CHECK(default_k_range(10) == std::pair<std::size_t, std::size_t>{2, 9});
  }
}
