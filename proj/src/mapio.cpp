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

#include "readmap/mapio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace readmap {

namespace {

using ojson = nlohmann::ordered_json;

std::string lower_ascii(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

ojson point_json(const Point2& p) {
  return ojson{{"x", round_significant(p.x)}, {"y", round_significant(p.y)}};
}

Point2 parse_point(const nlohmann::json& j) { return {j.at("x").get<double>(), j.at("y").get<double>()}; }

template <typename T>
std::optional<T> optional_field(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

ojson provenance_json(const MapProvenance& p) {
  ojson out;
  out["source"] = p.source;
  out["snapshot_date"] = p.snapshot_date ? ojson(*p.snapshot_date) : ojson(nullptr);
  out["threshold"] = p.threshold;
  out["similarity"] = p.similarity;
  out["distance"] = p.distance;
  out["seed"] = p.seed;
  out["k"] = p.k;
  out["k_selection"] = p.k_selection;
  out["tool_version"] = p.tool_version;
  out["stopwords"] = p.stopwords;
  out["area_r_min"] = round_significant(p.area_r_min);
  out["doc_r_min"] = round_significant(p.doc_r_min);
  auto& mds = out["mds"];
  mds["iterations"] = p.mds_iterations;
  mds["final_stress"] = round_significant(p.final_stress);
  auto& trace = mds["stress_trace"] = ojson::array();
  for (double s : p.stress_trace) trace.push_back(round_significant(s));
  return out;
}

MapProvenance parse_provenance(const nlohmann::json& j) {
  MapProvenance p;
  p.source = j.at("source").get<std::string>();
  p.snapshot_date = optional_field<std::string>(j, "snapshot_date");
  p.threshold = j.at("threshold").get<std::size_t>();
  p.similarity = j.at("similarity").get<std::string>();
  p.distance = j.at("distance").get<std::string>();
  p.seed = j.at("seed").get<std::uint64_t>();
  p.k = j.at("k").get<std::size_t>();
  p.k_selection = j.at("k_selection").get<std::string>();
  p.tool_version = j.at("tool_version").get<std::string>();
  p.stopwords = j.at("stopwords").get<std::string>();
  p.area_r_min = j.at("area_r_min").get<double>();
  p.doc_r_min = j.at("doc_r_min").get<double>();
  const auto& mds = j.at("mds");
  p.mds_iterations = mds.at("iterations").get<std::size_t>();
  p.final_stress = mds.at("final_stress").get<double>();
  p.stress_trace = mds.at("stress_trace").get<std::vector<double>>();
  return p;
}

ojson document_json(const MapDocument& d) {
  ojson out;
  out["doc_id"] = d.doc_id;
  out["area_id"] = d.area_id;
  out["position"] = point_json(d.position);
  out["radius"] = round_significant(d.radius);
  out["title"] = d.title;
  out["authors"] = d.authors;
  out["year"] = d.year;
  out["venue"] = d.venue;
  out["pub_type"] = d.pub_type;
  out["readers"] = d.readers;
  if (d.abstract) out["abstract"] = *d.abstract;
  if (d.preview_ref) out["preview_ref"] = *d.preview_ref;
  return out;
}

std::string searchable_text(const MapDocument& doc, const SearchFields& fields) {
  std::string text;
  auto append = [&](std::string_view part) {
    text += lower_ascii(part);
    text += '\n';
  };
  if (fields.title) append(doc.title);
  if (fields.authors) {
    for (const auto& author : doc.authors) append(author);
  }
  if (fields.venue) append(doc.venue);
  if (fields.year) append(std::to_string(doc.year));
  if (fields.abstract && doc.abstract) append(*doc.abstract);
  return text;
}

bool by_readers(const MapDocument* a, const MapDocument* b) {
  if (a->readers != b->readers) return a->readers > b->readers;
  return a->doc_id < b->doc_id;
}

}  // namespace

const MapDocument* KnowledgeMap::find_document(std::string_view doc_id) const {
  auto it = std::lower_bound(documents.begin(), documents.end(), doc_id,
                             [](const MapDocument& d, std::string_view id) { return d.doc_id < id; });
  if (it != documents.end() && it->doc_id == doc_id) return &*it;
  // Maps parsed from foreign files need not be sorted.
  auto linear = std::find_if(documents.begin(), documents.end(),
                             [&](const MapDocument& d) { return d.doc_id == doc_id; });
  return linear == documents.end() ? nullptr : &*linear;
}

double readership_share(std::size_t area_readers, std::size_t total_readers) {
  if (total_readers == 0) throw Error(ErrorCode::domain, "total readership is zero");
  if (area_readers > total_readers) {
    throw Error(ErrorCode::invalid_argument, "area readership exceeds the total");
  }
  const std::size_t tenths = (2000 * area_readers + total_readers) / (2 * total_readers);
  return static_cast<double>(tenths) / 10.0;
}

std::vector<double> readership_shares(std::span<const std::size_t> area_readers) {
  const std::size_t total = std::accumulate(area_readers.begin(), area_readers.end(), std::size_t{0});
  if (total == 0) throw Error(ErrorCode::domain, "total readership is zero");

  std::vector<std::size_t> tenths(area_readers.size());
  std::size_t sum = 0;
  for (std::size_t i = 0; i < area_readers.size(); ++i) {
    tenths[i] = (2000 * area_readers[i] + total) / (2 * total);
    sum += tenths[i];
  }
  if (sum + 2 < 1000 || sum > 1002) {
    std::vector<std::size_t> remainder(area_readers.size());
    sum = 0;
    for (std::size_t i = 0; i < area_readers.size(); ++i) {
      tenths[i] = 1000 * area_readers[i] / total;
      remainder[i] = 1000 * area_readers[i] % total;
      sum += tenths[i];
    }
    std::vector<std::size_t> order(area_readers.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (std::size_t t = 0; sum < 1000; ++t, ++sum) ++tenths[order[t]];
  }
  std::vector<double> out(tenths.size());
  for (std::size_t i = 0; i < tenths.size(); ++i) out[i] = static_cast<double>(tenths[i]) / 10.0;
  return out;
}

double round_significant(double value) {
  if (!std::isfinite(value) || value == 0.0) return value == 0.0 ? 0.0 : value;
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  const double rounded = std::strtod(buffer, nullptr);
  return rounded == 0.0 ? 0.0 : rounded;
}

KnowledgeMap export_map(const Corpus& corpus, const ClusterAssignment& assignment,
                        std::span<const AreaName> names, const MapLayout& layout,
                        MapProvenance provenance) {
  if (corpus.empty()) throw Error(ErrorCode::domain, "cannot export a map of an empty corpus");
  const std::size_t n = corpus.size();
  const std::size_t k = assignment.k;
  if (assignment.area_of.size() != n || layout.documents.size() != n) {
    throw Error(ErrorCode::invalid_argument, "inconsistent doc_id sets between pipeline stages");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& id = corpus.document(i).doc_id;
    if (assignment.labels.at(i) != id || layout.documents[i].doc_id != id) {
      throw Error(ErrorCode::invalid_argument, "inconsistent doc_id sets between pipeline stages");
    }
  }
  if (names.size() != k || layout.areas.size() != k) {
    throw Error(ErrorCode::invalid_argument, "area count differs between pipeline stages");
  }

  KnowledgeMap map;
  map.provenance = std::move(provenance);
  map.provenance.k = k;
  map.canvas = layout.canvas;

  std::vector<std::size_t> area_readers(k, 0);
  std::vector<std::size_t> area_docs(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    area_readers[assignment.area_of[i]] += corpus.reader_count(i);
    ++area_docs[assignment.area_of[i]];
  }
  const std::size_t total = std::accumulate(area_readers.begin(), area_readers.end(), std::size_t{0});
  std::vector<double> shares(k, 0.0);
  if (total > 0) {
    shares = readership_shares(area_readers);
  } else if (k > 0) {
    // No readers at all: split evenly so the column still sums to 100.
    std::vector<std::size_t> ones(k, 1);
    shares = readership_shares(ones);
  }

  for (std::size_t a = 0; a < k; ++a) {
    const auto& geometry = layout.areas[a];
    if (geometry.area_id != a) throw Error(ErrorCode::invalid_argument, "areas out of order");
    auto name = std::find_if(names.begin(), names.end(), [&](const AreaName& nm) { return nm.area_id == a; });
    if (name == names.end()) throw Error(ErrorCode::invalid_argument, "area without a name");
    MapArea area;
    area.area_id = a;
    area.label = name->label;
    area.label_source = std::string(to_string(name->source));
    area.center = {round_significant(geometry.center.x), round_significant(geometry.center.y)};
    area.radius = round_significant(geometry.radius);
    area.combined_readers = area_readers[a];
    area.readership_share_percent = shares[a];
    area.document_count = area_docs[a];
    map.areas.push_back(std::move(area));
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& record = corpus.document(i);
    const auto& geometry = layout.documents[i];
    MapDocument doc;
    doc.doc_id = record.doc_id;
    doc.area_id = assignment.area_of[i];
    doc.position = {round_significant(geometry.position.x), round_significant(geometry.position.y)};
    doc.radius = round_significant(geometry.radius);
    doc.title = record.title;
    doc.authors = record.authors;
    doc.year = record.year;
    doc.venue = record.venue;
    doc.pub_type = std::string(to_string(record.pub_type));
    doc.readers = corpus.reader_count(i);
    doc.abstract = record.abstract;
    doc.preview_ref = record.preview_ref;
    map.documents.push_back(std::move(doc));
  }

  auto& trace = map.provenance.stress_trace;
  for (double& s : trace) s = round_significant(s);
  map.provenance.final_stress = round_significant(map.provenance.final_stress);
  map.provenance.area_r_min = round_significant(map.provenance.area_r_min);
  map.provenance.doc_r_min = round_significant(map.provenance.doc_r_min);
  return map;
}

std::string serialize_map(const KnowledgeMap& map) {
  ojson out;
  out["schema_version"] = map.schema_version;
  out["provenance"] = provenance_json(map.provenance);
  out["canvas"] = {{"width", round_significant(map.canvas.width)},
                   {"height", round_significant(map.canvas.height)}};
  auto& areas = out["areas"] = ojson::array();
  std::vector<const MapArea*> area_order;
  for (const auto& a : map.areas) area_order.push_back(&a);
  std::sort(area_order.begin(), area_order.end(),
            [](const MapArea* a, const MapArea* b) { return a->area_id < b->area_id; });
  for (const MapArea* a : area_order) {
    ojson area;
    area["area_id"] = a->area_id;
    area["label"] = a->label;
    area["label_source"] = a->label_source;
    area["center"] = point_json(a->center);
    area["radius"] = round_significant(a->radius);
    area["combined_readers"] = a->combined_readers;
    area["readership_share_percent"] = a->readership_share_percent;
    area["document_count"] = a->document_count;
    areas.push_back(std::move(area));
  }
  auto& documents = out["documents"] = ojson::array();
  std::vector<const MapDocument*> doc_order;
  for (const auto& d : map.documents) doc_order.push_back(&d);
  std::sort(doc_order.begin(), doc_order.end(),
            [](const MapDocument* a, const MapDocument* b) { return a->doc_id < b->doc_id; });
  for (const MapDocument* d : doc_order) documents.push_back(document_json(*d));
  return out.dump(2) + "\n";
}

KnowledgeMap parse_map(std::string_view text) {
  KnowledgeMap map;
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.contains("schema_version")) throw Error(ErrorCode::parse, "map has no schema_version");
    map.schema_version = j.at("schema_version").get<int>();
    if (map.schema_version != kSchemaVersion) {
      throw Error(ErrorCode::parse, "unsupported map schema_version " + std::to_string(map.schema_version));
    }
    map.provenance = parse_provenance(j.at("provenance"));
    map.canvas = {j.at("canvas").at("width").get<double>(), j.at("canvas").at("height").get<double>()};
    for (const auto& a : j.at("areas")) {
      MapArea area;
      area.area_id = a.at("area_id").get<std::size_t>();
      area.label = a.at("label").get<std::string>();
      area.label_source = a.at("label_source").get<std::string>();
      area.center = parse_point(a.at("center"));
      area.radius = a.at("radius").get<double>();
      area.combined_readers = a.at("combined_readers").get<std::size_t>();
      area.readership_share_percent = a.at("readership_share_percent").get<double>();
      area.document_count = a.at("document_count").get<std::size_t>();
      map.areas.push_back(std::move(area));
    }
    for (const auto& d : j.at("documents")) {
      MapDocument doc;
      doc.doc_id = d.at("doc_id").get<std::string>();
      doc.area_id = d.at("area_id").get<std::size_t>();
      doc.position = parse_point(d.at("position"));
      doc.radius = d.at("radius").get<double>();
      doc.title = d.at("title").get<std::string>();
      doc.authors = d.at("authors").get<std::vector<std::string>>();
      doc.year = d.at("year").get<int>();
      doc.venue = d.at("venue").get<std::string>();
      doc.pub_type = d.at("pub_type").get<std::string>();
      doc.readers = d.at("readers").get<std::size_t>();
      doc.abstract = optional_field<std::string>(d, "abstract");
      doc.preview_ref = optional_field<std::string>(d, "preview_ref");
      map.documents.push_back(std::move(doc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed map: ") + e.what());
  }
  for (const auto& doc : map.documents) {
    const bool known = std::any_of(map.areas.begin(), map.areas.end(),
                                   [&](const MapArea& a) { return a.area_id == doc.area_id; });
    if (!known) throw Error(ErrorCode::parse, "document '" + doc.doc_id + "' names an unknown area");
  }
  return map;
}

KnowledgeMap load_map_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_map(buffer.str());
}

void save_map_file(const KnowledgeMap& map, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out << serialize_map(map);
  if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

std::string document_to_json(const MapDocument& doc) { return document_json(doc).dump(2) + "\n"; }

SearchQuery SearchQuery::parse(std::string_view text) {
  SearchQuery query;
  query.raw = std::string(text);
  std::istringstream in{lower_ascii(text)};
  std::string term;
  while (in >> term) query.terms.push_back(term);
  return query;
}

std::vector<std::string> search(const KnowledgeMap& map, const SearchQuery& query,
                                const SearchFields& fields) {
  std::vector<const MapDocument*> hits;
  for (const auto& doc : map.documents) {
    const auto text = searchable_text(doc, fields);
    const bool all = std::all_of(query.terms.begin(), query.terms.end(), [&](const std::string& term) {
      return text.find(lower_ascii(term)) != std::string::npos;
    });
    if (all) hits.push_back(&doc);
  }
  std::sort(hits.begin(), hits.end(), by_readers);
  std::vector<std::string> out;
  out.reserve(hits.size());
  for (const auto* doc : hits) out.push_back(doc->doc_id);
  return out;
}

SortKey parse_sort_key(std::string_view text) {
  if (text == "title") return SortKey::title;
  if (text == "area") return SortKey::area;
  if (text == "readers") return SortKey::readers;
  throw Error(ErrorCode::invalid_argument, "unknown sort key '" + std::string(text) + "'");
}

std::vector<std::string> sort_documents(const KnowledgeMap& map, SortKey key) {
  std::vector<const MapDocument*> docs;
  for (const auto& doc : map.documents) docs.push_back(&doc);
  std::sort(docs.begin(), docs.end(),
            [](const MapDocument* a, const MapDocument* b) { return a->doc_id < b->doc_id; });
  switch (key) {
    case SortKey::title:
      std::stable_sort(docs.begin(), docs.end(), [](const MapDocument* a, const MapDocument* b) {
        return lower_ascii(a->title) < lower_ascii(b->title);
      });
      break;
    case SortKey::area:
      std::stable_sort(docs.begin(), docs.end(), [](const MapDocument* a, const MapDocument* b) {
        if (a->area_id != b->area_id) return a->area_id < b->area_id;
        return a->readers > b->readers;
      });
      break;
    case SortKey::readers:
      std::stable_sort(docs.begin(), docs.end(), by_readers);
      break;
  }
  std::vector<std::string> out;
  out.reserve(docs.size());
  for (const auto* doc : docs) out.push_back(doc->doc_id);
  return out;
}

}  // namespace readmap
