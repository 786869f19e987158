// Copyright 2026 The roadnet-seq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "roadnet/json_io.hpp"

#include <charconv>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>

namespace roadnet {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& msg, const std::string& where) {
  throw Error(ErrorCode::kParseError, msg, where.empty() ? "/" : where);
}

const json& object_at(const json& j, const std::string& where) {
  if (!j.is_object()) fail("expected an object", where);
  return j;
}

void check_fields(const json& j, std::initializer_list<const char*> allowed, ParseMode mode,
                  const std::string& where) {
  if (mode != ParseMode::kStrict) return;
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) fail("unknown field \"" + key + "\"", where + "/" + key);
  }
}

const json& field(const json& j, const char* name, const std::string& where) {
  const auto it = j.find(name);
  if (it == j.end()) fail(std::string("missing field \"") + name + "\"", where);
  return *it;
}

double number(const json& j, const char* name, const std::string& where) {
  const json& v = field(j, name, where);
  if (!v.is_number()) fail(std::string("field \"") + name + "\" must be a number", where + "/" + name);
  return v.get<double>();
}

std::int64_t integer(const json& j, const char* name, const std::string& where) {
  const json& v = field(j, name, where);
  if (!v.is_number_integer()) {
    fail(std::string("field \"") + name + "\" must be an integer", where + "/" + name);
  }
  return v.get<std::int64_t>();
}

const json& array(const json& j, const char* name, const std::string& where) {
  const json& v = field(j, name, where);
  if (!v.is_array()) fail(std::string("field \"") + name + "\" must be an array", where + "/" + name);
  return v;
}

BevFrame frame_from(const json& root, ParseMode mode) {
  if (!root.contains("frame")) {
    if (mode == ParseMode::kLenient) return {};
    fail("missing field \"frame\"", "/");
  }
  const json& f = object_at(root["frame"], "/frame");
  check_fields(f, {"x_min", "x_max", "y_min", "y_max", "resolution"}, mode, "/frame");
  BevFrame frame{number(f, "x_min", "/frame"), number(f, "x_max", "/frame"),
                 number(f, "y_min", "/frame"), number(f, "y_max", "/frame"),
                 number(f, "resolution", "/frame")};
  if (const auto p = frame.problems(); !p.empty()) fail("invalid frame: " + p.front(), "/frame");
  return frame;
}

json frame_to(const BevFrame& f) {
  return {{"x_min", f.x_min}, {"x_max", f.x_max}, {"y_min", f.y_min}, {"y_max", f.y_max},
          {"resolution", f.resolution}};
}

std::vector<Vertex> vertices_from(const json& root, const char* name, ParseMode mode) {
  std::vector<Vertex> out;
  const std::string base = std::string("/") + name;
  const json& arr = array(root, name, "/");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = base + "/" + std::to_string(i);
    const json& v = object_at(arr[i], where);
    check_fields(v, {"id", "x", "y"}, mode, where);
    out.push_back({VertexId{integer(v, "id", where)}, {number(v, "x", where), number(v, "y", where)}});
  }
  return out;
}

json vertices_to(const std::vector<Vertex>& vs) {
  json arr = json::array();
  for (const Vertex& v : vs) arr.push_back({{"id", v.id.value}, {"x", v.pos.x}, {"y", v.pos.y}});
  return arr;
}

json parse_document(std::string_view text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what(), where + "byte " + std::to_string(e.byte));
  }
}

RoadNetwork graph_from(const json& root, ParseMode mode) {
  object_at(root, "/");
  check_fields(root, {"frame", "vertices", "edges"}, mode, "");
  RoadNetwork net;
  net.frame = frame_from(root, mode);
  net.vertices = vertices_from(root, "vertices", mode);
  const json& arr = array(root, "edges", "/");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "/edges/" + std::to_string(i);
    const json& e = object_at(arr[i], where);
    check_fields(e, {"source", "target", "ctrl_x", "ctrl_y"}, mode, where);
    net.edges.push_back({VertexId{integer(e, "source", where)}, VertexId{integer(e, "target", where)},
                         {number(e, "ctrl_x", where), number(e, "ctrl_y", where)}});
  }
  return net;
}

SdMap sdmap_from(const json& root, ParseMode mode) {
  object_at(root, "/");
  check_fields(root, {"frame", "nodes", "links"}, mode, "");
  SdMap map;
  map.frame = frame_from(root, mode);
  map.nodes = vertices_from(root, "nodes", mode);
  const json& arr = array(root, "links", "/");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "/links/" + std::to_string(i);
    const json& l = object_at(arr[i], where);
    check_fields(l, {"source", "target"}, mode, where);
    map.links.push_back({VertexId{integer(l, "source", where)}, VertexId{integer(l, "target", where)}});
  }
  return map;
}

// One object, an array of objects, or JSON Lines.
template <typename T, typename Fn>
std::vector<T> many_from_text(std::string_view text, Fn&& one) {
  std::vector<T> out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return out;
  if (text[first] == '[') {
    const json doc = parse_document(text, "");
    for (std::size_t i = 0; i < doc.size(); ++i) {
      try {
        out.push_back(one(doc[i]));
      } catch (const Error& e) {
        throw Error(e.code(), e.what(), "item " + std::to_string(i) + ": " + e.location());
      }
    }
    return out;
  }
  // Whole text as one object first (pretty-printed files), then line by line.
  if (json doc = json::parse(text, nullptr, false); !doc.is_discarded()) {
    out.push_back(one(doc));
    return out;
  }
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      const std::string prefix = "line " + std::to_string(line_no) + ": ";
      try {
        out.push_back(one(parse_document(line, "")));
      } catch (const Error& e) {
        throw Error(e.code(), e.what(), prefix + e.location());
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

}  // namespace

std::string graph_to_json(const RoadNetwork& net) {
  json edges = json::array();
  for (const Edge& e : net.edges) {
    edges.push_back({{"source", e.source.value}, {"target", e.target.value}, {"ctrl_x", e.ctrl.x},
                     {"ctrl_y", e.ctrl.y}});
  }
  const json j = {{"frame", frame_to(net.frame)}, {"vertices", vertices_to(net.vertices)}, {"edges", edges}};
  return j.dump();
}

RoadNetwork graph_from_json(std::string_view text, ParseMode mode) {
  return graph_from(parse_document(text, ""), mode);
}

std::vector<RoadNetwork> graphs_from_text(std::string_view text, ParseMode mode) {
  return many_from_text<RoadNetwork>(text, [mode](const json& j) { return graph_from(j, mode); });
}

std::string graphs_to_text(const std::vector<RoadNetwork>& nets) {
  std::string out;
  for (const RoadNetwork& n : nets) out += graph_to_json(n) + "\n";
  return out;
}

std::string sdmap_to_json(const SdMap& map) {
  json links = json::array();
  for (const Link& l : map.links) links.push_back({{"source", l.source.value}, {"target", l.target.value}});
  const json j = {{"frame", frame_to(map.frame)}, {"nodes", vertices_to(map.nodes)}, {"links", links}};
  return j.dump();
}

SdMap sdmap_from_json(std::string_view text, ParseMode mode) {
  return sdmap_from(parse_document(text, ""), mode);
}

std::vector<SdMap> sdmaps_from_text(std::string_view text, ParseMode mode) {
  return many_from_text<SdMap>(text, [mode](const json& j) { return sdmap_from(j, mode); });
}

std::string sdmaps_to_text(const std::vector<SdMap>& maps) {
  std::string out;
  for (const SdMap& m : maps) out += sdmap_to_json(m) + "\n";
  return out;
}

namespace {

json curve_to(const PrCurve& c) {
  json per = json::array();
  for (const ThresholdScore& s : c.per_threshold) {
    per.push_back({{"t", s.threshold}, {"p", s.precision}, {"r", s.recall}, {"f1", s.f1},
                   {"tp", s.counts.tp}, {"fp", s.counts.fp}, {"fn", s.counts.fn}});
  }
  return {{"per_threshold", per},
          {"mean", {{"p", c.mean_precision}, {"r", c.mean_recall}, {"f1", c.mean_f1}}}};
}

}  // namespace

std::string report_to_json(const MetricReport& r, int indent) {
  const json j = {{"landmark", curve_to(r.landmark)},
                  {"reachability", curve_to(r.reachability)},
                  {"counts",
                   {{"samples", r.counts.samples},
                    {"pred_vertices", r.counts.pred_vertices},
                    {"gt_vertices", r.counts.gt_vertices},
                    {"pred_paths", r.counts.pred_paths},
                    {"gt_paths", r.counts.gt_paths}}}};
  return j.dump(indent) + "\n";
}

std::string report_to_csv(const MetricReport& r) {
  std::ostringstream out;
  out << "metric,t,p,r,f1,tp,fp,fn\n";
  auto rows = [&](const char* name, const PrCurve& c) {
    for (const ThresholdScore& s : c.per_threshold) {
      out << name << ',' << json(s.threshold).dump() << ',' << json(s.precision).dump() << ','
          << json(s.recall).dump() << ',' << json(s.f1).dump() << ',' << s.counts.tp << ','
          << s.counts.fp << ',' << s.counts.fn << '\n';
    }
  };
  rows("landmark", r.landmark);
  rows("reachability", r.reachability);
  return out.str();
}

std::string trace_to_jsonl(const DecodeTrace& trace, std::size_t sample) {
  std::string out;
  for (const DecodeStep& s : trace.steps) {
    const json j = {{"sample", sample},
                    {"iteration", s.iteration},
                    {"n_iter", trace.n_iter},
                    {"valid_tokens", trace.valid_tokens},
                    {"masked_count", s.masked.size()},
                    {"predicted", s.predicted},
                    {"accuracy", s.accuracy},
                    {"steps", {{"ar", trace.ar_steps}, {"sar", trace.sar_steps}, {"nar", trace.nar_steps}}},
                    {"masked", s.masked},
                    {"tokens", s.tokens}};
    out += j.dump() + "\n";
  }
  return out;
}

std::string complexity_to_json(const ComplexityReport& r, std::size_t sample) {
  const json j = {{"sample", sample},        {"vertices", r.vertices},   {"edges", r.edges},
                  {"key_points", r.key_points}, {"forest_roots", r.forest_roots},
                  {"n_iter", r.n_iter},      {"alpha", r.alpha},         {"ar_steps", r.ar_steps},
                  {"sar_steps", r.sar_steps}, {"nar_steps", r.nar_steps},
                  {"acceleration", r.acceleration}};
  return j.dump();
}

std::string error_to_json(std::string_view code, std::string_view message, std::string_view location) {
  const json j = {{"code", code}, {"message", message}, {"location", location}};
  return j.dump();
}

std::string error_to_json(const Error& e) {
  return error_to_json(error_code_name(e.code()), e.what(), e.location());
}

BevFrame parse_frame(std::string_view text) {
  std::vector<double> v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string part(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    double d = 0.0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), d);
    if (ec != std::errc() || end != part.data() + part.size() || part.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "frame must be x_min,x_max,y_min,y_max,resolution", "--frame");
    }
    v.push_back(d);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (v.size() != 5) {
    throw Error(ErrorCode::kInvalidArgument, "frame must be x_min,x_max,y_min,y_max,resolution", "--frame");
  }
  const BevFrame f{v[0], v[1], v[2], v[3], v[4]};
  if (const auto p = f.problems(); !p.empty()) throw Error(ErrorCode::kInvalidArgument, "invalid frame: " + p.front(), "--frame");
  return f;
}

}  // namespace roadnet
