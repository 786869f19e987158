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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "roadnet/coupled.hpp"
#include "roadnet/decoupled.hpp"
#include "roadnet/error.hpp"
#include "roadnet/forest.hpp"
#include "roadnet/json_io.hpp"
#include "roadnet/metrics.hpp"
#include "roadnet/nar.hpp"
#include "roadnet/sar.hpp"
#include "roadnet/sdmap.hpp"
#include "roadnet/synth.hpp"

namespace py = pybind11;
using namespace roadnet;

namespace {

OrderingPolicy policy_from(const std::string& name, std::uint64_t seed) { return parse_policy(name, seed); }

py::dict curve_dict(const PrCurve& c) {
  py::list per;
  for (const auto& s : c.per_threshold) {
    py::dict d;
    d["t"] = s.threshold;
    d["p"] = s.precision;
    d["r"] = s.recall;
    d["f1"] = s.f1;
    d["tp"] = s.counts.tp;
    d["fp"] = s.counts.fp;
    d["fn"] = s.counts.fn;
    per.append(d);
  }
  py::dict mean;
  mean["p"] = c.mean_precision;
  mean["r"] = c.mean_recall;
  mean["f1"] = c.mean_f1;
  py::dict out;
  out["per_threshold"] = per;
  out["mean"] = mean;
  return out;
}

std::vector<std::vector<Token>> rows_of(const SarSequence& s) {
  std::vector<std::vector<Token>> rows;
  for (std::size_t r = 0; r < s.layout.rows; ++r) {
    const auto row = s.row(r);
    rows.emplace_back(row.begin(), row.end());
  }
  return rows;
}

SarSequence sar_from_rows(const std::vector<std::vector<Token>>& rows) {
  SarSequence s;
  s.layout.rows = rows.size();
  s.layout.row_length = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != s.layout.row_length) {
      throw Error(ErrorCode::kInvalidArgument, "SAR rows must share one length");
    }
    s.tokens.insert(s.tokens.end(), r.begin(), r.end());
  }
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Road-network sequence codecs, metrics and decoding simulator";

  static py::exception<Error> error_type(m, "RoadnetError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      exc.attr("code") = std::string(error_code_name(e.code()));
      exc.attr("location") = e.location();
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<Point>(m, "Point")
      .def(py::init<double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0)
      .def_readwrite("x", &Point::x)
      .def_readwrite("y", &Point::y)
      .def("__repr__", [](const Point& p) { return "Point(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")"; });

  py::class_<BevFrame>(m, "BevFrame")
      .def(py::init([](double x_min, double x_max, double y_min, double y_max, double res) {
             return BevFrame{x_min, x_max, y_min, y_max, res};
           }),
           py::arg("x_min") = -48.0, py::arg("x_max") = 48.0, py::arg("y_min") = -32.0,
           py::arg("y_max") = 32.0, py::arg("resolution") = 1.0)
      .def_readwrite("x_min", &BevFrame::x_min)
      .def_readwrite("x_max", &BevFrame::x_max)
      .def_readwrite("y_min", &BevFrame::y_min)
      .def_readwrite("y_max", &BevFrame::y_max)
      .def_readwrite("resolution", &BevFrame::resolution);

  py::class_<RoadNetwork>(m, "RoadNetwork")
      .def(py::init<>())
      .def_readwrite("frame", &RoadNetwork::frame)
      .def_property_readonly("num_vertices", [](const RoadNetwork& n) { return n.vertices.size(); })
      .def_property_readonly("num_edges", [](const RoadNetwork& n) { return n.edges.size(); })
      .def("vertices", [](const RoadNetwork& n) {
        std::vector<std::tuple<std::int64_t, double, double>> out;
        for (const auto& v : n.vertices) out.emplace_back(v.id.value, v.pos.x, v.pos.y);
        return out;
      })
      .def("edges", [](const RoadNetwork& n) {
        std::vector<std::tuple<std::int64_t, std::int64_t, double, double>> out;
        for (const auto& e : n.edges) out.emplace_back(e.source.value, e.target.value, e.ctrl.x, e.ctrl.y);
        return out;
      })
      .def("add_vertex", [](RoadNetwork& n, std::int64_t id, double x, double y) {
        n.vertices.push_back({VertexId{id}, {x, y}});
      })
      .def("add_edge", [](RoadNetwork& n, std::int64_t s, std::int64_t t, double cx, double cy) {
        n.edges.push_back({VertexId{s}, VertexId{t}, {cx, cy}});
      })
      .def("to_json", &graph_to_json)
      .def_static("from_json", [](const std::string& text, bool strict) {
        return graph_from_json(text, strict ? ParseMode::kStrict : ParseMode::kLenient);
      }, py::arg("text"), py::arg("strict") = true);

  py::class_<SdMap>(m, "SdMap")
      .def_static("from_json", [](const std::string& text, bool strict) {
        return sdmap_from_json(text, strict ? ParseMode::kStrict : ParseMode::kLenient);
      }, py::arg("text"), py::arg("strict") = true)
      .def("to_json", &sdmap_to_json)
      .def_property_readonly("num_nodes", [](const SdMap& s) { return s.nodes.size(); })
      .def_property_readonly("num_links", [](const SdMap& s) { return s.links.size(); });

  m.def("validate", [](const RoadNetwork& n) {
    std::vector<std::string> out;
    for (const auto& v : validate(n)) out.push_back(v.message);
    return out;
  });
  m.def("key_points", [](const RoadNetwork& n) {
    std::vector<std::int64_t> out;
    for (const auto& id : key_points(n)) out.push_back(id.value);
    return out;
  });
  m.def("enumerate_paths", [](const RoadNetwork& n, std::int64_t s, std::int64_t t, int max_edges) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& p : enumerate_paths(n, VertexId{s}, VertexId{t}, max_edges)) out.push_back(p.edges);
    return out;
  }, py::arg("net"), py::arg("source"), py::arg("target"), py::arg("max_edges") = 5);
  m.def("equivalent", [](const RoadNetwork& a, const RoadNetwork& b, double tol) { return equivalent(a, b, tol); },
        py::arg("a"), py::arg("b"), py::arg("tol"));
  m.def("clone_count", [](const RoadNetwork& n, const std::string& policy, std::uint64_t seed) {
    return to_forest(n, policy_from(policy, seed)).clone_count();
  }, py::arg("net"), py::arg("policy") = "front-right", py::arg("seed") = 0);

  m.def("generate", [](std::uint64_t seed, int max_vertices, double merge_probability, const BevFrame& frame) {
    GenConfig c;
    c.seed = seed;
    c.max_vertices = max_vertices;
    c.merge_probability = merge_probability;
    c.frame = frame;
    return generate(c);
  }, py::arg("seed"), py::arg("max_vertices") = 40, py::arg("merge_probability") = 0.2,
        py::arg("frame") = BevFrame{});
  m.def("perturb", &perturb, py::arg("net"), py::arg("noise"), py::arg("drop_prob"), py::arg("seed"));
  m.def("generate_sdmap", [](std::uint64_t seed, bool strongly_connected) {
    SdGenConfig c;
    c.seed = seed;
    c.strongly_connected = strongly_connected;
    return generate_sdmap(c);
  }, py::arg("seed"), py::arg("strongly_connected") = false);

  m.def("encode_coupled", [](const RoadNetwork& n, const std::string& policy, std::uint64_t seed) {
    return encode_coupled(n, policy_from(policy, seed)).tokens;
  }, py::arg("net"), py::arg("policy") = "front-right", py::arg("seed") = 0);
  m.def("decode_coupled", [](const std::vector<Token>& t, const BevFrame& f) { return decode_coupled(t, f); },
        py::arg("tokens"), py::arg("frame") = BevFrame{});
  m.def("encode_decoupled", [](const RoadNetwork& n, const std::string& policy, std::uint64_t seed) {
    return encode_decoupled(n, policy_from(policy, seed)).tokens;
  }, py::arg("net"), py::arg("policy") = "front-right", py::arg("seed") = 0);
  m.def("decode_decoupled", [](const std::vector<Token>& t, const BevFrame& f) { return decode_decoupled(t, f); },
        py::arg("tokens"), py::arg("frame") = BevFrame{});
  m.def("encode_sar", [](const RoadNetwork& n, const std::string& policy, std::uint64_t seed) {
    const SarEncoding e = encode_sar(n, policy_from(policy, seed));
    std::vector<std::pair<int, int>> kps;
    for (const Cell& c : e.prompt.key_points) kps.emplace_back(c.ix, c.iy);
    return py::make_tuple(rows_of(e.sequence), kps);
  }, py::arg("net"), py::arg("policy") = "front-right", py::arg("seed") = 0);
  m.def("decode_sar", [](const std::vector<std::vector<Token>>& rows, const BevFrame& f) {
    return decode_sar(sar_from_rows(rows), f);
  }, py::arg("rows"), py::arg("frame") = BevFrame{});
  m.def("cyclic_to_dag", [](const SdMap& s) { return cyclic_to_dag(s).network; });
  m.def("encode_sdmap", [](const SdMap& s) { return encode_sdmap(s).tokens; });
  m.def("decode_sdmap", [](const std::vector<Token>& t, const BevFrame& f) { return decode_sdmap(t, f); },
        py::arg("tokens"), py::arg("frame") = BevFrame{});

  m.def("chamfer", [](const std::vector<std::pair<double, double>>& a, const std::vector<std::pair<double, double>>& b) {
    std::vector<Point> pa, pb;
    for (auto [x, y] : a) pa.push_back({x, y});
    for (auto [x, y] : b) pb.push_back({x, y});
    return chamfer(pa, pb);
  });
  m.def("landmark_pr", [](const RoadNetwork& p, const RoadNetwork& g) { return curve_dict(landmark_pr(p, g)); });
  m.def("reachability_pr", [](const RoadNetwork& p, const RoadNetwork& g) {
    return curve_dict(reachability_pr(p, g));
  });
  m.def("evaluate_json", [](const RoadNetwork& p, const RoadNetwork& g) { return report_to_json(evaluate(p, g)); });

  m.def("complexity_report", [](const RoadNetwork& n, std::size_t n_iter, double alpha) {
    const ComplexityReport r = complexity_report(n, n_iter, alpha);
    py::dict d;
    d["edges"] = r.edges;
    d["key_points"] = r.key_points;
    d["forest_roots"] = r.forest_roots;
    d["ar_steps"] = r.ar_steps;
    d["sar_steps"] = r.sar_steps;
    d["nar_steps"] = r.nar_steps;
    d["acceleration"] = r.acceleration;
    return d;
  }, py::arg("net"), py::arg("n_iter") = 3, py::arg("alpha") = 1.0);
  m.def("simulate", [](const RoadNetwork& n, const std::string& predictor, double p, std::size_t n_iter,
                       std::uint64_t seed) {
    const SarEncoding e = encode_sar(n);
    std::unique_ptr<Predictor> pred;
    if (predictor == "oracle") {
      pred = std::make_unique<OraclePredictor>(e.sequence);
    } else if (predictor == "adversarial") {
      pred = std::make_unique<AdversarialPredictor>(e.sequence);
    } else if (predictor == "noisy") {
      pred = std::make_unique<NoisyOraclePredictor>(e.sequence, p, seed);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "predictor must be oracle, adversarial or noisy");
    }
    const DecodeTrace t = iterative_decode(*pred, e.prompt, e.sequence, n_iter);
    std::vector<double> acc;
    for (const auto& s : t.steps) acc.push_back(s.accuracy);
    return acc;
  }, py::arg("net"), py::arg("predictor") = "noisy", py::arg("p") = 0.7, py::arg("n_iter") = 3,
        py::arg("seed") = 0);
}
