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

// roadnet-seq: encode, decode, evaluate and simulate road-network sequences.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "roadnet/coupled.hpp"
#include "roadnet/decoupled.hpp"
#include "roadnet/error.hpp"
#include "roadnet/json_io.hpp"
#include "roadnet/metrics.hpp"
#include "roadnet/nar.hpp"
#include "roadnet/sar.hpp"
#include "roadnet/sdmap.hpp"
#include "roadnet/synth.hpp"
#include "roadnet/token_io.hpp"

namespace {

using namespace roadnet;

struct UsageError : std::runtime_error {
  std::string where;
  UsageError(const std::string& msg, std::string loc) : std::runtime_error(msg), where(std::move(loc)) {}
};

struct Options {
  std::string format = "coupled";
  std::string policy = "front-right";
  std::uint64_t seed = 0;
  std::string frame;
  bool strict = false;
  bool binary = false;
  std::string out;
};

std::string read_file(const std::string& path, bool binary) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open input file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& data, bool binary = false) {
  if (path.empty() || path == "-") {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
  if (!out) throw Error(ErrorCode::kNotFound, "cannot open output file", path);
  out << data;
}

std::size_t worker_count() {
  std::size_t n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ROADNET_SEQ_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw UsageError("ROADNET_SEQ_THREADS must be a positive integer", "ROADNET_SEQ_THREADS");
    }
    n = static_cast<std::size_t>(v);
  }
  return n;
}

// Runs fn(i) for i in [0, n) on a bounded pool. Results keep input order; the
// first failure by index is rethrown.
template <typename T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn) {
  std::vector<std::optional<T>> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(n, 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*results[i]));
  }
  return out;
}

Error at_sample(const Error& e, std::size_t i) {
  return Error(e.code(), e.what(), "sample " + std::to_string(i) + ": " + e.location());
}

template <typename T>
std::vector<T> map_samples(std::size_t n, const std::function<T(std::size_t)>& fn) {
  return parallel_map<T>(n, [&](std::size_t i) -> T {
    try {
      return fn(i);
    } catch (const Error& e) {
      throw at_sample(e, i);
    }
  });
}

BevFrame frame_of(const Options& o) { return o.frame.empty() ? BevFrame{} : parse_frame(o.frame); }

OrderingPolicy policy_of(const Options& o) {
  try {
    return parse_policy(o.policy, o.seed);
  } catch (const Error& e) {
    throw UsageError(e.what(), "--policy");
  }
}

ParseMode mode_of(const Options& o) { return o.strict ? ParseMode::kStrict : ParseMode::kLenient; }

std::vector<RoadNetwork> load_graphs(const std::string& path, const Options& o) {
  try {
    return graphs_from_text(read_file(path, false), mode_of(o));
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), path + ": " + e.location());
  }
}

std::vector<SdMap> load_sdmaps(const std::string& path, const Options& o) {
  try {
    return sdmaps_from_text(read_file(path, false), mode_of(o));
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), path + ": " + e.location());
  }
}

std::vector<TokenSample> load_tokens(const std::string& path, const Options& o) {
  try {
    const std::string data = read_file(path, o.binary);
    return o.binary ? tokens_from_binary(data) : tokens_from_text(data);
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), path + ": " + e.location());
  }
}

std::string dump_tokens(const std::vector<TokenSample>& s, const Options& o) {
  return o.binary ? tokens_to_binary(s) : tokens_to_text(s);
}

TokenSample encode_one(const RoadNetwork& net, const Options& o) {
  const OrderingPolicy policy = policy_of(o);
  if (o.format == "coupled") return {encode_coupled(net, policy).tokens, 0};
  if (o.format == "decoupled") return {encode_decoupled(net, policy).tokens, 0};
  const SarEncoding enc = encode_sar(net, policy);
  return {enc.sequence.tokens, enc.sequence.layout.row_length};
}

RoadNetwork decode_one(const TokenSample& s, const BevFrame& frame, const std::string& format) {
  if (format == "coupled") return decode_coupled(s.tokens, frame);
  if (format == "decoupled") return decode_decoupled(s.tokens, frame);
  if (format == "sdmap") return decode_sdmap(s.tokens, frame);
  SarSequence seq;
  seq.layout.row_length = s.row_length == 0 ? s.tokens.size() : s.row_length;
  seq.layout.rows = seq.layout.row_length == 0 ? 0 : s.tokens.size() / seq.layout.row_length;
  seq.tokens = s.tokens;
  return decode_sar(seq, frame);
}

// ---- subcommands ----------------------------------------------------------

struct GenArgs {
  std::size_t n = 1;
  std::string kind = "road";
  int max_vertices = 40;
  double merge = 0.2;
  double branch = 0.3;
  bool strongly_connected = false;
};

int run_gen(const Options& o, const GenArgs& a) {
  const BevFrame frame = frame_of(o);
  if (a.kind == "sdmap") {
    auto maps = map_samples<SdMap>(a.n, [&](std::size_t i) {
      SdGenConfig c;
      c.seed = derive_seed(o.seed, i);
      c.frame = frame;
      c.strongly_connected = a.strongly_connected;
      return generate_sdmap(c);
    });
    write_output(o.out, sdmaps_to_text(maps));
    return 0;
  }
  auto nets = map_samples<RoadNetwork>(a.n, [&](std::size_t i) {
    GenConfig c;
    c.seed = derive_seed(o.seed, i);
    c.frame = frame;
    c.max_vertices = a.max_vertices;
    c.merge_probability = a.merge;
    c.branch_probability = a.branch;
    return generate(c);
  });
  write_output(o.out, graphs_to_text(nets));
  return 0;
}

int run_encode(const Options& o, const std::string& input) {
  std::vector<TokenSample> samples;
  if (o.format == "sdmap") {
    const auto maps = load_sdmaps(input, o);
    const OrderingPolicy policy = policy_of(o);
    samples = map_samples<TokenSample>(maps.size(), [&](std::size_t i) {
      return TokenSample{encode_sdmap(maps[i], policy).tokens, 0};
    });
  } else {
    const auto nets = load_graphs(input, o);
    samples = map_samples<TokenSample>(nets.size(), [&](std::size_t i) { return encode_one(nets[i], o); });
  }
  write_output(o.out, dump_tokens(samples, o), o.binary);
  return 0;
}

int run_decode(const Options& o, const std::string& input) {
  const BevFrame frame = frame_of(o);
  const auto samples = load_tokens(input, o);
  const auto nets = map_samples<RoadNetwork>(samples.size(), [&](std::size_t i) {
    return decode_one(samples[i], frame, o.format);
  });
  write_output(o.out, graphs_to_text(nets));
  return 0;
}

struct RoundtripResult {
  bool ok = true;
  std::string why;
};

RoundtripResult roundtrip_graph(const RoadNetwork& net, const Options& o) {
  const TokenSample enc = encode_one(net, o);
  const RoadNetwork mem = decode_one(enc, net.frame, o.format);
  // Through the on-disk representation as well.
  const std::string wire = dump_tokens({enc}, o);
  const auto back = o.binary ? tokens_from_binary(wire) : tokens_from_text(wire);
  if (back.size() != 1) return {false, "serialized stream does not hold exactly one sample"};
  const RoadNetwork file = decode_one(back[0], net.frame, o.format);
  if (graph_to_json(mem) != graph_to_json(file)) return {false, "file round trip differs from in-memory decode"};
  std::string why;
  if (!equivalent(net, mem, net.frame.resolution, &why)) return {false, why};
  return {};
}

RoundtripResult roundtrip_sdmap(const SdMap& map, const Options& o) {
  const OrderingPolicy policy = policy_of(o);
  const SdDag dag = cyclic_to_dag(map, policy);
  const SdMapSequence seq = encode_sdmap(map, policy);
  const std::string wire = dump_tokens({{seq.tokens, 0}}, o);
  const auto back = o.binary ? tokens_from_binary(wire) : tokens_from_text(wire);
  const RoadNetwork dec = decode_sdmap(back.at(0).tokens, map.frame);
  std::string why;
  if (!equivalent(dag.network, dec, map.frame.resolution, &why)) return {false, why};
  return {};
}

int run_roundtrip(const Options& o, const std::string& input, std::size_t n) {
  std::vector<RoundtripResult> results;
  std::size_t total = 0;
  if (o.format == "sdmap") {
    std::vector<SdMap> maps;
    if (!input.empty()) maps = load_sdmaps(input, o);
    total = input.empty() ? n : maps.size();
    const BevFrame frame = frame_of(o);
    results = map_samples<RoundtripResult>(total, [&](std::size_t i) {
      if (!input.empty()) return roundtrip_sdmap(maps[i], o);
      SdGenConfig c;
      c.seed = derive_seed(o.seed, i);
      c.frame = frame;
      c.strongly_connected = i % 2 == 1;
      return roundtrip_sdmap(generate_sdmap(c), o);
    });
  } else {
    std::vector<RoadNetwork> nets;
    if (!input.empty()) nets = load_graphs(input, o);
    total = input.empty() ? n : nets.size();
    const BevFrame frame = frame_of(o);
    results = map_samples<RoundtripResult>(total, [&](std::size_t i) {
      if (!input.empty()) return roundtrip_graph(nets[i], o);
      GenConfig c;
      c.seed = derive_seed(o.seed, i);
      c.frame = frame;
      return roundtrip_graph(generate(c), o);
    });
  }
  const auto ok = static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const RoundtripResult& r) { return r.ok; }));
  std::ostringstream out;
  out << ok << "/" << total << " ok\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].ok) {
      out << "first counterexample: sample " << i;
      if (input.empty()) out << " (seed " << derive_seed(o.seed, i) << ")";
      out << ": " << results[i].why << "\n";
      break;
    }
  }
  write_output(o.out, out.str());
  return ok == total ? 0 : 1;
}

int run_eval(const Options& o, const std::string& pred_path, const std::string& gt_path,
             const std::string& csv_path) {
  const auto pred = load_graphs(pred_path, o);
  const auto gt = load_graphs(gt_path, o);
  if (pred.size() != gt.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "prediction file holds " + std::to_string(pred.size()) + " graphs, ground truth holds " +
                    std::to_string(gt.size()),
                pred_path);
  }
  const MetricReport report = evaluate_batch(pred, gt);
  write_output(o.out, report_to_json(report));
  if (!csv_path.empty()) write_output(csv_path, report_to_csv(report));
  return 0;
}

struct SimArgs {
  std::string predictor = "noisy";
  double p = 0.7;
  std::size_t n_iter = 3;
};

int run_simulate(const Options& o, const std::string& input, const SimArgs& a) {
  if (a.predictor != "oracle" && a.predictor != "adversarial" && a.predictor != "noisy") {
    throw UsageError("predictor must be oracle, adversarial or noisy", "--predictor");
  }
  if (a.n_iter < 1) throw UsageError("--n-iter must be at least 1", "--n-iter");
  const auto nets = load_graphs(input, o);
  const OrderingPolicy policy = policy_of(o);
  const auto traces = map_samples<DecodeTrace>(nets.size(), [&](std::size_t i) {
    const SarEncoding enc = encode_sar(nets[i], policy);
    std::unique_ptr<Predictor> pred;
    if (a.predictor == "oracle") {
      pred = std::make_unique<OraclePredictor>(enc.sequence);
    } else if (a.predictor == "adversarial") {
      pred = std::make_unique<AdversarialPredictor>(enc.sequence);
    } else {
      pred = std::make_unique<NoisyOraclePredictor>(enc.sequence, a.p, derive_seed(o.seed, i));
    }
    return iterative_decode(*pred, enc.prompt, enc.sequence, a.n_iter);
  });
  std::string jsonl;
  for (std::size_t i = 0; i < traces.size(); ++i) jsonl += trace_to_jsonl(traces[i], i);
  write_output(o.out, jsonl);
  if (!o.out.empty() && o.out != "-") {
    std::ostringstream table;
    table << "iteration  mean_accuracy  mean_masked\n";
    for (std::size_t k = 0; k <= a.n_iter; ++k) {
      double acc = 0.0, masked = 0.0;
      for (const auto& t : traces) {
        acc += t.steps[k].accuracy;
        masked += static_cast<double>(t.steps[k].masked.size());
      }
      const double n = std::max<double>(1.0, static_cast<double>(traces.size()));
      char line[96];
      std::snprintf(line, sizeof line, "%9zu  %13.6f  %11.2f\n", k, acc / n, masked / n);
      table << line;
    }
    std::cout << table.str();
  }
  return 0;
}

int run_report(const Options& o, const std::string& input, std::size_t n_iter, double alpha) {
  const auto nets = load_graphs(input, o);
  const auto reports = map_samples<ComplexityReport>(nets.size(), [&](std::size_t i) {
    return complexity_report(nets[i], n_iter, alpha);
  });
  std::string out;
  for (std::size_t i = 0; i < reports.size(); ++i) out += complexity_to_json(reports[i], i) + "\n";
  write_output(o.out, out);
  return 0;
}

void emit_error(std::string_view code, std::string_view message, std::string_view location) {
  std::cerr << error_to_json(code, message, location) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Road-network sequence codecs, metrics and decoding simulator", "roadnet-seq"};
  app.require_subcommand(1);
  Options o;
  auto shared = [&o](CLI::App* cmd, bool with_format) {
    if (with_format) {
      cmd->add_option("--format", o.format, "Sequence format")
          ->check(CLI::IsMember({"coupled", "decoupled", "sar", "sdmap"}));
    }
    cmd->add_option("--policy", o.policy, "Ordering policy")->check(CLI::IsMember({"front-right", "random"}));
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_option("--frame", o.frame, "x_min,x_max,y_min,y_max,resolution");
    cmd->add_flag("--strict", o.strict, "Reject unknown JSON fields");
    cmd->add_flag("--binary", o.binary, "Binary token files");
    cmd->add_option("--out", o.out, "Output file (default stdout)");
  };

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate random road networks or SD-Maps");
  shared(gen, false);
  gen->add_option("--n", gen_args.n, "Number of samples");
  gen->add_option("--kind", gen_args.kind, "road or sdmap")->check(CLI::IsMember({"road", "sdmap"}));
  gen->add_option("--max-vertices", gen_args.max_vertices, "Vertex cap")->check(CLI::Range(1, 100));
  gen->add_option("--merge-prob", gen_args.merge, "Merge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--branch-prob", gen_args.branch, "Branch probability")->check(CLI::Range(0.0, 1.0));
  gen->add_flag("--strongly-connected", gen_args.strongly_connected, "SD-Maps threaded by a cycle");

  std::string input, input2, csv;
  auto* enc = app.add_subcommand("encode", "Encode JSON graphs into token files");
  shared(enc, true);
  enc->add_option("input", input, "Input JSON graphs (or SD-Maps)")->required();

  auto* dec = app.add_subcommand("decode", "Decode token files into JSON graphs");
  shared(dec, true);
  dec->add_option("input", input, "Input token file")->required();

  std::size_t rt_n = 100;
  auto* rt = app.add_subcommand("roundtrip", "Check decode(encode(x)) on generated or given samples");
  shared(rt, true);
  rt->add_option("input", input, "Optional input file; generated samples otherwise");
  rt->add_option("--n", rt_n, "Number of generated samples");

  auto* ev = app.add_subcommand("eval", "Landmark and reachability precision-recall");
  shared(ev, false);
  ev->add_option("pred", input, "Predicted graphs")->required();
  ev->add_option("gt", input2, "Ground-truth graphs")->required();
  ev->add_option("--csv", csv, "Also write per-threshold CSV");

  SimArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Iterative non-autoregressive decoding trace");
  shared(sim, false);
  sim->add_option("input", input, "Input JSON graphs")->required();
  sim->add_option("--predictor", sim_args.predictor, "oracle, adversarial or noisy");
  sim->add_option("--p", sim_args.p, "Noisy oracle mean accuracy")->check(CLI::Range(0.0, 1.0));
  sim->add_option("--n-iter", sim_args.n_iter, "Refinement iterations");

  std::size_t rep_iter = 3;
  double alpha = 1.0;
  auto* rep = app.add_subcommand("report", "Decoding step counts per regime");
  shared(rep, false);
  rep->add_option("input", input, "Input JSON graphs")->required();
  rep->add_option("--n-iter", rep_iter, "Refinement iterations");
  rep->add_option("--alpha", alpha, "Parallel acceleration rate")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    emit_error("usage", e.what(), "argv");
    return 2;
  }

  try {
    if (*gen) return run_gen(o, gen_args);
    if (*enc) return run_encode(o, input);
    if (*dec) return run_decode(o, input);
    if (*rt) return run_roundtrip(o, input, rt_n);
    if (*ev) return run_eval(o, input, input2, csv);
    if (*sim) return run_simulate(o, input, sim_args);
    if (*rep) return run_report(o, input, rep_iter, alpha);
  } catch (const UsageError& e) {
    std::cerr << app.help();
    emit_error("usage", e.what(), e.where);
    return 2;
  } catch (const Error& e) {
    std::cerr << error_to_json(e) << "\n";
    return (e.location().rfind("--", 0) == 0) ? 2 : 1;
  } catch (const std::exception& e) {
    emit_error("internal", e.what(), "");
    return 1;
  }
  return 0;
}
