#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "lembed/pipeline.hpp"
#include "lembed/report.hpp"
#include "lembed/sampler.hpp"
#include "lembed/verify.hpp"

using namespace lembed;
using report::json;

namespace {

enum Exit { kYes = 0, kNo = 1, kUnknown = 2, kInputError = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string spec;
  std::string embedding;
  std::string out;
  int depth = 32;
  long grid = 200;
  std::size_t n = 100;
  std::uint64_t seed = 0;
  bool two_valued = false;
  bool json = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

struct Loaded {
  StepGraphon graphon;
  std::string digest;
};

Loaded load(const Options& o, json& rep) {
  const std::string text = read_file(o.spec);
  rep["inputDigest"] = report::sha256_hex(text);
  StepGraphon g = [&] {
    try {
      return parse_spec(text);
    } catch (const ParseError& e) {
      throw InputError(o.spec + ": " + e.what());
    }
  }();
  auto v = validate(g);
  rep["validation"] = report::to_json(v);
  if (!v.ok) {
    std::string msg = o.spec + ": invalid graphon";
    for (const auto& x : v.violations) msg += "\n  " + x.message;
    throw InputError(msg);
  }
  return {std::move(g), rep["inputDigest"]};
}

std::string status_name(Status s) {
  switch (s) {
    case Status::Feasible: return "feasible";
    case Status::Infeasible: return "infeasible";
    case Status::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

int exit_for(Status s) { return s == Status::Feasible ? kYes : (s == Status::Infeasible ? kNo : kUnknown); }

std::string join(std::span<const Rational> xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x.str();
  return s;
}

void describe_sets(const ConstrainedSets& s, std::ostream& os) {
  os << "depth " << s.depth_reached << "/" << s.max_depth << (s.complete ? ", complete" : ", truncated")
     << ", relation " << to_string(s.relation) << (s.exception_flag ? ", exception case" : "") << "\n";
  for (auto seed : {Seed::Zero, Seed::One}) {
    os << (seed == Seed::Zero ? "P" : "Q") << " (" << s.points(seed).size() << "):";
    std::size_t shown = 0;
    for (const auto& [x, rec] : s.points(seed)) {
      if (++shown > 24) {
        os << " ...";
        break;
      }
      os << " " << x;
    }
    os << "\n";
  }
}

void record_run(json& rep, const Options& o, const PipelineResult& r) {
  rep["depth"] = o.depth;
  rep["complete"] = r.sets.complete;
  rep["relation"] = to_string(r.sets.relation);
  rep["exceptionFlag"] = r.sets.exception_flag;
  rep["constrainedSets"] = report::to_json(r.sets);
  rep["constraints"] = report::to_json(r.decision.system);
  rep["outcome"] = report::to_json(r.decision.outcome);
  if (!r.note.empty()) rep["note"] = r.note;
  rep["status"] = status_name(r.status());
}

void describe_outcome(const PipelineResult& r, std::ostream& os) {
  describe_sets(r.sets, os);
  const auto& out = r.decision.outcome;
  os << to_string(r.status()) << " (" << to_string(out.tier) << " tier)\n";
  if (out.witness_d) os << "  d = (" << join(*out.witness_d) << ")";
  if (out.witness_a) os << ", a = " << *out.witness_a;
  if (out.witness_d) os << "\n";
  if (!out.certificate.empty()) {
    const auto all = r.decision.system.combined();
    os << "  certificate:\n";
    for (const auto& e : out.certificate) {
      const auto& c = all.at(e.constraint);
      os << "    " << e.multiplier << " x [" << to_string(c.origin) << "] " << report::format(c) << "\n";
    }
  }
  if (!r.note.empty()) os << "  " << r.note << "\n";
}

int emit(const Options& o, const json& rep, const std::string& human, bool report_to_out, int code) {
  const std::string text = rep.dump(2) + "\n";
  if (report_to_out && !o.out.empty()) write_text(o.out, text);
  if (report_to_out && o.out == "-") return code;
  if (o.json) std::cout << text;
  else std::cout << human;
  return code;
}

int cmd_validate(const Options& o) {
  json rep = {{"command", "validate"}};
  try {
    Loaded in = load(o, rep);
    rep["status"] = "valid";
    std::ostringstream os;
    os << "valid: " << in.graphon.levels() << " levels, epsilon " << rep["validation"]["epsilon"].get<std::string>()
       << "\n";
    return emit(o, rep, os.str(), true, kYes);
  } catch (const InputError& e) {
    if (!rep.contains("inputDigest")) throw;
    rep["status"] = "invalid";
    if (!rep.contains("validation")) rep["error"] = e.what();
    std::cerr << "error: " << e.what() << "\n";
    return emit(o, rep, "", true, kInputError);
  }
}

int cmd_check(const Options& o) {
  json rep = {{"command", "check"}};
  Loaded in = load(o, rep);
  auto r = run_pipeline(in.graphon, o.depth, false);
  record_run(rep, o, r);
  std::ostringstream os;
  describe_outcome(r, os);
  return emit(o, rep, os.str(), true, exit_for(r.status()));
}

int cmd_embed(const Options& o) {
  json rep = {{"command", "embed"}};
  Loaded in = load(o, rep);
  std::optional<Embedding> e;
  Status status;
  std::ostringstream os;
  if (o.two_valued) {
    if (in.graphon.levels() != 2) throw InputError("--two-valued needs a graphon with exactly two values");
    e = two_valued_pi(in.graphon);
    status = Status::Feasible;
    rep["status"] = "feasible";
    os << "FEASIBLE (two-valued construction)\n";
  } else {
    auto r = run_pipeline(in.graphon, o.depth, true);
    record_run(rep, o, r);
    describe_outcome(r, os);
    e = r.embedding;
    status = r.status();
  }
  if (e) {
    rep["embedding"] = report::to_json(*e);
    os << "  pi1 = " << e->pi1 << ", " << e->breakpoints.size() << " breakpoints" << (e->approximate ? " (approximate)" : "")
       << "\n";
  }
  // -o names the embedding file here.
  if (e && !o.out.empty()) {
    write_text(o.out, report::to_json(*e).dump(2) + "\n");
    if (o.out == "-") return exit_for(status);
  }
  return emit(o, rep, os.str(), false, exit_for(status));
}

int cmd_verify(const Options& o) {
  json rep = {{"command", "verify"}};
  Loaded in = load(o, rep);
  if (o.embedding.empty()) throw InputError("verify needs --embedding");
  Embedding e = [&] {
    try {
      return report::embedding_from_json(json::parse(read_file(o.embedding)));
    } catch (const json::exception& ex) {
      throw InputError(o.embedding + ": " + ex.what());
    } catch (const std::invalid_argument& ex) {
      throw InputError(o.embedding + ": " + ex.what());
    }
  }();
  if (e.thresholds.size() != in.graphon.boundary_count())
    throw InputError("embedding has " + std::to_string(e.thresholds.size()) + " thresholds, graphon needs " +
                     std::to_string(in.graphon.boundary_count()));
  if (o.grid < 2) throw InputError("--grid must be at least 2");
  auto v = verify_grid(in.graphon, e, o.grid);
  rep["grid"] = o.grid;
  rep["verification"] = report::to_json(v);
  const bool ok = v.mismatch_count == 0;
  rep["status"] = ok ? "verified" : "mismatched";
  std::ostringstream os;
  os << (ok ? "verified" : "mismatched") << ": " << v.mismatch_count << " of " << v.pairs_checked
     << " grid pairs disagree (M = " << o.grid << ")\n";
  for (const auto& m : v.mismatches)
    os << "  (" << m.x << ", " << m.y << "): w level " << m.w_level << ", pi level " << m.pi_level << "\n";
  return emit(o, rep, os.str(), true, ok ? kYes : kNo);
}

int cmd_points(const Options& o) {
  json rep = {{"command", "points"}};
  Loaded in = load(o, rep);
  auto sets = generate(in.graphon, o.depth);
  rep["depth"] = o.depth;
  rep["complete"] = sets.complete;
  rep["relation"] = to_string(sets.relation);
  rep["exceptionFlag"] = sets.exception_flag;
  rep["constrainedSets"] = report::to_json(sets);
  rep["status"] = "valid";
  std::ostringstream os;
  describe_sets(sets, os);
  return emit(o, rep, os.str(), true, kYes);
}

int cmd_sample(const Options& o) {
  json rep = {{"command", "sample"}};
  Loaded in = load(o, rep);
  if (o.n < 1) throw InputError("--n must be at least 1");
  SampledGraph graph = [&] {
    if (o.embedding.empty()) return sample_w_graph(in.graphon, o.n, o.seed);
    Embedding e = report::embedding_from_json(json::parse(read_file(o.embedding)));
    if (e.thresholds.size() != in.graphon.boundary_count()) throw InputError("embedding threshold count mismatch");
    return sample_geometric(in.graphon, e, o.n, o.seed);
  }();
  auto stats = graph_stats(graph);
  rep["n"] = o.n;
  rep["seed"] = o.seed;
  rep["process"] = o.embedding.empty() ? "graphon" : "geometric";
  rep["stats"] = report::to_json(stats);
  rep["edges"] = graph.edge_count();
  rep["status"] = "valid";
  // -o names the edge list here.
  if (!o.out.empty()) {
    std::ostringstream edges;
    write_edge_list(graph, edges);
    write_text(o.out, edges.str());
    if (o.out == "-") return kYes;
  }
  std::ostringstream os;
  os << "n = " << o.n << ", seed = " << o.seed << ", edges = " << graph.edge_count() << ", edge density "
     << stats.edge_density;
  if (stats.triangle_density) os << ", triangle density " << *stats.triangle_density;
  os << "\n";
  return emit(o, rep, os.str(), false, kYes);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide and build uniform linear embeddings of step graphons"};
  app.require_subcommand(1);
  Options o;

  auto add = [&](const std::string& name, const std::string& desc) {
    auto* sc = app.add_subcommand(name, desc);
    sc->add_option("spec", o.spec, "graphon spec file")->required();
    sc->add_flag("--json", o.json, "print the JSON report");
    return sc;
  };
  auto* validate_cmd = add("validate", "parse and validate a spec");
  validate_cmd->add_option("-o", o.out, "report file ('-' for stdout)");
  auto* check_cmd = add("check", "decide whether an embedding exists");
  check_cmd->add_option("--depth", o.depth, "generation depth")->capture_default_str();
  check_cmd->add_option("-o", o.out, "report file ('-' for stdout)");
  auto* embed_cmd = add("embed", "construct an embedding");
  embed_cmd->add_option("--depth", o.depth, "generation depth")->capture_default_str();
  embed_cmd->add_flag("--two-valued", o.two_valued, "use the direct two-valued construction");
  embed_cmd->add_option("-o", o.out, "embedding file ('-' for stdout)");
  auto* verify_cmd = add("verify", "check an embedding on a grid");
  verify_cmd->add_option("--embedding", o.embedding, "embedding JSON")->required();
  verify_cmd->add_option("--grid", o.grid, "grid resolution M")->capture_default_str();
  verify_cmd->add_option("-o", o.out, "report file ('-' for stdout)");
  auto* points_cmd = add("points", "list constrained points");
  points_cmd->add_option("--depth", o.depth, "generation depth")->capture_default_str();
  points_cmd->add_option("-o", o.out, "report file ('-' for stdout)");
  auto* sample_cmd = add("sample", "sample a random graph");
  sample_cmd->add_option("--n", o.n, "vertex count")->capture_default_str();
  sample_cmd->add_option("--seed", o.seed, "generator seed")->capture_default_str();
  sample_cmd->add_option("--embedding", o.embedding, "sample the geometric process of this embedding");
  sample_cmd->add_option("-o", o.out, "edge list file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*validate_cmd) return cmd_validate(o);
    if (*check_cmd) return cmd_check(o);
    if (*embed_cmd) return cmd_embed(o);
    if (*verify_cmd) return cmd_verify(o);
    if (*points_cmd) return cmd_points(o);
    if (*sample_cmd) return cmd_sample(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kUnknown;
  }
  return kInputError;
}
