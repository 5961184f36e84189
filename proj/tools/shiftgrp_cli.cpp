// Batch command-line front end. Every command builds a Report plus named text
// artifacts; exit codes are 0 pass, 1 fail, 2 inconclusive, 3 usage or input
// error.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "shiftgrp/codes.hpp"
#include "shiftgrp/constructions.hpp"
#include "shiftgrp/errors.hpp"
#include "shiftgrp/invariants.hpp"
#include "shiftgrp/lpa.hpp"
#include "shiftgrp/table.hpp"

using namespace shiftgrp;

namespace {

constexpr int kExitUsage = 3;

struct CommandResult {
  Report report;
  std::vector<std::pair<std::string, std::string>> artifacts;
};

// Thrown for unreadable files so they map to the usage exit code.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

std::size_t default_depth() {
  if (const char* env = std::getenv("SHIFTGRP_DEPTH")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 4;
}

std::string join_ids(const Graph& g, const std::vector<Vertex>& vs) {
  std::string out;
  for (auto v : vs) out += (out.empty() ? "" : ",") + g.vertex_id(v);
  return out.empty() ? "-" : out;
}

std::string matrix_text(const CountMatrix& a) {
  std::string out;
  for (std::size_t i = 0; i < a.n; ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < a.n; ++j) out += (j ? " " : "") + std::to_string(a.at(i, j));
  }
  return out;
}

std::string images_text(const Graph& e, const Graph& f, const GeneratorImages& images) {
  std::string out;
  for (Vertex v = 0; v < e.vertex_count(); ++v)
    out += "p(" + e.vertex_id(v) + ") -> " + to_string(f, images.vertex[v]) + "\n";
  for (Edge x = 0; x < e.edge_count(); ++x)
    out += "s(" + e.edge_id(x) + ") -> " + to_string(f, images.edge[x]) + "\n";
  return out;
}

void describe_graph(const Graph& g, const std::string& prefix, Report& r) {
  auto& p = r.parameters;
  p[prefix + "vertices"] = std::to_string(g.vertex_count());
  p[prefix + "edges"] = std::to_string(g.edge_count());
  auto cls = g.classify();
  p[prefix + "singular"] = join_ids(g, cls.singular);
  std::vector<Vertex> sinks;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) sinks.push_back(v);
  }
  p[prefix + "sinks"] = join_ids(g, sinks);
  p[prefix + "has_sources"] = g.has_sources() ? "yes" : "no";
  p[prefix + "condition_L"] = has_condition_L(g) ? "yes" : "no";
  p[prefix + "adjacency"] = matrix_text(g.adjacency());
}

std::vector<std::int64_t> periodic_counts(const Graph& g, std::size_t up_to) {
  std::vector<std::int64_t> out;
  for (std::size_t p = 1; p <= up_to; ++p) out.push_back(periodic_count(g, p));
  return out;
}

std::string counts_text(const std::vector<std::int64_t>& c) {
  std::string out;
  for (auto x : c) out += (out.empty() ? "" : " ") + std::to_string(x);
  return out;
}

nlohmann::json to_json(const std::string& command, const CommandResult& o) {
  nlohmann::json j;
  j["command"] = command;
  j["title"] = o.report.title;
  j["parameters"] = o.report.parameters;
  j["overall"] = to_string(o.report.overall());
  auto& verdicts = j["verdicts"] = nlohmann::json::array();
  for (auto const& v : o.report.verdicts)
    verdicts.push_back(
        {{"name", v.name}, {"outcome", to_string(v.outcome)}, {"witness", v.witness}, {"detail", v.detail}});
  j["artifacts"] = nlohmann::json::object();
  for (auto const& [name, text] : o.artifacts) j["artifacts"][name] = text;
  return j;
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Pass: return 0;
    case Outcome::Fail: return 1;
    case Outcome::Inconclusive: return 2;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conjugacies of edge shifts and isomorphisms of graph groupoids"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Print a machine-readable report instead of text");

  std::function<CommandResult()> action;
  std::size_t depth = default_depth();
  std::size_t period = 6;
  std::size_t cap = 8;
  std::vector<std::string> weights{"1", "1"};
  std::string output, inverse_output, inverse_table;
  std::string e_file, f_file, a_file, b_file;

  auto depth_option = [&](CLI::App* c) {
    c->add_option("--depth", depth, "Sample depth (default $SHIFTGRP_DEPTH or 4)")->check(CLI::PositiveNumber);
  };

  // graph
  auto* graph = app.add_subcommand("graph", "Inspect or build graphs")->require_subcommand(1);
  auto* info = graph->add_subcommand("info", "Summarize a graph file");
  info->add_option("graph", e_file)->required();
  info->callback([&] {
    action = [&] {
      CommandResult o;
      o.report.title = "graph info";
      auto g = load_graph(e_file);
      describe_graph(g, "", o.report);
      o.report.parameters["periodic_counts"] = counts_text(periodic_counts(g, 6));
      o.report.parameters["bowen_franks"] = to_string(bowen_franks(g));
      return o;
    };
  });
  auto* from_matrix = graph->add_subcommand("from-matrix", "Build a graph from a 0/1 matrix file");
  from_matrix->add_option("matrix", e_file)->required();
  from_matrix->add_option("-o,--output", output, "Write the graph here");
  from_matrix->callback([&] {
    action = [&] {
      CommandResult o;
      o.report.title = "graph from matrix";
      std::vector<std::string> warnings;
      auto g = graph_from_matrix(parse_matrix(read_file(e_file)), &warnings);
      std::string joined;
      for (auto const& w : warnings) joined += (joined.empty() ? "" : "; ") + w;
      o.report.parameters["warnings"] = joined.empty() ? "-" : joined;
      o.artifacts.push_back({"graph", format_graph(g)});
      return o;
    };
  });

  // check
  auto* check = app.add_subcommand("check", "Check conjugacy data")->require_subcommand(1);
  auto* conj = check->add_subcommand("conj", "Check a two-sided conjugacy pair of block codes");
  conj->add_option("E", e_file)->required();
  conj->add_option("F", f_file)->required();
  conj->add_option("code", a_file)->required();
  conj->add_option("codeinv", b_file)->required();
  conj->add_option("--period", period, "Largest period checked")->check(CLI::PositiveNumber);
  conj->callback([&] {
    action = [&] {
      auto e = load_graph(e_file), f = load_graph(f_file);
      auto c = parse_block_code(e, f, read_file(a_file));
      auto cinv = parse_block_code(f, e, read_file(b_file));
      return CommandResult{check_two_sided_conjugacy(c, cinv, period), {}};
    };
  });
  auto* eventual = check->add_subcommand("eventual", "Check an eventual-conjugacy candidate");
  eventual->add_option("E", e_file)->required();
  eventual->add_option("F", f_file)->required();
  eventual->add_option("candidate", a_file)->required();
  depth_option(eventual);
  eventual->callback([&] {
    action = [&] {
      auto e = load_graph(e_file), f = load_graph(f_file);
      return CommandResult{check_eventual_conjugacy(parse_candidate(e, f, read_file(a_file)), depth), {}};
    };
  });

  // build
  auto* build = app.add_subcommand("build", "Build groupoid tables from conjugacies")->require_subcommand(1);
  auto* iso = build->add_subcommand("iso-from-eventual", "Table of the groupoid isomorphism of a candidate");
  iso->add_option("E", e_file)->required();
  iso->add_option("F", f_file)->required();
  iso->add_option("candidate", a_file)->required();
  iso->add_option("-o,--output", output, "Write the table here");
  iso->add_option("--inverse-output", inverse_output, "Write the inverse table here");
  depth_option(iso);
  iso->callback([&] {
    action = [&] {
      auto e = load_graph(e_file), f = load_graph(f_file);
      auto t = iso_from_eventual_conjugacy(parse_candidate(e, f, read_file(a_file)), depth);
      CommandResult o;
      o.report.title = "groupoid isomorphism from eventual conjugacy";
      o.report.parameters["depth"] = std::to_string(depth);
      o.report.verdicts.push_back(Verdict::pass("construction"));
      o.artifacts.push_back({"table", format_table(e, f, t.forward)});
      o.artifacts.push_back({"inverse", format_table(f, e, t.inverse)});
      return o;
    };
  });
  auto* stab = build->add_subcommand("stab-iso-from-conj", "Levelled table of the stabilized isomorphism");
  stab->add_option("E", e_file)->required();
  stab->add_option("F", f_file)->required();
  stab->add_option("code", a_file)->required();
  stab->add_option("codeinv", b_file)->required();
  stab->add_option("-o,--output", output, "Write the table here");
  stab->add_option("--window-cap", cap, "Largest window constant tried");
  stab->callback([&] {
    action = [&] {
      auto e = load_graph(e_file), f = load_graph(f_file);
      auto s = stabilized_iso_from_conjugacy(parse_block_code(e, f, read_file(a_file)),
                                             parse_block_code(f, e, read_file(b_file)), cap);
      CommandResult o;
      o.report.title = "stabilized isomorphism from conjugacy";
      o.report.parameters["collapse"] = std::to_string(s.one_sided.collapse);
      o.report.parameters["window"] = std::to_string(s.window);
      o.report.parameters["classes"] = std::to_string(s.relation.classes.size());
      o.report.verdicts.push_back(s.levels().validate()
                                      ? Verdict::pass("level-bookkeeping")
                                      : Verdict::fail("level-bookkeeping", "A-sets do not partition the levels"));
      o.artifacts.push_back({"table", format_table(e, f, s.table())});
      return o;
    };
  });

  // extract
  auto* extract = app.add_subcommand("extract", "Recover conjugacies from tables")->require_subcommand(1);
  auto* ev = extract->add_subcommand("eventual-from-iso", "Eventual-conjugacy candidate of a table pair");
  ev->add_option("E", e_file)->required();
  ev->add_option("F", f_file)->required();
  ev->add_option("table", a_file)->required();
  ev->add_option("inverse", b_file)->required();
  ev->add_option("-o,--output", output, "Write the candidate here");
  depth_option(ev);
  ev->callback([&] {
    action = [&] {
      auto e = load_graph(e_file), f = load_graph(f_file);
      IsoTables t{parse_table(e, f, read_file(a_file)), parse_table(f, e, read_file(b_file))};
      auto c = eventual_conjugacy_from_iso(e, f, t, depth);
      CommandResult o{check_eventual_conjugacy(c, depth), {}};
      o.report.title = "eventual conjugacy from groupoid isomorphism";
      o.artifacts.push_back({"candidate", format_candidate(c)});
      return o;
    };
  });
  auto* cj = extract->add_subcommand("conj-from-stab-iso", "Conjugacy pair of a levelled table");
  cj->add_option("E", e_file)->required();
  cj->add_option("F", f_file)->required();
  cj->add_option("table", a_file)->required();
  cj->add_option("-o,--output", output, "Write the code here");
  cj->add_option("--inverse-output", inverse_output, "Write the inverse code here");
  cj->add_option("--cap", cap, "Largest window searched");
  depth_option(cj);
  cj->callback([&] {
    action = [&] {
      auto e = load_graph(e_file), f = load_graph(f_file);
      auto x = conjugacy_from_stabilized_iso(e, f, parse_table(e, f, read_file(a_file)), depth, cap);
      CommandResult o{x.check, {}};
      o.report.title = "conjugacy from stabilized isomorphism";
      o.report.parameters["lag_bound"] = std::to_string(x.lag_bound);
      o.report.parameters["injectivity"] = std::to_string(x.injectivity);
      o.report.parameters["surjectivity"] = std::to_string(x.surjectivity);
      o.artifacts.push_back({"code", format_block_code(x.code, stem(e_file), stem(f_file))});
      o.artifacts.push_back({"inverse", format_block_code(x.inverse, stem(f_file), stem(e_file))});
      return o;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Verify tables")->require_subcommand(1);
  auto* vt = verify->add_subcommand("table", "Verify a plain or levelled table");
  vt->add_option("E", e_file)->required();
  vt->add_option("F", f_file)->required();
  vt->add_option("table", a_file)->required();
  vt->add_option("--weights", weights, "Weight functions kE kF, e.g. 1 or a=1,b=1/2")->expected(2);
  depth_option(vt);
  vt->callback([&] {
    action = [&] {
      auto e = load_graph(e_file), f = load_graph(f_file);
      auto t = parse_table(e, f, read_file(a_file));
      auto ke = WeightFunction::parse(e, weights[0]), kf = WeightFunction::parse(f, weights[1]);
      return CommandResult{t.levelled ? verify_stabilized_table(e, f, t, ke, kf, depth) : verify_table(e, f, t, ke, kf, depth),
                      {}};
    };
  });

  // lpa
  auto* lpa = app.add_subcommand("lpa", "Leavitt path algebra homomorphisms")->require_subcommand(1);
  auto* hom = lpa->add_subcommand("verify-hom", "Verify the generator images a table induces");
  hom->add_option("E", e_file)->required();
  hom->add_option("F", f_file)->required();
  hom->add_option("table", a_file)->required();
  hom->add_option("--inverse", inverse_table, "Table of the inverse, to check the diagonal both ways");
  hom->add_option("--weights", weights, "Weight functions kE kF")->expected(2);
  depth_option(hom);
  hom->callback([&] {
    action = [&] {
      auto e = load_graph(e_file), f = load_graph(f_file);
      auto images = induced_hom_from_table(e, f, parse_table(e, f, read_file(a_file)));
      std::optional<GeneratorImages> back;
      if (!inverse_table.empty()) back = induced_hom_from_table(f, e, parse_table(f, e, read_file(inverse_table)));
      auto ke = WeightFunction::parse(e, weights[0]), kf = WeightFunction::parse(f, weights[1]);
      CommandResult o{verify_generator_hom(e, f, images, ke, kf, depth, back ? &*back : nullptr), {}};
      o.artifacts.push_back({"images", images_text(e, f, images)});
      return o;
    };
  });

  // invariants
  auto* inv = app.add_subcommand("invariants", "Periodic counts and Bowen-Franks groups");
  inv->add_option("E", e_file)->required();
  inv->add_option("F", f_file);
  inv->add_option("--period", period, "Largest period counted")->check(CLI::PositiveNumber);
  inv->callback([&] {
    action = [&] {
      CommandResult o;
      o.report.title = "invariants";
      auto e = load_graph(e_file);
      auto ce = periodic_counts(e, period);
      auto be = bowen_franks(e);
      o.report.parameters["E.periodic_counts"] = counts_text(ce);
      o.report.parameters["E.bowen_franks"] = to_string(be);
      if (f_file.empty()) return o;
      auto f = load_graph(f_file);
      auto cf = periodic_counts(f, period);
      auto bf = bowen_franks(f);
      o.report.parameters["F.periodic_counts"] = counts_text(cf);
      o.report.parameters["F.bowen_franks"] = to_string(bf);
      Verdict counts = Verdict::pass("periodic-counts");
      for (std::size_t p = 0; p < ce.size(); ++p) {
        if (ce[p] != cf[p]) {
          counts = Verdict::fail("periodic-counts",
                                 "p=" + std::to_string(p + 1) + ": " + std::to_string(ce[p]) + " vs " +
                                     std::to_string(cf[p]),
                                 "the graphs are not conjugate");
          break;
        }
      }
      o.report.verdicts.push_back(counts);
      o.report.verdicts.push_back(be == bf ? Verdict::pass("bowen-franks")
                                           : Verdict::fail("bowen-franks", to_string(be) + " vs " + to_string(bf),
                                                           "the graphs are not flow equivalent"));
      return o;
    };
  });

  std::string command;
  for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  auto input_error = [&](const std::string& kind, const std::string& what) {
    if (json)
      std::cout << nlohmann::json{{"command", command}, {"error", kind + ": " + what}}.dump(2) << "\n";
    else
      std::cerr << kind << ": " << what << "\n";
    return kExitUsage;
  };

  auto start = std::chrono::steady_clock::now();
  CommandResult o;
  try {
    o = action();
  } catch (const InputError& e) {
    return input_error("input error", e.what());
  } catch (const ParseError& e) {
    return input_error("parse error", e.what());
  } catch (const ReferenceError& e) {
    return input_error("reference error", e.what());
  } catch (const ShapeError& e) {
    return input_error("shape error", e.what());
  } catch (const MalformedCandidateError& e) {
    return input_error("malformed candidate", e.what());
  } catch (const InconclusiveError& e) {
    o.report.verdicts.push_back(Verdict::inconclusive("construction", e.what()));
  } catch (const BoundExceededError& e) {
    o.report.verdicts.push_back(Verdict::inconclusive("construction", e.what()));
  } catch (const Error& e) {
    o.report.verdicts.push_back(Verdict::fail("construction", e.what()));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.report.title.empty()) o.report.title = command;

  if (!output.empty() && !o.artifacts.empty()) write_file(output, o.artifacts[0].second);
  if (!inverse_output.empty() && o.artifacts.size() > 1) write_file(inverse_output, o.artifacts[1].second);

  if (json) {
    std::cout << to_json(command, o).dump(2) << "\n";
  } else {
    std::cout << "$ shiftgrp " << command << "\n" << o.report.to_text();
    for (auto const& [name, text] : o.artifacts) std::cout << "\n[" << name << "]\n" << text;
    std::printf("time: %.3fs\n", secs);
  }
  return exit_code(o.report.overall());
}
