#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "mstfan/core.hpp"
#include "mstfan/epistasis.hpp"
#include "mstfan/errors.hpp"
#include "mstfan/io.hpp"
#include "mstfan/matroid.hpp"
#include "mstfan/mst_fan.hpp"

using nlohmann::json;
using namespace mstfan;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitScale = 3;
constexpr int kExitUsage = 64;

struct Options {
  std::string input;
  std::string generator;
  std::string heights = "auto";
  std::string height_values;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string weights = "lattice";
  std::string order;
  std::string dot;
  std::string rows = "P5,P6,P7,octa,prism3";
  std::size_t samples = 100;
  bool exhaustive = false;
};

bool scale_override() {
  const char* v = std::getenv("MSTFAN_SCALE_OVERRIDE");
  return v != nullptr && std::string(v) == "1";
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

WeightKind weight_kind(const std::string& name) {
  if (name == "lattice") return WeightKind::lattice;
  if (name == "epistatic") return WeightKind::epistatic;
  throw ValidationError("--weights must be lattice or epistatic");
}

Instance load_instance(const Options& opt) {
  if (opt.input.empty() == opt.generator.empty()) throw ValidationError("give exactly one of --input and --generate");
  Instance inst = [&] {
    if (!opt.input.empty()) {
      std::ifstream in(opt.input);
      if (!in) throw ValidationError("cannot read " + opt.input);
      json doc;
      try {
        in >> doc;
      } catch (const json::exception& e) {
        throw ValidationError(std::string("instance is not valid JSON: ") + e.what());
      }
      return instance_from_json(doc);
    }
    const auto g = parse_generator(opt.generator);
    return Instance{generate(g), std::nullopt, g};
  }();
  if (!opt.height_values.empty()) {
    RationalVector values;
    for (const auto& s : split(opt.height_values, ',')) values.push_back(parse_rational(s));
    if (values.size() != inst.config.size()) throw ValidationError("--height-values needs one value per point");
    inst.heights = HeightFunction(values);
  } else if (opt.heights == "explicit") {
    if (!inst.heights) throw ValidationError("--heights explicit needs heights in the instance or --height-values");
  } else if (opt.heights == "random" || (opt.heights == "auto" && !inst.heights)) {
    const CandidateSet candidates(inst.config);
    RationalSampler rng(opt.seed);
    for (int attempt = 0;; ++attempt) {
      if (attempt == 100) throw ValidationError("no generic random heights found");
      HeightFunction h(rng.integer_vector(inst.config.size(), 1000));
      if (is_generic(candidates, h).generic) {
        inst.heights = h;
        break;
      }
    }
  } else if (opt.heights != "auto") {
    throw ValidationError("--heights must be random or explicit");
  }
  return inst;
}

json edge_list(const PointConfiguration& config, const DualGraph& g) {
  json edges = json::array();
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    edges.push_back({{"index", e},
                     {"ridge", to_json(config, g.edges[e])},
                     {"form", to_json(config, g.forms[e])},
                     {"length", to_string(g.lengths[e])}});
  }
  return edges;
}

json cone_json(const PointConfiguration& config, const HCone& c) {
  json out = json::array();
  for (const auto& f : c.constraints()) out.push_back(to_json(config, f));
  return out;
}

json ranges_json(const InstabilityPartition& p) {
  json out = json::array();
  for (const auto& [a, b] : p.ranges) out.push_back({a, b});
  return out;
}

OrderedSpanningTree parse_order(const std::string& text) {
  OrderedSpanningTree t;
  for (const auto& s : split(text, ',')) {
    try {
      t.edges.push_back(std::stoi(s));
    } catch (const std::exception&) {
      throw ValidationError("--order takes comma-separated edge indices");
    }
  }
  return t;
}

RealizableOptions realizable_options(const Options& opt) {
  RealizableOptions r;
  r.jobs = opt.jobs;
  r.exhaustive = opt.exhaustive;
  r.override_guard = scale_override();
  return r;
}

json run_triangulate(const Instance& inst) {
  const auto tri = regular_triangulation(inst.config, *inst.heights);
  json cells = json::array();
  for (const auto& s : tri.cells) cells.push_back(to_json(inst.config, s));
  Rational volume = 0;
  for (const auto& s : tri.cells) volume += normalized_volume(inst.config, s.vertices);
  return {{"cells", cells}, {"volume", to_string(volume)}};
}

json run_dual_graph(const Instance& inst, const Options& opt) {
  const auto tri = regular_triangulation(inst.config, *inst.heights);
  const auto g = dual_graph(tri, *inst.heights);
  if (!opt.dot.empty()) {
    std::ofstream out(opt.dot);
    if (!out) throw ValidationError("cannot write " + opt.dot);
    out << to_dot(inst.config, g);
  }
  json nodes = json::array();
  for (const auto& s : g.nodes) nodes.push_back(to_json(inst.config, s));
  json positions = json::array();
  for (const auto& s : g.nodes) positions.push_back(to_json(dual_vertex_position(tri, *inst.heights, s)));
  return {{"nodes", nodes}, {"dual_vertices", positions}, {"edges", edge_list(inst.config, g)}};
}

json run_secondary_cone(const Instance& inst) {
  const auto tri = regular_triangulation(inst.config, *inst.heights);
  const auto sc = secondary_cone(inst.config, tri);
  const auto report = dimension(sc);
  json out = {{"constraints", cone_json(inst.config, sc)},
              {"irredundant", cone_json(inst.config, irredundant(sc))},
              {"dimension", report.dimension},
              {"lineality_dimension", lineality_dimension(sc)}};
  if (report.interior_point) out["interior_point"] = heights_json(inst.config, *report.interior_point);
  return out;
}

json run_mst(const Instance& inst, const Options& opt) {
  const auto tri = regular_triangulation(inst.config, *inst.heights);
  const auto g = dual_graph(tri, *inst.heights);
  const auto weights = edge_weights(inst.config, *inst.heights, g, weight_kind(opt.weights));
  const auto result = greedy_mst(g, weights);
  json order = json::array();
  json w = json::array();
  for (int e : result.tree.edges) {
    order.push_back(e);
    w.push_back(to_string(weights[static_cast<std::size_t>(e)]));
  }
  return {{"edges", edge_list(inst.config, g)},
          {"order", order},
          {"weights", w},
          {"weight_kind", opt.weights},
          {"instability_ranges", ranges_json(result.partition)}};
}

json run_mst_cone(const Instance& inst, const Options& opt) {
  const auto tri = regular_triangulation(inst.config, *inst.heights);
  const MstFanContext ctx(tri, *inst.heights);
  const auto k = mst_cone(ctx, parse_order(opt.order));
  json in_tree = json::array();
  for (const auto& f : k.in_tree_conditions) in_tree.push_back(to_json(inst.config, f));
  json cut = json::array();
  for (const auto& [r, f] : k.cut_edge_conditions) {
    cut.push_back({{"edge", r}, {"cut_edge", cut_edge(ctx.graph(), k.tree, r).edge}, {"form", to_json(inst.config, f)}});
  }
  const auto fd = is_full_dimensional(k.cone);
  json out = {{"edges", edge_list(inst.config, ctx.graph())},
              {"order", k.tree.edges},
              {"in_tree_conditions", in_tree},
              {"cut_edge_conditions", cut},
              {"condition_count", k.condition_count()},
              {"instability_ranges", ranges_json(k.partition)},
              {"realizable", fd.full},
              {"dimension", dimension(k.cone).dimension}};
  if (fd.full) out["interior_point"] = heights_json(inst.config, fd.witness);
  return out;
}

json run_enumerate(const Instance& inst, const Options& opt) {
  const auto tri = regular_triangulation(inst.config, *inst.heights);
  const MstFanContext ctx(tri, *inst.heights);
  const auto result = enumerate_realizable(ctx, realizable_options(opt));
  json list = json::array();
  for (const auto& k : result.realizable) list.push_back(k.tree.edges);
  return {{"edges", edge_list(inst.config, ctx.graph())},
          {"spanning_trees", result.spanning_trees.get_str()},
          {"ordered_trees", result.ordered_trees.get_str()},
          {"realizable_count", result.realizable.size()},
          {"realizable", list}};
}

json run_fan_check(const Instance& inst, const Options& opt) {
  const auto tri = regular_triangulation(inst.config, *inst.heights);
  const MstFanContext ctx(tri, *inst.heights);
  const auto fan = mst_fan(ctx, opt.seed, opt.samples, realizable_options(opt));
  const auto& r = fan.report;
  return {{"cones", r.cones},
          {"support_samples", r.support_samples},
          {"support_violations", r.support_violations},
          {"max_multiplicity", r.max_multiplicity},
          {"purity_violations", r.purity_violations},
          {"face_pairs", r.face_pairs},
          {"face_violations", r.face_violations},
          {"ok", r.ok()}};
}

json run_bergman(const Instance& inst, const Options& opt) {
  const auto tri = regular_triangulation(inst.config, *inst.heights);
  const MstFanContext ctx(tri, *inst.heights);
  const auto cones = enumerate_realizable(ctx, realizable_options(opt)).realizable;
  const auto cells = saturating_cells(cones, ctx.graph(), scale_override());
  const auto matroid = CycleMatroid::of(ctx.graph());
  json list = json::array();
  bool all = true;
  for (const auto& c : cells) {
    RationalVector w;
    for (const auto& f : ctx.graph().forms) w.push_back(abs(f.evaluate(c.witness)));
    const bool flats = is_flag_of_flats(matroid, flag_of(w));
    all = all && c.bergman && flats == c.bergman;
    list.push_back({{"cones", c.cones}, {"weights", to_json(w)}, {"bergman", c.bergman}, {"flag_of_flats", flats}});
  }
  return {{"cones", cones.size()}, {"saturating_cells", list}, {"all_in_bergman_fan", all}};
}

json run_filtration(const Instance& inst, const Options& opt) {
  const auto f = epistatic_filtration(inst.config, *inst.heights, weight_kind(opt.weights));
  const auto t = merge_tree(f);
  json steps = json::array();
  for (const auto& s : f.steps) {
    json step = {{"edge", s.edge}, {"weight", to_string(s.weight)}, {"critical", s.critical}, {"forced_tie", s.forced_tie}};
    if (s.critical) step["merged"] = {s.merged_left, s.merged_right};
    steps.push_back(step);
  }
  json nodes = json::array();
  for (std::size_t v = 0; v < t.nodes.size(); ++v) {
    const auto& n = t.nodes[v];
    if (t.is_leaf(static_cast<int>(v))) {
      nodes.push_back({{"id", v}, {"cell", to_json(inst.config, t.leaves[v])}, {"parent", n.parent}});
    } else {
      nodes.push_back({{"id", v},
                       {"children", {n.left, n.right}},
                       {"edge", n.edge},
                       {"weight", to_string(n.weight)},
                       {"parent", n.parent}});
    }
  }
  return {{"edges", edge_list(inst.config, f.graph)},
          {"steps", steps},
          {"merge_tree", {{"nodes", nodes}, {"root", t.root}}},
          {"weight_kind", opt.weights}};
}

json run_table1(const Options& opt) {
  json rows = json::object();
  for (const auto& row : split(opt.rows, ',')) {
    std::string gen;
    if (row.size() > 1 && row[0] == 'P' && std::isdigit(static_cast<unsigned char>(row[1]))) {
      gen = "ngon " + row.substr(1);
    } else if (row == "octa") {
      gen = "crosspoly 3";
    } else if (row == "prism3") {
      gen = "prism 3";
    } else if (row == "cube3") {
      gen = "cube 3";
    } else {
      throw ValidationError("unknown table row '" + row + "'");
    }
    if ((row == "cube3" || row == "P8") && !scale_override()) {
      throw ScaleGuardError("row " + row + " is an extended run; set MSTFAN_SCALE_OVERRIDE=1");
    }
    const auto config = generate(gen);
    const auto start = std::chrono::steady_clock::now();
    EnumerationLimits limits;
    limits.override_guard = scale_override();
    const auto tris = enumerate_triangulations(config, limits);
    std::size_t regular = 0;
    Integer ordered = 0;
    std::size_t realizable = 0;
    for (const auto& t : tris) {
      if (!t.regular) continue;
      ++regular;
      const MstFanContext ctx(t.triangulation, HeightFunction(t.interior_witness));
      const auto r = enumerate_realizable(ctx, realizable_options(opt));
      ordered += r.ordered_trees;
      realizable += r.realizable.size();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << row << ": " << seconds << " s\n";
    rows[row] = {{"generator", gen},
                 {"triangulations", tris.size()},
                 {"regular_triangulations", regular},
                 {"ordered_trees", ordered.get_str()},
                 {"realizable", realizable},
                 {"summary", std::to_string(regular) + " triangulations, " + ordered.get_str() + " ordered trees, " +
                                 std::to_string(realizable) + " realizable"}};
  }
  return rows;
}

void add_instance_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--input", opt.input, "instance JSON file");
  cmd->add_option("--generate", opt.generator, "built-in configuration, e.g. 'ngon 5'");
  cmd->add_option("--heights", opt.heights, "random or explicit")->check(CLI::IsMember({"random", "explicit", "auto"}));
  cmd->add_option("--height-values", opt.height_values, "comma-separated p/q heights in label order");
  cmd->add_option("--seed", opt.seed, "seed of the pseudo-random sampler");
  cmd->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::Range(1u, 256u));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular triangulations, MST-cones and MST-fans in exact arithmetic"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Options opt;

  std::vector<std::pair<CLI::App*, std::function<json(const Instance&)>>> commands;
  auto add = [&](const std::string& name, const std::string& help, std::function<json(const Instance&)> fn) {
    auto* cmd = app.add_subcommand(name, help);
    add_instance_options(cmd, opt);
    commands.emplace_back(cmd, std::move(fn));
    return cmd;
  };
  add("triangulate", "regular triangulation of the lifted configuration", run_triangulate);
  add("dual-graph", "dual graph with edge-length forms", [&](const Instance& i) { return run_dual_graph(i, opt); })
      ->add_option("--dot", opt.dot, "write the graph description to this file");
  add("secondary-cone", "secondary cone constraints", run_secondary_cone);
  add("mst", "greedy minimum spanning tree", [&](const Instance& i) { return run_mst(i, opt); })
      ->add_option("--weights", opt.weights, "lattice or epistatic");
  add("mst-cone", "cone of an ordered spanning tree", [&](const Instance& i) { return run_mst_cone(i, opt); })
      ->add_option("--order", opt.order, "comma-separated edge indices")
      ->required();
  auto* enumerate = add("enumerate-trees", "realizable ordered spanning trees",
                        [&](const Instance& i) { return run_enumerate(i, opt); });
  enumerate->add_flag("--exhaustive", opt.exhaustive, "test every order without prefix pruning");
  add("fan-check", "verify the fan axioms of the MST-fan", [&](const Instance& i) { return run_fan_check(i, opt); })
      ->add_option("--samples", opt.samples, "sampled heights for the support check");
  add("bergman-check", "saturating cells and Bergman membership", [&](const Instance& i) { return run_bergman(i, opt); });
  add("filtration", "epistatic filtration and merge tree", [&](const Instance& i) { return run_filtration(i, opt); })
      ->add_option("--weights", opt.weights, "lattice or epistatic");
  auto* table1 = app.add_subcommand("table1", "triangulation and ordered-tree counts");
  table1->add_option("--rows", opt.rows, "comma-separated rows: P5,P6,P7,P8,octa,prism3,cube3");
  table1->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    json doc;
    if (table1->parsed()) {
      doc = {{"command", "table1"}, {"rows", opt.rows}, {"result", run_table1(opt)}};
    } else {
      for (auto& [cmd, fn] : commands) {
        if (!cmd->parsed()) continue;
        const auto inst = load_instance(opt);
        const auto inst_json = to_json(inst);
        doc = {{"command", cmd->get_name()},
               {"instance", inst_json},
               {"digest", digest(inst_json)},
               {"seed", opt.seed},
               {"result", fn(inst)}};
      }
    }
    doc["version"] = kVersion;
    std::cout << doc.dump(2) << "\n";
    return 0;
  } catch (const ScaleGuardError& e) {
    std::cerr << "scale guard: " << e.what() << "\n";
    return kExitScale;
  } catch (const GenericityError& e) {
    std::cerr << "error: " << e.what() << " at " << e.witness() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
