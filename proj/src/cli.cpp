#include "symred/cli.hpp"

#include "symred/core.hpp"
#include "symred/dist.hpp"
#include "symred/errors.hpp"
#include "symred/gen.hpp"
#include "symred/io.hpp"
#include "symred/oracle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace symred {

namespace {

struct ModelOptions {
  std::string cnf_path;
  std::string graph_path;
  std::string prefix_path;
  std::string prefix_vars;
  std::optional<int> depth;
  ValueMode mode = ValueMode::global_values;
};

struct RunOptions {
  OutputFormat format = OutputFormat::cubes;
  int workers = 1;
  StackMode stack = StackMode::master;
  int hier_threshold = 1;
  bool stats = false;
  std::string stats_file;
};

struct Loaded {
  Cnf cnf;
  SymmetryModel model;
  std::vector<Var> prefix;
};

const std::map<std::string, ValueMode> value_modes{{"global", ValueMode::global_values},
                                                   {"phase", ValueMode::per_variable_values}};
const std::map<std::string, OutputFormat> formats{{"cubes", OutputFormat::cubes},
                                                  {"icnf", OutputFormat::icnf},
                                                  {"sbp", OutputFormat::sbp},
                                                  {"count", OutputFormat::count}};
const std::map<std::string, StackMode> stacks{{"master", StackMode::master}, {"hier", StackMode::hierarchical}};
const std::map<std::string, EdgeOrder> edge_orders{{"row-major", EdgeOrder::row_major},
                                                   {"vertex-incremental", EdgeOrder::vertex_incremental}};

void add_model_options(CLI::App& app, ModelOptions& o) {
  app.add_option("input", o.cnf_path, "DIMACS CNF file")->required();
  app.add_option("--graph", o.graph_path, "auxiliary symmetry graph");
  auto* pf = app.add_option("--prefix", o.prefix_path, "file of 1-based prefix variables");
  auto* pv = app.add_option("--prefix-vars", o.prefix_vars, "prefix variables, e.g. 1,2,5");
  pf->excludes(pv);
  app.add_option("--depth", o.depth, "use the first k prefix variables")->check(CLI::NonNegativeNumber);
  app.add_option("--value-mode", o.mode, "value symmetry: global or per variable")
      ->transform(CLI::CheckedTransformer(value_modes))
      ->option_text("global|phase");
}

Loaded load(const ModelOptions& o) {
  Loaded l;
  l.cnf = parse_dimacs(read_file(o.cnf_path));
  if (o.graph_path.empty()) {
    l.model = cnf_to_model(l.cnf, o.mode);
  } else {
    GraphFile gf = parse_graph(read_file(o.graph_path));
    int k = gf.var_vertices.value_or(l.cnf.num_vars);
    if (k > l.cnf.num_vars)
      throw InputError("graph declares " + std::to_string(k) + " variable vertices but the CNF has " +
                       std::to_string(l.cnf.num_vars) + " variables");
    l.model = load_aux_model(gf.graph, k, o.mode);
  }
  if (!o.prefix_path.empty()) {
    l.prefix = parse_prefix(read_file(o.prefix_path), l.model.num_vars);
  } else if (!o.prefix_vars.empty()) {
    l.prefix = parse_prefix(o.prefix_vars, l.model.num_vars);
  } else {
    for (Var u = 0; u < l.model.num_vars; ++u) l.prefix.push_back(u);
  }
  if (o.depth) {
    if (*o.depth > static_cast<int>(l.prefix.size()))
      throw InputError("depth " + std::to_string(*o.depth) + " exceeds the prefix length " +
                       std::to_string(l.prefix.size()));
    l.prefix.resize(static_cast<std::size_t>(*o.depth));
  }
  return l;
}

std::string stats_text(const SearchStats& s) {
  std::ostringstream os;
  for (std::size_t level = 1; level < s.levels.size(); ++level)
    os << level << '\t' << s.levels[level].accepted << '\n';
  return os.str();
}

int run_main(const ModelOptions& mo, const RunOptions& ro, std::ostream& out, std::ostream& err) {
  Loaded l = load(mo);
  PrefixPlan plan = build_prefix_plan(l.model, l.prefix);
  std::vector<PartialAssignment> result;
  SearchStats stats;
  if (ro.workers == 1 && ro.stack == StackMode::master) {
    result = run_sequential(l.model, plan, &stats);
    std::sort(result.begin(), result.end());
  } else {
    StackPolicy policy;
    policy.mode = ro.stack;
    policy.threshold = ro.hier_threshold;
    ParallelReport report;
    result = run_parallel(l.model, plan, policy, ro.workers, &report);
    stats = std::move(report.search);
  }
  out << emit_outputs(result, ro.format, l.cnf);
  if (ro.stats) err << stats_text(stats);
  if (!ro.stats_file.empty()) write_file(ro.stats_file, stats_text(stats));
  return exit_ok;
}

void write_instance(const Instance& inst, const std::string& out_name, std::ostream& out) {
  const std::string base = out_name.empty() ? inst.name : out_name;
  write_file(base + ".cnf", write_dimacs(inst.cnf));
  out << base << ".cnf\n";
  if (inst.aux) {
    write_file(base + ".graph", write_graph(*inst.aux, inst.aux_vars));
    out << base << ".graph\n";
  }
  write_file(base + ".prefix", write_prefix(inst.prefix));
  out << base << ".prefix\n";
}

int oracle_main(const ModelOptions& mo, std::optional<int> burnside, std::ostream& out) {
  if (burnside) {
    if (*burnside < 0 || *burnside > 10) throw InputError("burnside count needs 0 <= n <= 10");
    out << burnside_graph_count(*burnside) << '\n';
    return exit_ok;
  }
  if (mo.cnf_path.empty()) throw InputError("oracle needs an input CNF or --burnside");
  Loaded l = load(mo);
  OrbitClasses classes = orbit_classes(l.model, l.prefix);
  PrefixPlan plan = build_prefix_plan(l.model, l.prefix);
  auto emitted = run_sequential(l.model, plan);
  CoverReport rep = exact_cover_check(emitted, classes);
  out << "orbits " << classes.count << '\n';
  out << "group_order " << classes.group_order << '\n';
  out << "emitted " << emitted.size() << '\n';
  out << "exact_cover " << (rep.ok ? "ok" : "FAIL") << '\n';
  for (const auto& v : rep.violations) out << "  " << v << '\n';
  return rep.ok ? exit_ok : exit_internal_error;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry-reducing SAT preprocessor: emits one partial assignment per isomorphism class "
               "of prefix assignments."};
  app.name("symred");
  app.require_subcommand(0, 1);

  ModelOptions mo;
  RunOptions ro;
  add_model_options(app, mo);
  app.add_option("--output", ro.format, "output format")
      ->transform(CLI::CheckedTransformer(formats))
      ->option_text("cubes|icnf|sbp|count");
  app.add_option("--workers", ro.workers, "worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--stack", ro.stack, "work stack layout")
      ->transform(CLI::CheckedTransformer(stacks))
      ->option_text("master|hier");
  app.add_option("--hier-threshold", ro.hier_threshold, "last level of the low class")->check(CLI::PositiveNumber);
  app.add_flag("--stats", ro.stats, "per-level accepted counts on stderr");
  app.add_option("--stats-file", ro.stats_file, "write per-level accepted counts to a file");

  auto* gen = app.add_subcommand("gen", "write benchmark instances (.cnf, .graph, .prefix)");
  gen->require_subcommand(1);
  std::string out_name;
  int m = 3, r = 2, ones = 4, n = 4, s = 3, t = 2, k = 3;
  std::uint64_t seed = 1;
  EdgeOrder order = EdgeOrder::row_major;
  auto* tensor = gen->add_subcommand("tensor", "rank-r tensor decomposition over GF(2)");
  tensor->add_option("--m", m, "tensor side")->check(CLI::PositiveNumber);
  tensor->add_option("--r", r, "rank")->check(CLI::PositiveNumber);
  tensor->add_option("--ones", ones, "nonzero entries of the target")->check(CLI::PositiveNumber);
  tensor->add_option("--seed", seed, "target seed");
  auto* ccp = gen->add_subcommand("ccp", "clique coloring");
  ccp->add_option("--n", n, "nodes")->check(CLI::PositiveNumber);
  ccp->add_option("--s", s, "clique size")->check(CLI::PositiveNumber);
  ccp->add_option("--t", t, "colors")->check(CLI::PositiveNumber);
  auto* ramsey = gen->add_subcommand("ramsey", "two-colorings of K_n without monochromatic K_k");
  ramsey->add_option("--n", n, "nodes")->check(CLI::PositiveNumber);
  ramsey->add_option("--k", k, "clique size")->check(CLI::PositiveNumber);
  auto* a88 = gen->add_subcommand("a000088", "all graphs on n unlabeled nodes");
  a88->add_option("--n", n, "nodes")->check(CLI::PositiveNumber);
  a88->add_option("--order", order, "edge order of the prefix")
      ->transform(CLI::CheckedTransformer(edge_orders))
      ->option_text("row-major|vertex-incremental");
  for (auto* sub : {tensor, ccp, ramsey, a88})
    sub->add_option("--out", out_name, "output base name (default: instance name)");

  auto* orc = app.add_subcommand("oracle", "brute-force orbit count and exact-cover check");
  ModelOptions oo;
  std::optional<int> burnside;
  orc->add_option("input", oo.cnf_path, "DIMACS CNF file");
  orc->add_option("--graph", oo.graph_path, "auxiliary symmetry graph");
  orc->add_option("--prefix", oo.prefix_path, "file of 1-based prefix variables");
  orc->add_option("--prefix-vars", oo.prefix_vars, "prefix variables, e.g. 1,2,5");
  orc->add_option("--depth", oo.depth, "use the first k prefix variables")->check(CLI::NonNegativeNumber);
  orc->add_option("--value-mode", oo.mode, "value symmetry: global or per variable")
      ->transform(CLI::CheckedTransformer(value_modes))
      ->option_text("global|phase");
  orc->add_option("--burnside", burnside, "print the number of graphs on n unlabeled nodes");

  // The main run needs its input only when no subcommand is given.
  app.get_option("input")->required(false);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_input_error;
  }

  try {
    if (*gen) {
      Instance inst;
      if (*tensor) inst = gen_tensor(m, r, ones, seed);
      else if (*ccp) inst = gen_ccp(n, s, t);
      else if (*ramsey) inst = gen_ramsey(n, k);
      else inst = gen_a000088(n, order);
      write_instance(inst, out_name, out);
      return exit_ok;
    }
    if (*orc) return oracle_main(oo, burnside, out);
    if (mo.cnf_path.empty()) throw InputError("missing input CNF (see --help)");
    if (ro.stack == StackMode::master && app.count("--hier-threshold"))
      throw InputError("--hier-threshold requires --stack hier");
    return run_main(mo, ro, out, err);
  } catch (const InputError& e) {
    err << "symred: " << e.what() << '\n';
    return exit_input_error;
  } catch (const CapacityError& e) {
    err << "symred: " << e.what() << '\n';
    return exit_input_error;
  } catch (const std::exception& e) {
    err << "symred: internal error: " << e.what() << '\n';
    return exit_internal_error;
  }
}

} // namespace symred
