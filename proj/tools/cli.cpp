#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "urysohn/amalgam.hpp"
#include "urysohn/builder.hpp"
#include "urysohn/dap.hpp"
#include "urysohn/generator.hpp"
#include "urysohn/io.hpp"

namespace urysohn::cli {
namespace {

struct Params {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::int64_t grid_q = 1;
  std::int64_t grid_max = 3;
  std::size_t stages = 1;
  std::size_t arity = 1;
  std::size_t budget = 0;  // 0: command default
  std::size_t rounds = 64;
  std::string mode = "strict";
  std::string format = "text";
  std::string output;
  std::string space_output;
  std::string index;
  std::string label = "new";
  std::string rule = "maximal";
  std::optional<std::size_t> limit;
  std::size_t n = 0;
  std::vector<std::string> files;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::MalformedInput, {path}, "cannot write file");
  file << text;
}

std::string pairs_text(const PartialIsometry& map) {
  std::ostringstream s;
  for (const auto& [a, b] : map.pairs) s << a << ' ' << b << '\n';
  return s.str();
}

PartialIsometry read_map(const std::string& path) {
  PartialIsometry map;
  for (auto& [a, b] : io::read_label_pairs_file(path)) map.pairs.emplace_back(std::move(a), std::move(b));
  return map;
}

DistanceGrid grid_of(const Params& p) {
  DistanceGrid grid{p.grid_q, p.grid_max};
  (void)grid.values();  // rejects non-positive parameters
  return grid;
}

Approximant read_approximant(const std::string& space_path, const std::string& index_path) {
  auto space = io::read_space_file(space_path);
  if (index_path.empty()) return Approximant::from_space(std::move(space), DistanceGrid{});
  std::ifstream in(index_path);
  if (!in) throw Error(ErrorKind::MalformedInput, {index_path}, "cannot open file");
  return parse_index(in, std::move(space));
}

int cmd_validate(const Params& p, std::ostream& out) {
  const auto space = io::read_space_file(p.files[0]);
  if (!p.output.empty()) emit(io::serialize_space(space), p.output, out);
  out << "valid metric space, " << space.size() << " points\n";
  return 0;
}

int cmd_amalgamate(const Params& p, std::ostream& out) {
  AmalgamSpec spec{io::read_space_file(p.files[0]), io::read_space_file(p.files[1]), io::read_label_pairs_file(p.files[2])};
  const auto result = amalgamated_union(spec);
  std::ostringstream s;
  for (const auto& [a, b] : result.h1.pairs) s << "# h1 " << a << ' ' << b << '\n';
  for (const auto& [a, b] : result.h2.pairs) s << "# h2 " << a << ' ' << b << '\n';
  io::write_space(s, result.space);
  emit(s.str(), p.output, out);
  return 0;
}

int cmd_extend_point(const Params& p, std::ostream& out) {
  KatetovFunction f{io::read_space_file(p.files[0]), {}};
  for (auto& [label, value] : io::read_label_values_file(p.files[1])) {
    if (!f.values.emplace(label, value).second) throw Error(ErrorKind::DuplicateLabel, {label});
  }
  emit(io::serialize_space(one_point_extension(f, p.label)), p.output, out);
  return 0;
}

int cmd_embed(const Params& p, std::ostream& out) {
  const auto approximant = read_approximant(p.files[0], p.index);
  const auto pattern = io::read_space_file(p.files[1]);
  const auto anchor = read_map(p.files[2]);
  const auto mode = p.mode == "strict" ? EmbedMode::Strict : EmbedMode::Extending;
  const auto result = embed_via_injectivity(approximant, pattern, anchor, mode);
  emit(pairs_text(result.embedding), p.output, out);
  if (!p.space_output.empty()) emit(io::serialize_space(result.approximant.space), p.space_output, out);
  return 0;
}

int cmd_build(const Params& p, std::ostream& out, std::ostream& err) {
  const auto grid = grid_of(p);
  Approximant start = p.files.empty() ? Approximant::single_point(grid)
                                      : Approximant::from_space(io::read_space_file(p.files[0]), grid);
  SaturateOptions options;
  options.arity_cap = p.arity;
  options.stages = p.stages;
  if (p.budget > 0) options.point_budget = p.budget;
  options.rule = p.rule == "greedy" ? ExtensionRule::GreedyMinimal : ExtensionRule::Maximal;
  const auto result = saturate(std::move(start), options);

  emit(io::serialize_space(result.approximant.space), p.output, out);
  std::string index_path = p.index;
  if (index_path.empty() && !p.output.empty()) index_path = p.output + ".index";
  if (!index_path.empty()) emit(serialize_index(result.approximant), index_path, out);
  if (result.budget_exceeded) {
    err << "error: " << Error(ErrorKind::BudgetExceeded, {std::to_string(options.point_budget)},
                              "partial approximant written").what()
        << '\n';
    return 1;
  }
  return 0;
}

int cmd_random_space(const Params& p, std::ostream& out) {
  const auto grid = grid_of(p);
  FiniteMetricSpace space;
  if (p.files.empty()) {
    space = random_space(p.n, grid, p.seed);
  } else {
    // Extend a given space by n random points.
    space = io::read_space_file(p.files[0]);
    Rng rng(p.seed);
    std::size_t counter = 0;
    for (std::size_t i = 0; i < p.n; ++i) {
      Label label;
      do {
        label = "r" + std::to_string(counter++);
      } while (space.contains(label));
      space = random_extension(space, grid, label, rng);
    }
  }
  emit(io::serialize_space(space), p.output, out);
  return 0;
}

int cmd_enumerate(const Params& p, std::ostream& out) {
  const auto spaces = enumerate_spaces(p.n, grid_of(p), p.limit);
  std::ostringstream s;
  s << "# " << spaces.size() << " spaces\n";
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    s << "\n# space " << i + 1 << '\n';
    io::write_space(s, spaces[i]);
  }
  emit(s.str(), p.output, out);
  return 0;
}

int cmd_back_and_forth(const Params& p, std::ostream& out) {
  const auto approximant = read_approximant(p.files[0], p.index);
  BackAndForthOptions options;
  options.rounds = p.rounds;
  if (p.budget > 0) options.search_budget = p.budget;
  const auto result = back_and_forth(approximant, read_map(p.files[1]), options);
  emit("# copies " + std::to_string(result.copies) + '\n' + pairs_text(result.automorphism), p.output, out);
  if (!p.space_output.empty()) emit(io::serialize_space(result.approximant.space), p.space_output, out);
  return 0;
}

dap::DapInstance singleton_demo() {
  dap::DapInstance inst;
  inst.ambient = FiniteMetricSpace::from_trusted({"x"}, {Rational(0)});
  inst.families = {{"x"}, {"x"}};
  inst.h = {{"x", Rational(1)}};
  return inst;
}

int cmd_dap_demo(const Params& p, std::ostream& out) {
  dap::DapInstance inst;
  if (p.files.size() == 3) {
    inst.ambient = io::read_space_file(p.files[0]);
    inst.families = io::read_label_lines_file(p.files[1]);
    for (auto& [label, value] : io::read_label_values_file(p.files[2])) {
      if (!inst.h.emplace(label, value).second) throw Error(ErrorKind::DuplicateLabel, {label});
    }
  } else if (p.seed_given) {
    dap::RandomInstanceOptions options;
    options.grid = grid_of(p);
    inst = dap::random_instance(p.seed, options);
  } else {
    inst = singleton_demo();
  }
  const auto report = dap::dap_verify(dap::dap_construct(inst));
  std::ostringstream s;
  if (p.format == "lines") {
    dap::write_report_lines(s, report);
  } else {
    dap::write_report_text(s, report);
  }
  emit(s.str(), p.output, out);
  return report.passed() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact finite metric space toolkit: amalgams, Katetov extensions, Urysohn approximants"};
  app.name(args.empty() ? "urysohn" : args[0]);
  app.require_subcommand(1);
  Params p;

  const auto existing = CLI::ExistingFile;
  auto add_output = [&](CLI::App* sub) { sub->add_option("--output", p.output, "Write the result here instead of stdout"); };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid-q", p.grid_q, "Grid denominator q")->check(CLI::PositiveNumber);
    sub->add_option("--grid-max", p.grid_max, "Largest grid numerator B")->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand("validate", "Check the metric axioms of a space file");
  validate->add_option("space", p.files, "Space file")->required()->expected(1)->check(existing);
  add_output(validate);

  auto* amalgamate = app.add_subcommand("amalgamate", "Glue two spaces along paired points");
  amalgamate->add_option("files", p.files, "M1 M2 PAIRS")->required()->expected(3)->check(existing);
  add_output(amalgamate);

  auto* extend = app.add_subcommand("extend-point", "Add one point with prescribed distances");
  extend->add_option("files", p.files, "SPACE VALUES")->required()->expected(2)->check(existing);
  extend->add_option("--label", p.label, "Label of the new point");
  add_output(extend);

  auto* embed = app.add_subcommand("embed", "Extend an anchored embedding of L into an approximant");
  embed->add_option("files", p.files, "APPROXIMANT L ANCHOR")->required()->expected(3)->check(existing);
  embed->add_option("--mode", p.mode, "strict or extending")->check(CLI::IsMember({"strict", "extending"}));
  embed->add_option("--index", p.index, "Sidecar index of the approximant")->check(existing);
  embed->add_option("--space-output", p.space_output, "Write the (possibly extended) approximant here");
  add_output(embed);

  auto* build = app.add_subcommand("build-approximant", "Saturate a start space in stages");
  build->add_option("start", p.files, "Start space (default: a single point p)")->expected(0, 1)->check(existing);
  add_grid(build);
  build->add_option("--stages", p.stages, "Number of saturation rounds");
  build->add_option("--arity", p.arity, "Largest subset size realized")->check(CLI::PositiveNumber);
  build->add_option("--budget", p.budget, "Point budget (default 10000)");
  build->add_option("--rule", p.rule, "Total extension rule")->check(CLI::IsMember({"maximal", "greedy"}));
  build->add_option("--index", p.index, "Sidecar index path (default: OUTPUT.index)");
  add_output(build);

  auto* random = app.add_subcommand("random-space", "Sample a grid-valued metric space");
  random->add_option("n", p.n, "Number of points")->required()->check(CLI::PositiveNumber);
  random->add_option("--base", p.files, "Extend this space by n points instead")->expected(1)->check(existing);
  auto* seed_opt = random->add_option("--seed", p.seed, "64-bit seed");
  add_grid(random);
  add_output(random);

  auto* enumerate = app.add_subcommand("enumerate", "List every grid-valued metric on n points");
  enumerate->add_option("n", p.n, "Number of points")->required();
  enumerate->add_option("--limit", p.limit, "Stop after this many spaces");
  add_grid(enumerate);
  add_output(enumerate);

  auto* baf = app.add_subcommand("back-and-forth", "Extend a partial isometry to a self-isometry");
  baf->add_option("files", p.files, "APPROXIMANT MAP")->required()->expected(2)->check(existing);
  baf->add_option("--rounds", p.rounds, "Most translated copies used to close the map");
  baf->add_option("--budget", p.budget, "Candidate checks for the in-place search");
  baf->add_option("--index", p.index, "Sidecar index of the approximant")->check(existing);
  baf->add_option("--space-output", p.space_output, "Write the (possibly extended) approximant here");
  add_output(baf);

  auto* dap_demo = app.add_subcommand("dap-demo", "Build and verify the displaced families L_n");
  dap_demo->add_option("files", p.files, "AMBIENT FAMILIES H (default: built-in demo)")->expected(0, 3)->check(existing);
  auto* dap_seed = dap_demo->add_option("--seed", p.seed, "Random instance instead of files");
  add_grid(dap_demo);
  dap_demo->add_option("--format", p.format, "text or lines")->check(CLI::IsMember({"text", "lines"}));
  add_output(dap_demo);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
    if (dap_demo->parsed() && p.files.size() != 0 && p.files.size() != 3) {
      throw CLI::ValidationError("dap-demo", "expects AMBIENT FAMILIES H or no files");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  p.seed_given = seed_opt->count() > 0 || dap_seed->count() > 0;

  try {
    if (validate->parsed()) return cmd_validate(p, out);
    if (amalgamate->parsed()) return cmd_amalgamate(p, out);
    if (extend->parsed()) return cmd_extend_point(p, out);
    if (embed->parsed()) return cmd_embed(p, out);
    if (build->parsed()) return cmd_build(p, out, err);
    if (random->parsed()) return cmd_random_space(p, out);
    if (enumerate->parsed()) return cmd_enumerate(p, out);
    if (baf->parsed()) return cmd_back_and_forth(p, out);
    if (dap_demo->parsed()) return cmd_dap_demo(p, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace urysohn::cli
