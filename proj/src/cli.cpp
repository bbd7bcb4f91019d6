#include "mrfmoves/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "mrfmoves/energy.hpp"
#include "mrfmoves/generators.hpp"
#include "mrfmoves/io.hpp"
#include "mrfmoves/schedule.hpp"

namespace mrfmoves {

namespace {

// Carries an exit code out of a subcommand.
struct CliFailure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure{kExitParseError, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CliFailure{kExitParseError, "cannot write " + path};
    out << content;
    if (!out) throw CliFailure{kExitParseError, "cannot write " + path};
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw CliFailure{kExitParseError, "cannot write " + path + ": " + ec.message()};
}

Instance load_instance(const std::string& path) {
  try {
    return parse_instance(read_file(path));
  } catch (const ParseError& e) {
    throw CliFailure{kExitParseError, path + ": " + e.what()};
  }
}

struct SolveArgs {
  std::string in;
  std::string method = "expansion";
  std::string init = "first-state";
  std::uint64_t seed = 0;
  int max_sweeps = 1000;
  double eps = kDefaultEps;
  std::string out;
  std::string report;
};

int do_solve(const SolveArgs& a, std::ostream& out) {
  const bool icm = a.method == "icm";
  const std::optional<MethodKind> kind = parse_method(a.method);
  if (!icm && !kind) throw CliFailure{kExitBadFlags, "unknown method '" + a.method + "'"};
  if (a.max_sweeps < 1) throw CliFailure{kExitBadFlags, "--max-sweeps must be >= 1"};
  if (!(a.eps >= 0.0)) throw CliFailure{kExitBadFlags, "--eps must be >= 0"};

  const Instance inst = load_instance(a.in);
  Labeling init;
  if (a.init == "first-state") {
    init = first_state_labeling(inst);
  } else {
    std::istringstream in(read_file(a.init));
    try {
      init = parse_labeling(in);
    } catch (const ParseError& e) {
      throw CliFailure{kExitParseError, a.init + ": " + e.what()};
    }
    if (!inst.is_valid_labeling(init))
      throw CliFailure{kExitParseError, a.init + ": labeling does not fit the instance"};
  }

  RunOptions options;
  options.max_sweeps = a.max_sweeps;
  options.eps = a.eps;
  const RunReport report = icm ? run_icm(inst, init, {}, options)
                               : run(inst, init, Method{*kind, a.seed}, options);
  const StoredReport stored = to_stored(report, instance_hash(inst));

  if (!a.out.empty()) write_file(a.out, serialize_labeling(report.final_labeling));
  if (!a.report.empty()) write_file(a.report, report_to_json(stored));
  out << "method " << report.method << "\n"
      << "initial_energy " << format_number(report.initial_energy) << "\n"
      << "final_energy " << format_number(report.final_energy) << "\n"
      << "sweeps " << report.sweeps << "\n"
      << "accepted_moves " << stored.accepted_moves << "\n"
      << "truncation_used " << (report.truncation_used ? "true" : "false") << "\n";
  return kExitOk;
}

int do_check(const std::string& path, bool pairwise, bool triangle,
             std::ostream& out) {
  if (pairwise == triangle)
    throw CliFailure{kExitBadFlags, "pass exactly one of --pairwise-submodular, --triangle"};
  const Instance inst = load_instance(path);
  int violations = 0;
  for (const Edge& e : inst.edges()) {
    out << "edge " << e.i << " " << e.j;
    if (pairwise) {
      if (auto v = check_pairwise_submodular(e.table)) {
        ++violations;
        out << " violation alpha=" << v->alpha + 1 << " beta=" << v->beta + 1 << "\n";
        continue;
      }
    } else if (auto v = check_triangle(e.table)) {
      ++violations;
      out << " violation alpha=" << v->alpha + 1 << " gamma1=" << v->gamma1 + 1
          << " gamma2=" << v->gamma2 + 1 << "\n";
      continue;
    }
    out << " holds\n";
  }
  out << (violations == 0 ? "all edges hold"
                          : std::to_string(violations) + " edge(s) violate")
      << "\n";
  return violations == 0 ? kExitOk : kExitCheckFailed;
}

StoredReport load_report(const std::string& path) {
  try {
    return report_from_json(read_file(path));
  } catch (const ParseError& e) {
    throw CliFailure{kExitParseError, path + ": " + e.what()};
  }
}

int do_report(const std::string& baseline_path,
              const std::vector<std::string>& run_paths,
              const std::string& out_path, std::ostream& out) {
  const StoredReport baseline = load_report(baseline_path);
  std::string table = "# baseline " + baseline.method + " " +
                      format_number(baseline.final_energy) + "\n";
  if (baseline.final_energy == 0.0)
    table += "# baseline energy is 0; absolute energies shown\n";
  table += "method ratio\n";
  for (const std::string& path : run_paths) {
    const StoredReport run = load_report(path);
    if (run.instance_hash != baseline.instance_hash)
      throw CliFailure{kExitInconsistent,
                       path + " was computed on a different instance than the baseline"};
    table += run.method + " " + format_relative(run.final_energy, baseline.final_energy) + "\n";
  }
  if (out_path.empty())
    out << table;
  else
    write_file(out_path, table);
  return kExitOk;
}

struct GenerateArgs {
  std::string kind;
  int rows = 3;
  int cols = 3;
  int states = 2;
  std::uint64_t seed = 0;
  double lambda = 1.0;
  double slope = 1.0;
  double cap = 2.0;
  int magnitude = 20;
  bool force_triangle = false;
  std::string unary = "random";
  double weight = 1.0;
  int max_nodes = 6;
  int max_states = 4;
  bool triangle = false;
  std::string out;
};

int do_generate(const GenerateArgs& a, std::ostream& out) {
  Instance inst;
  if (a.kind == "random-small") {
    if (a.max_nodes < 1 || a.max_states < 1)
      throw CliFailure{kExitBadFlags, "--max-nodes and --max-states must be >= 1"};
    inst = random_small(a.seed, a.max_nodes, a.max_states, a.triangle);
  } else {
    if (a.rows < 1 || a.cols < 1 || a.states < 1)
      throw CliFailure{kExitBadFlags, "--rows, --cols and --states must be >= 1"};
    GridSpec spec;
    spec.rows = a.rows;
    spec.cols = a.cols;
    spec.num_states = a.states;
    if (a.kind == "potts-grid")
      spec.pairwise = PottsPairwise{a.lambda};
    else if (a.kind == "trunclin-grid")
      spec.pairwise = TruncatedLinearPairwise{a.slope, a.cap};
    else if (a.kind == "truncquad-grid")
      spec.pairwise = TruncatedQuadraticPairwise{a.slope, a.cap};
    else if (a.kind == "random-grid")
      spec.pairwise = RandomTablePairwise{a.seed + 1, a.magnitude, a.force_triangle};
    else
      throw CliFailure{kExitBadFlags, "unknown kind '" + a.kind + "'"};
    if (a.unary == "random") {
      spec.unary = RandomUnary{a.seed, a.magnitude};
    } else if (a.unary == "observation") {
      const Observation obs = synthetic_observation(a.seed, a.rows, a.cols, a.states);
      spec.unary = ObservationUnary{obs.observed, obs.masked, a.weight};
    } else {
      throw CliFailure{kExitBadFlags, "unknown unary kind '" + a.unary + "'"};
    }
    inst = generate(spec);
  }
  const std::string text = serialize_instance(inst);
  if (a.out.empty())
    out << text;
  else
    write_file(a.out, text);
  return kExitOk;
}

int do_export_pgm(const std::string& labels_path, int rows, int cols, int states,
                  const std::string& out_path) {
  std::istringstream in(read_file(labels_path));
  Labeling x;
  try {
    x = parse_labeling(in);
  } catch (const ParseError& e) {
    throw CliFailure{kExitParseError, labels_path + ": " + e.what()};
  }
  int n = states;
  if (n <= 0) {
    n = 1;
    for (int s : x) n = std::max(n, s + 1);
  }
  try {
    write_file(out_path, labeling_pgm(x, rows, cols, n));
  } catch (const InvalidInput& e) {
    throw CliFailure{kExitInconsistent, e.what()};
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Move-making energy minimization for pairwise MRFs", "mrfmoves"};
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "run a move-making schedule");
  solve_cmd->add_option("--in", solve.in, "instance file")->required();
  solve_cmd->add_option("--method", solve.method,
                        "icm|swap|expansion|expshrink-random|expshrink-prev|"
                        "expshrink-next|expshrink-all");
  solve_cmd->add_option("--init", solve.init, "first-state or a labeling file");
  solve_cmd->add_option("--seed", solve.seed, "seed for expshrink-random");
  solve_cmd->add_option("--max-sweeps", solve.max_sweeps);
  solve_cmd->add_option("--eps", solve.eps, "energy tolerance");
  solve_cmd->add_option("--out", solve.out, "final labeling file");
  solve_cmd->add_option("--report", solve.report, "JSON run report");

  std::string check_in;
  bool check_pairwise = false;
  bool check_triangle_flag = false;
  CLI::App* check_cmd = app.add_subcommand("check", "check pairwise conditions per edge");
  check_cmd->add_option("--in", check_in, "instance file")->required();
  check_cmd->add_flag("--pairwise-submodular", check_pairwise);
  check_cmd->add_flag("--triangle", check_triangle_flag);

  std::string baseline;
  std::vector<std::string> runs;
  std::string table_out;
  CLI::App* report_cmd = app.add_subcommand("report", "relative energy table");
  report_cmd->add_option("--baseline", baseline, "baseline run report")->required();
  report_cmd->add_option("--runs", runs, "run reports")->required();
  report_cmd->add_option("--out", table_out, "table file (stdout if omitted)");

  GenerateArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("generate", "write a synthetic instance");
  gen_cmd->add_option("--kind", gen.kind, "potts-grid|trunclin-grid|truncquad-grid|random-grid|random-small")
      ->required();
  gen_cmd->add_option("--rows", gen.rows);
  gen_cmd->add_option("--cols", gen.cols);
  gen_cmd->add_option("--states", gen.states);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--lambda", gen.lambda, "Potts weight");
  gen_cmd->add_option("--slope", gen.slope, "truncated-linear slope or truncated-quadratic weight");
  gen_cmd->add_option("--cap", gen.cap, "truncation cap");
  gen_cmd->add_option("--magnitude", gen.magnitude, "largest random energy");
  gen_cmd->add_flag("--force-triangle", gen.force_triangle);
  gen_cmd->add_option("--unary", gen.unary, "random|observation");
  gen_cmd->add_option("--weight", gen.weight, "observation data weight");
  gen_cmd->add_option("--max-nodes", gen.max_nodes);
  gen_cmd->add_option("--max-states", gen.max_states);
  gen_cmd->add_flag("--triangle", gen.triangle, "random-small: project onto the triangle condition");
  gen_cmd->add_option("--out", gen.out, "instance file (stdout if omitted)");

  std::string pgm_labels;
  std::string pgm_out;
  int pgm_rows = 0;
  int pgm_cols = 0;
  int pgm_states = 0;
  CLI::App* pgm_cmd = app.add_subcommand("export-pgm", "write a labeling as a P5 image");
  pgm_cmd->add_option("--labels", pgm_labels)->required();
  pgm_cmd->add_option("--rows", pgm_rows)->required();
  pgm_cmd->add_option("--cols", pgm_cols)->required();
  pgm_cmd->add_option("--states", pgm_states, "number of states (default: largest label)");
  pgm_cmd->add_option("--out", pgm_out)->required();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("mrfmoves");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadFlags;
  }

  try {
    if (*solve_cmd) return do_solve(solve, out);
    if (*check_cmd) return do_check(check_in, check_pairwise, check_triangle_flag, out);
    if (*report_cmd) return do_report(baseline, runs, table_out, out);
    if (*gen_cmd) return do_generate(gen, out);
    if (*pgm_cmd) return do_export_pgm(pgm_labels, pgm_rows, pgm_cols, pgm_states, pgm_out);
  } catch (const CliFailure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInconsistent;
  }
  return kExitBadFlags;
}

}  // namespace mrfmoves
