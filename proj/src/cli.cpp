#include "conedini/cli.hpp"

#include "conedini/conefamily.hpp"
#include "conedini/decompose.hpp"
#include "conedini/generators.hpp"
#include "conedini/io.hpp"
#include "conedini/tree.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>

namespace conedini {

namespace {

struct GridArg {
  int resolution = 8;
  int alpha_levels = 2;
};

GridArg parse_grid(const std::string& s) {
  GridArg g;
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(s);
    std::size_t used = 0;
    g.resolution = std::stoi(s.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument(s);
    const std::string rest = s.substr(comma + 1);
    g.alpha_levels = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw InputError("--grid expects D,N_alpha (got '" + s + "')");
  }
  return g;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") out << text;
  else io::write_file(path, text);
}

void apply_thread_cap() {
  const char* env = std::getenv("CONEDINI_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw InputError("CONEDINI_THREADS must be a positive integer");
  omp_set_num_threads(static_cast<int>(v));
}

DyadicCube cube_argument(const std::string& s, std::size_t n) {
  if (s.empty()) return DyadicCube{0, std::vector<Coord>(n, 0)};
  const std::string text = s.front() == '{' ? s : io::read_file(s);
  DyadicCube q = io::cube_from_json(text);
  if (q.dim() != n) throw InputError("cube and cone dimensions differ");
  return q;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conical defect and Dini function analysis of atomic measures", "conedini"};
  app.require_subcommand(1);

  std::string output;
  std::uint64_t seed = 0;
  int depth = 8;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate fixture measures");
  gen->require_subcommand(1);
  GraphSpec gspec;
  auto* gen_graph_cmd = gen->add_subcommand("graph", "Atoms on a random Lipschitz graph");
  gen_graph_cmd->add_option("--n", gspec.n, "Ambient dimension")->capture_default_str();
  gen_graph_cmd->add_option("--m", gspec.m, "Graph dimension")->capture_default_str();
  gen_graph_cmd->add_option("--alpha", gspec.alpha, "Cone opening; the graph has constant alpha/2")
      ->capture_default_str();
  gen_graph_cmd->add_option("--count", gspec.count, "Number of atoms")->capture_default_str();
  gen_graph_cmd->add_flag("--random-direction", gspec.random_direction, "Draw V at random");
  gen_graph_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  gen_graph_cmd->add_option("--depth,-K", depth, "Index depth")->capture_default_str();
  gen_graph_cmd->add_option("-o,--output", output, "Output file (CSV or .json)");

  int cantor_depth = 3;
  auto* gen_cantor_cmd = gen->add_subcommand("cantor", "Four-corner Cantor measure");
  gen_cantor_cmd->add_option("--depth,-K", cantor_depth, "Construction depth")->capture_default_str();
  gen_cantor_cmd->add_option("-o,--output", output, "Output file (CSV or .json)");

  std::size_t mix_count = 500;
  int mix_cantor = 5;
  auto* gen_mix_cmd = gen->add_subcommand("mixture", "Half graph, half Cantor, labeled");
  gen_mix_cmd->add_option("--count", mix_count, "Graph atoms")->capture_default_str();
  gen_mix_cmd->add_option("--cantor-depth", mix_cantor, "Cantor construction depth")->capture_default_str();
  gen_mix_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  gen_mix_cmd->add_option("--depth,-K", depth, "Index depth")->capture_default_str();
  gen_mix_cmd->add_option("-o,--output", output, "Output file (CSV or .json)");

  // analyze / decompose
  std::string measure_path;
  std::string grid_str = "8,2";
  std::string cone_path;
  std::size_t grid_m = 1;
  auto* analyze = app.add_subcommand("analyze", "Per-atom truncated Dini values, best cone of the grid");
  analyze->add_option("measure", measure_path, "Measure file")->required();
  analyze->add_option("--grid", grid_str, "D,N_alpha")->capture_default_str();
  analyze->add_option("--m", grid_m, "Dimension of the grid subspaces")->capture_default_str();
  analyze->add_option("--cone", cone_path, "Use a single cone from a JSON file instead of the grid");
  analyze->add_option("--seed", seed, "Grid seed")->capture_default_str();
  analyze->add_option("--depth,-K", depth, "Truncation depth")->capture_default_str();
  analyze->add_option("-o,--output", output, "Output CSV");

  std::optional<double> theta;
  auto* decomp = app.add_subcommand("decompose", "Graph-carried versus singular-suspect classification");
  decomp->add_option("measure", measure_path, "Measure file")->required();
  decomp->add_option("--grid", grid_str, "D,N_alpha")->capture_default_str();
  decomp->add_option("--m", grid_m, "Dimension of the grid subspaces")->capture_default_str();
  decomp->add_option("--seed", seed, "Grid seed")->capture_default_str();
  decomp->add_option("--depth,-K", depth, "Truncation depth")->capture_default_str();
  decomp->add_option("--theta", theta, "Threshold (adaptive when omitted)");
  decomp->add_option("-o,--output", output, "Output JSON");

  double delta = 0.1;
  auto* extract = app.add_subcommand("extract-graphs", "Draw Lipschitz graphs through the dyadic trees");
  extract->add_option("measure", measure_path, "Measure file")->required();
  extract->add_option("--cone", cone_path, "Cone JSON")->required();
  extract->add_option("--delta", delta, "Tail fraction in (0,1)")->capture_default_str();
  extract->add_option("--depth,-K", depth, "Tree depth")->capture_default_str();
  extract->add_option("-o,--output", output, "Output JSON");

  std::string patch_path;
  auto* check = app.add_subcommand("check-graph", "Verify the cone condition of a patch");
  check->add_option("patch", patch_path, "Patch JSON")->required();

  std::string cube_arg;
  auto* annulus = app.add_subcommand("annulus", "Discretized conical annulus tools");
  annulus->require_subcommand(1);
  auto* dump = annulus->add_subcommand("dump", "Emit Delta* of a cube as JSON");
  dump->add_option("--cone", cone_path, "Cone JSON")->required();
  dump->add_option("--cube", cube_arg, "Cube JSON text or file (default k=0, j=0)");
  dump->add_option("-o,--output", output, "Output JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    apply_thread_cap();

    if (*gen_graph_cmd) {
      gspec.seed = seed;
      gspec.index_depth = depth;
      const GeneratedGraph g = gen_graph(gspec);
      if (output.empty()) io::write_measure_csv(out, g.measure);
      else io::save_measure(output, g.measure);
    } else if (*gen_cantor_cmd) {
      const AtomicMeasure mu = gen_four_corner(cantor_depth, cantor_depth);
      if (output.empty()) io::write_measure_csv(out, mu);
      else io::save_measure(output, mu);
    } else if (*gen_mix_cmd) {
      const AtomicMeasure mu = gen_mixture(mix_count, mix_cantor, seed, depth);
      if (output.empty()) io::write_measure_csv(out, mu);
      else io::save_measure(output, mu);
    } else if (*analyze) {
      AtomicMeasure mu = io::load_measure(measure_path);
      if (depth < 0) throw InputError("depth must be nonnegative");
      if (depth > mu.depth()) mu = mu.reindexed(depth);
      std::vector<std::size_t> ids(mu.size(), 0);
      std::vector<double> values;
      if (!cone_path.empty()) {
        const Cone cone = io::cone_from_json(io::read_file(cone_path));
        if (cone.ambient_dim() != mu.ambient_dim()) throw InputError("cone and measure dimensions differ");
        values = dini_profile(mu, AnnulusPattern(cone), depth).atom_values;
      } else {
        const GridArg ga = parse_grid(grid_str);
        const ConeGrid grid = cone_grid(mu.ambient_dim(), grid_m, ga.resolution, ga.alpha_levels, seed);
        const auto table = dini_table(mu, grid, depth);
        values = table[0];
        for (std::size_t c = 1; c < table.size(); ++c) {
          for (std::size_t a = 0; a < mu.size(); ++a) {
            if (table[c][a] < values[a]) {
              values[a] = table[c][a];
              ids[a] = c;
            }
          }
        }
      }
      std::ostringstream s;
      io::write_dini_csv(s, mu, ids, depth, values);
      emit(output, s.str(), out);
    } else if (*decomp) {
      const AtomicMeasure mu = io::load_measure(measure_path);
      const GridArg ga = parse_grid(grid_str);
      const ConeGrid grid = cone_grid(mu.ambient_dim(), grid_m, ga.resolution, ga.alpha_levels, seed);
      const DecompositionReport rep = decompose(mu, grid, depth, theta);
      emit(output, io::report_to_json(rep) + "\n", out);
    } else if (*extract) {
      AtomicMeasure mu = io::load_measure(measure_path);
      const Cone cone = io::cone_from_json(io::read_file(cone_path));
      if (cone.ambient_dim() != mu.ambient_dim()) throw InputError("cone and measure dimensions differ");
      if (depth < 0) throw InputError("depth must be nonnegative");
      if (depth > mu.depth()) mu = mu.reindexed(depth);
      const GraphExtraction ex = extract_graphs(mu, AnnulusPattern(cone), delta, depth);
      for (const auto& p : ex.patches) {
        if (!verify_cone_condition(p.patch.anchors, p.patch.subspace, p.patch.alpha).holds) {
          throw ContractViolation("extracted patch fails the cone condition");
        }
      }
      if (!ex.tail_achieved) err << "warning: tail not achieved at depth " << depth << '\n';
      emit(output, io::extraction_to_json(ex) + "\n", out);
    } else if (*check) {
      const LipGraphPatch p = io::patch_from_json(io::read_file(patch_path));
      const ConeConditionResult r = verify_cone_condition(p.anchors, p.subspace, p.alpha);
      if (!r.holds) {
        out << "violation " << r.violation->first << ' ' << r.violation->second << '\n';
        return 2;
      }
      out << "ok " << p.anchors.size() << " anchors\n";
    } else if (*dump) {
      const Cone cone = io::cone_from_json(io::read_file(cone_path));
      const DyadicCube q = cube_argument(cube_arg, cone.ambient_dim());
      emit(output, io::annulus_to_json(cone, q, delta_star(q, cone)) + "\n", out);
    }
  } catch (const ContractViolation& e) {
    err << "contract violation: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace conedini
