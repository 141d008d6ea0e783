#include "conedini/cli.hpp"
#include "conedini/decompose.hpp"
#include "conedini/generators.hpp"
#include "conedini/io.hpp"

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace conedini;
using testsupport::Rng;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path p = fs::temp_directory_path() / ("conedini_test_app_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

const Subspace kXAxis = Subspace::coordinate(2, 1);

}  // namespace

TEST_CASE("four-corner generator") {
  const AtomicMeasure one = gen_four_corner(1);
  REQUIRE(one.size() == 4);
  const std::vector<Point> centers{{0.125, 0.125}, {0.875, 0.125}, {0.125, 0.875}, {0.875, 0.875}};
  for (const auto& c : centers) {
    bool found = false;
    for (const auto& a : one.atoms()) found = found || (a.x == c && a.weight == 0.25 && a.label == "cantor");
    CHECK(found);
  }
  for (int d = 1; d <= 6; ++d) {
    const AtomicMeasure mu = gen_four_corner(d);
    CHECK(mu.size() == std::size_t{1} << (2 * d));
    CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(gen_four_corner(3).size() == 64);
  // Depth-2 atoms: cell centers of the sixteen cells of side 1/16.
  const AtomicMeasure two = gen_four_corner(2);
  for (const auto& a : two.atoms())
    for (double c : a.x) {
      const double cell = (c - 1.0 / 32) * 16;
      CHECK(cell == std::round(cell));
    }
  CHECK_THROWS_AS(gen_four_corner(0), InputError);
}

TEST_CASE("graph and mixture generators") {
  GraphSpec spec;
  spec.count = 100;
  spec.seed = 4;
  const GeneratedGraph g = gen_graph(spec);
  CHECK(g.measure.size() == 100);
  CHECK(g.measure.total_mass() == doctest::Approx(1.0));
  CHECK(g.field.certified_constant() <= 0.5);
  std::vector<Point> pts;
  for (const auto& a : g.measure.atoms()) pts.push_back(a.x);
  CHECK(verify_cone_condition(pts, g.subspace, 1.0).holds);

  const AtomicMeasure mix = gen_mixture(200, 3, 1);
  double graph_mass = 0.0;
  double cantor_mass = 0.0;
  for (const auto& a : mix.atoms()) (a.label == "graph" ? graph_mass : cantor_mass) += a.weight;
  CHECK(graph_mass == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cantor_mass == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mix.size() == 200 + 64);
}

TEST_CASE("decompose examples") {
  const ConeGrid grid = cone_grid(2, 1, 8, 2);
  SUBCASE("theta = -1 sends everything to the singular side") {
    const AtomicMeasure mu = gen_mixture(60, 2, 3);
    const auto rep = decompose(mu, grid, 6, -1.0);
    for (const auto& v : rep.atoms) CHECK(v.cls == AtomClass::SingularSuspect);
    CHECK(rep.carried_mass == 0.0);
    CHECK(rep.singular_mass + rep.carried_mass == mu.total_mass());
  }
  SUBCASE("single atom is graph-carried") {
    const AtomicMeasure mu(2, 8, {{{0.3, 0.4}, 2.0, ""}});
    const auto rep = decompose(mu, grid, 8);
    CHECK(rep.atoms[0].g == 0.0);
    CHECK(rep.atoms[0].cls == AtomClass::GraphCarried);
    CHECK(rep.carried_mass == 2.0);
    CHECK_FALSE(rep.confusion.has_value());
  }
  SUBCASE("graph measure is fully carried at theta = 0") {
    GraphSpec spec;
    spec.count = 200;
    const AtomicMeasure mu = gen_graph(spec).measure;
    const auto rep = decompose(mu, grid, 8, 0.0);
    for (const auto& v : rep.atoms) CHECK(v.g == 0.0);
    CHECK(rep.carried_mass == mu.total_mass());
    REQUIRE(rep.confusion.has_value());
    CHECK(rep.confusion->graph_carried == 200);
  }
  SUBCASE("bookkeeping") {
    const AtomicMeasure mu = gen_mixture(80, 3, 5);
    const auto rep = decompose(mu, grid, 8);
    CHECK(rep.theta_adaptive);
    CHECK(rep.theta >= 1e-9);
    REQUIRE(rep.confusion.has_value());
    CHECK(rep.confusion->total() == mu.size());
    CHECK(std::abs(rep.carried_mass + rep.singular_mass - mu.total_mass()) <= 1e-12 * mu.total_mass());
    const auto table = dini_table(mu, grid, 8);
    for (std::size_t a = 0; a < mu.size(); ++a) {
      double best = table[0][a];
      std::size_t id = 0;
      for (std::size_t c = 1; c < table.size(); ++c)
        if (table[c][a] < best) best = table[c][a], id = c;
      CHECK(rep.atoms[a].g == best);
      CHECK(rep.atoms[a].best_cone == id);
      CHECK((rep.atoms[a].cls == AtomClass::GraphCarried) == (best <= rep.theta));
    }
    const auto [carried, singular] = split_measure(mu, rep);
    CHECK(carried.size() + singular.size() == mu.size());
    CHECK(carried.total_mass() == rep.carried_mass);
  }
  SUBCASE("adaptive theta") {
    CHECK(adaptive_theta({0.0, 5.0, 4.0, 1.0}) == 2.0);
    CHECK(adaptive_theta({0.0, 0.5, 0.0}) == 1e-9);
    CHECK(adaptive_theta({}) == 1e-9);
  }
  CHECK_THROWS_AS(decompose(gen_four_corner(1), ConeGrid{}, 4), InputError);
}

TEST_CASE("integral diagnostic") {
  const Cone cone(kXAxis, 1.0);
  const Point x0{0.5, 0.5};
  const AtomicMeasure graph = sample_graph(kXAxis, 0.5, SineField::random(1, 1, 0.5, 2, 3, 0.5), 200,
                                           Box{{0.0}, {1.0}}, 6, 8, 1.0);
  auto with_extra = [&](Point p, double w) {
    std::vector<Atom> atoms = graph.atoms();
    atoms.push_back({std::move(p), w, "other"});
    return AtomicMeasure(2, 8, atoms);
  };
  SUBCASE("pure graph") {
    const auto d = integral_diagnostic(graph, cone, x0, 1.0, 8);
    CHECK(d.lhs == 0.0);
    CHECK(d.rhs == 0.0);
    CHECK(d.consistent);
  }
  SUBCASE("off-graph atom outside every annulus") {
    // 116 above the graph: beyond r = 81 sqrt 2 of every generation 0..8 cube,
    // inside r0 + 83 sqrt 2.
    const auto d = integral_diagnostic(with_extra({0.5, 117.0}, 3.0), cone, x0, 1.0, 8);
    CHECK(d.lhs == 0.0);
    CHECK(d.rhs == 3.0);
    CHECK(d.ratio == 0.0);
  }
  SUBCASE("off-graph atom inside an annulus") {
    const auto d = integral_diagnostic(with_extra({0.5, 76.5}, 1.0), cone, x0, 1.0, 8);
    CHECK(d.lhs > 0.0);
    CHECK(d.rhs == 1.0);
    CHECK(d.ratio == d.lhs);
    CHECK(d.consistent);
  }
}

TEST_CASE("io round trips") {
  Rng rng(91);
  std::vector<Atom> atoms;
  for (int i = 0; i < 50; ++i) atoms.push_back({rng.point(3, -5.0, 5.0), rng.uniform(0.001, 3.0), i % 2 ? "graph" : ""});
  const AtomicMeasure mu(3, 6, atoms);
  std::stringstream csv;
  io::write_measure_csv(csv, mu);
  const AtomicMeasure back = io::read_measure_csv(csv);
  REQUIRE(back.size() == mu.size());
  CHECK(back.depth() == 6);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    CHECK(back.atom(i).x == mu.atom(i).x);
    CHECK(back.atom(i).weight == mu.atom(i).weight);
    CHECK(back.atom(i).label == mu.atom(i).label);
  }
  const AtomicMeasure jb = io::measure_from_json(io::measure_to_json(mu));
  for (std::size_t i = 0; i < mu.size(); ++i) CHECK(jb.atom(i).x == mu.atom(i).x);

  const Cone cone(rng.subspace(3, 2), 1.7);
  const Cone cb = io::cone_from_json(io::cone_to_json(cone));
  CHECK(cb.alpha() == 1.7);
  CHECK(cb.subspace().basis() == cone.subspace().basis());

  const DyadicCube q{-3, {4, -2, 7}};
  CHECK(io::cube_from_json(io::cube_to_json(q)) == q);

  const LipGraphPatch p = make_patch(kXAxis, 1.0, {{0.0, 0.0}, {1.0, 0.5}});
  const LipGraphPatch pb = io::patch_from_json(io::patch_to_json(p));
  CHECK(pb.anchors == p.anchors);
  CHECK(pb.audited_constant == p.audited_constant);

  std::istringstream bad_weight("# n=2 K=3\n0.1,0.2,-1\n");
  CHECK_THROWS_AS(io::read_measure_csv(bad_weight), InputError);
  std::istringstream no_header("0.1,0.2,1\n");
  CHECK_THROWS_AS(io::read_measure_csv(no_header), InputError);
  std::istringstream garbage("# n=2 K=3\n0.1,abc,1\n");
  CHECK_THROWS_AS(io::read_measure_csv(garbage), InputError);
  CHECK_THROWS_AS(io::cone_from_json("{\"n\":2}"), InputError);
  CHECK(io::format_double(0.1) == "0.1");
}

TEST_CASE("cli") {
  const fs::path dir = scratch_dir();
  const std::string m = (dir / "m.csv").string();
  const std::string cone = (dir / "cone.json").string();
  io::write_file(cone, io::cone_to_json(Cone(kXAxis, 1.0)));

  SUBCASE("gen cantor") {
    const auto r = cli({"gen", "cantor", "--depth", "3", "-o", m});
    CHECK(r.code == 0);
    const std::string text = io::read_file(m);
    CHECK(count_lines(text) == 65);
    CHECK(text.rfind("# n=2 K=3\n", 0) == 0);
  }
  SUBCASE("analyze") {
    REQUIRE(cli({"gen", "cantor", "--depth", "3", "-o", m}).code == 0);
    const std::string out = (dir / "dini.csv").string();
    const auto r = cli({"analyze", m, "--grid", "8,2", "-K", "8", "-o", out});
    CHECK(r.code == 0);
    const std::string text = io::read_file(out);
    CHECK(count_lines(text) == 65);
    CHECK(text.rfind("atom_index,x_1,x_2,weight,label,cone_id,K,dini_value\n", 0) == 0);
    const auto single = cli({"analyze", m, "--cone", cone, "-K", "3"});
    CHECK(single.code == 0);
    CHECK(count_lines(single.out) == 65);
  }
  SUBCASE("decompose on a labeled mixture") {
    REQUIRE(cli({"gen", "mixture", "--count", "100", "--cantor-depth", "3", "--seed", "2", "-o", m}).code == 0);
    const auto r = cli({"decompose", m, "--grid", "8,2", "-K", "8"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto& c = j.at("confusion");
    const std::size_t total = c.at("graph_carried").get<std::size_t>() + c.at("graph_singular").get<std::size_t>() +
                              c.at("other_carried").get<std::size_t>() + c.at("other_singular").get<std::size_t>();
    CHECK(total == 164);
    CHECK(j.at("per_atom").size() == 164);
    CHECK(c.at("graph_singular").get<int>() == 0);
  }
  SUBCASE("extract-graphs and check-graph") {
    REQUIRE(cli({"gen", "graph", "--count", "150", "--seed", "3", "-o", m}).code == 0);
    const auto r = cli({"extract-graphs", m, "--cone", cone, "--delta", "0.1", "-K", "8"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() > 0);
    double covered = 0.0;
    for (const auto& p : j) covered += p.at("covered_mass").get<double>();
    CHECK(covered == doctest::Approx(1.0).epsilon(1e-9));

    const std::string good = (dir / "good.json").string();
    io::write_file(good, io::patch_to_json(make_patch(kXAxis, 1.0, {{0.0, 0.0}, {1.0, 1.0}})));
    const auto ok = cli({"check-graph", good});
    CHECK(ok.code == 0);
    CHECK(ok.out == "ok 2 anchors\n");
    const std::string bad = (dir / "bad.json").string();
    io::write_file(bad, R"({"basis":[[1,0]],"alpha":1,"anchors":[[0,0],[0,1]]})");
    const auto viol = cli({"check-graph", bad});
    CHECK(viol.code == 2);
    CHECK(viol.out == "violation 0 1\n");
  }
  SUBCASE("annulus dump") {
    const auto r = cli({"annulus", "dump", "--cone", cone, "--cube", R"({"k":2,"j":[1,1]})"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("delta_star").size() == AnnulusPattern(Cone(kXAxis, 1.0)).offsets().size());
    CHECK(j.at("r").get<double>() == doctest::Approx(81 * std::sqrt(2.0) / 4));
  }
  SUBCASE("errors") {
    const auto unknown = cli({"gen", "cantor", "--bogus"});
    CHECK(unknown.code == 1);
    CHECK(unknown.err.find("Usage") != std::string::npos);
    CHECK(cli({}).code == 1);
    CHECK(cli({"analyze", (dir / "missing.csv").string()}).code == 1);
    CHECK(cli({"analyze", m, "--grid", "8"}).code == 1);
    CHECK(cli({"gen", "cantor", "--depth", "0"}).code == 1);
    CHECK(cli({"--help"}).code == 0);
  }
  fs::remove_all(dir);
}
