#include "conedini/io.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace conedini::io {

using nlohmann::json;

namespace {

double parse_double(std::string_view s, std::size_t line) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("line " + std::to_string(line) + ": cannot parse number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("json: ") + e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("json: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("json: field '") + key + "': " + e.what());
  }
}

json basis_json(const Subspace& v) { return v.basis(); }

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void write_measure_csv(std::ostream& out, const AtomicMeasure& mu) {
  out << "# n=" << mu.ambient_dim() << " K=" << mu.depth() << '\n';
  for (const auto& a : mu.atoms()) {
    for (double c : a.x) out << format_double(c) << ',';
    out << format_double(a.weight);
    if (!a.label.empty()) out << ',' << a.label;
    out << '\n';
  }
}

AtomicMeasure read_measure_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  long n = -1;
  long depth = -1;
  std::vector<Atom> atoms;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream hs(line.substr(1));
      std::string tok;
      while (hs >> tok) {
        if (tok.rfind("n=", 0) == 0) n = std::stol(tok.substr(2));
        else if (tok.rfind("K=", 0) == 0) depth = std::stol(tok.substr(2));
      }
      continue;
    }
    if (n < 1 || depth < 0) throw InputError("measure csv: missing '# n=<n> K=<K>' header");
    const auto fields = split(line, ',');
    const std::size_t nn = static_cast<std::size_t>(n);
    if (fields.size() != nn + 1 && fields.size() != nn + 2) {
      throw InputError("measure csv line " + std::to_string(lineno) + ": expected " + std::to_string(nn + 1) +
                       " or " + std::to_string(nn + 2) + " fields");
    }
    Atom a;
    for (std::size_t i = 0; i < nn; ++i) a.x.push_back(parse_double(fields[i], lineno));
    a.weight = parse_double(fields[nn], lineno);
    if (fields.size() == nn + 2) a.label = std::string(fields[nn + 1]);
    atoms.push_back(std::move(a));
  }
  if (n < 1 || depth < 0) throw InputError("measure csv: missing '# n=<n> K=<K>' header");
  return AtomicMeasure(static_cast<std::size_t>(n), static_cast<int>(depth), std::move(atoms));
}

std::string measure_to_json(const AtomicMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms()) {
    json j{{"x", a.x}, {"weight", a.weight}};
    if (!a.label.empty()) j["label"] = a.label;
    atoms.push_back(std::move(j));
  }
  return json{{"n", mu.ambient_dim()}, {"K", mu.depth()}, {"atoms", atoms}}.dump(2);
}

AtomicMeasure measure_from_json(const std::string& text) {
  const json j = parse_json(text);
  const auto n = field<std::size_t>(j, "n");
  const auto depth = field<int>(j, "K");
  std::vector<Atom> atoms;
  for (const auto& a : field<json>(j, "atoms")) {
    Atom at{field<Point>(a, "x"), field<double>(a, "weight"), {}};
    if (a.contains("label")) at.label = field<std::string>(a, "label");
    atoms.push_back(std::move(at));
  }
  return AtomicMeasure(n, depth, std::move(atoms));
}

AtomicMeasure load_measure(const std::string& path) {
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return measure_from_json(read_file(path));
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_measure_csv(in);
}

void save_measure(const std::string& path, const AtomicMeasure& mu) {
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    write_file(path, measure_to_json(mu) + "\n");
    return;
  }
  std::ostringstream out;
  write_measure_csv(out, mu);
  write_file(path, out.str());
}

std::string cone_to_json(const Cone& cone) {
  const Subspace& v = cone.subspace();
  return json{{"n", v.ambient_dim()}, {"m", v.dim()}, {"basis", basis_json(v)}, {"alpha", cone.alpha()}}.dump(2);
}

Cone cone_from_json(const std::string& text) {
  const json j = parse_json(text);
  const auto n = field<std::size_t>(j, "n");
  const auto m = field<std::size_t>(j, "m");
  const auto basis = field<std::vector<Point>>(j, "basis");
  const auto alpha = field<double>(j, "alpha");
  if (basis.size() != m) throw InputError("cone json: basis must have m vectors");
  if (!(alpha > 0.0)) throw InputError("cone json: alpha must be positive");
  return Cone(Subspace::from_orthonormal(n, basis), alpha);
}

std::string cube_to_json(const DyadicCube& q) { return json{{"k", q.k}, {"j", q.j}}.dump(); }

DyadicCube cube_from_json(const std::string& text) {
  const json j = parse_json(text);
  return DyadicCube{field<int>(j, "k"), field<std::vector<Coord>>(j, "j")};
}

std::string patch_to_json(const LipGraphPatch& patch) {
  return json{{"basis", basis_json(patch.subspace)},
              {"alpha", patch.alpha},
              {"anchors", patch.anchors},
              {"audited_constant", patch.audited_constant}}
      .dump(2);
}

LipGraphPatch patch_from_json(const std::string& text) {
  const json j = parse_json(text);
  const auto basis = field<std::vector<Point>>(j, "basis");
  if (basis.empty()) throw InputError("patch json: empty basis");
  LipGraphPatch p{Subspace::from_orthonormal(basis.front().size(), basis), field<double>(j, "alpha"),
                  field<std::vector<Point>>(j, "anchors"), 0.0};
  if (!(p.alpha >= 0.0)) throw InputError("patch json: alpha must be nonnegative");
  for (const auto& a : p.anchors)
    if (a.size() != p.subspace.ambient_dim()) throw InputError("patch json: anchor dimension mismatch");
  p.audited_constant = j.contains("audited_constant")
                           ? field<double>(j, "audited_constant")
                           : p.alpha * std::sqrt(static_cast<double>(p.subspace.ambient_dim() - p.subspace.dim()));
  return p;
}

std::string grid_to_json(const ConeGrid& grid) {
  json cones = json::array();
  for (std::size_t id = 0; id < grid.size(); ++id) {
    cones.push_back({{"id", id}, {"basis", basis_json(grid.cones[id].subspace())}, {"alpha", grid.cones[id].alpha()}});
  }
  return json{{"n", grid.n},   {"m", grid.m},   {"D", grid.resolution}, {"N_alpha", grid.alpha_levels},
              {"seed", grid.seed}, {"cones", cones}}
      .dump(2);
}

void write_dini_csv(std::ostream& out, const AtomicMeasure& mu, const std::vector<std::size_t>& cone_ids, int depth,
                    const std::vector<double>& values) {
  if (cone_ids.size() != mu.size() || values.size() != mu.size()) throw InputError("dini csv: size mismatch");
  out << "atom_index";
  for (std::size_t i = 1; i <= mu.ambient_dim(); ++i) out << ",x_" << i;
  out << ",weight,label,cone_id,K,dini_value\n";
  for (std::size_t a = 0; a < mu.size(); ++a) {
    const Atom& at = mu.atom(a);
    out << a;
    for (double c : at.x) out << ',' << format_double(c);
    out << ',' << format_double(at.weight) << ',' << at.label << ',' << cone_ids[a] << ',' << depth << ','
        << format_double(values[a]) << '\n';
  }
}

std::string report_to_json(const DecompositionReport& report) {
  json per_atom = json::array();
  for (std::size_t i = 0; i < report.atoms.size(); ++i) {
    const auto& v = report.atoms[i];
    per_atom.push_back({{"idx", i}, {"best_cone", v.best_cone}, {"G", v.g}, {"class", to_string(v.cls)}});
  }
  json out{{"params",
            {{"K", report.depth}, {"theta", report.theta}, {"theta_adaptive", report.theta_adaptive},
             {"grid", report.grid}}},
           {"per_atom", per_atom},
           {"masses", {{"carried", report.carried_mass}, {"singular", report.singular_mass}}}};
  if (report.confusion) {
    const Confusion& c = *report.confusion;
    out["confusion"] = {{"graph_carried", c.graph_carried},
                        {"graph_singular", c.graph_missed},
                        {"other_carried", c.other_carried},
                        {"other_singular", c.other_singular}};
  }
  return out.dump(2);
}

std::string extraction_to_json(const GraphExtraction& extraction) {
  json list = json::array();
  for (const auto& p : extraction.patches) {
    list.push_back({{"basis", basis_json(p.patch.subspace)},
                    {"alpha", p.patch.alpha},
                    {"anchor_points", p.patch.anchors},
                    {"covered_mass", p.covered_mass}});
  }
  return list.dump(2);
}

std::string annulus_to_json(const Cone& cone, const DyadicCube& q, const std::vector<DyadicCube>& cubes) {
  json list = json::array();
  for (const auto& r : cubes) list.push_back({{"k", r.k}, {"j", r.j}});
  return json{{"cone", json::parse(cone_to_json(cone))},
              {"cube", {{"k", q.k}, {"j", q.j}}},
              {"r", radius_r(q, cone)},
              {"s", radius_s(q, cone)},
              {"delta_star", list}}
      .dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
  if (!out) throw InputError("failed writing " + path);
}

}  // namespace conedini::io
