#include "pmchemo/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "pmchemo/errors.hpp"

namespace pmchemo {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::vector<std::string>& allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const auto& k : allowed) {
      if (it.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ValidationError("unknown config key '" + where + it.key() + "'");
  }
}

double get_num(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ValidationError(std::string("config key '") + key + "' must be a number");
  return obj[key].get<double>();
}

void validate(const ScenarioConfig& c) {
  if (scenario_dim(c.scenario) != model_dim(c.model)) {
    throw ValidationError(std::string("model '") + to_string(c.model) +
                          "' does not match the dimension of scenario '" +
                          to_string(c.scenario) + "'");
  }
  const ModelParams& p = c.params;
  if (p.lambda < 0 || p.alpha < 0 || p.beta < 0 || p.delta < 0 || p.D_m < 0 || p.s < 0) {
    throw ValidationError("params: all coefficients must be >= 0");
  }
  if (c.grid.nx < 4 || (c.grid.dim == 2 && c.grid.ny < 4)) {
    throw ValidationError("grid: need at least 4 cells per axis");
  }
  if (c.grid.x_max <= c.grid.x_min || (c.grid.dim == 2 && c.grid.y_max <= c.grid.y_min)) {
    throw ValidationError("grid: empty extents");
  }
  if (c.grid.dim != scenario_dim(c.scenario)) {
    throw ValidationError("grid dimension does not match the scenario");
  }
  if (c.t_final < 0) throw ValidationError("t_final must be >= 0");
  for (double t : c.snapshot_times) {
    if (t < 0 || t > c.t_final * (1 + 1e-12) + 1e-12) {
      throw ValidationError("snapshot_times must lie in [0, t_final]");
    }
  }
  if (c.solver.chemo_rel_tol <= 0) throw ValidationError("solver.chemo_rel_tol must be > 0");
  if (c.solver.chemo_max_iter < 1) throw ValidationError("solver.chemo_max_iter must be >= 1");
  if (c.solver.nv < 2 || c.solver.nv % 2 != 0) {
    throw ValidationError("solver.nv must be an even count >= 2");
  }
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  reject_unknown(j, {"scenario", "model", "grid", "t_final", "params", "snapshot_times",
                     "tables", "solver"},
                 "");
  if (!j.contains("scenario") || !j.contains("model")) {
    throw ValidationError("config needs at least 'scenario' and 'model'");
  }
  ScenarioId scenario = scenario_from_string(j["scenario"].get<std::string>());
  ModelId model = model_from_string(j["model"].get<std::string>());
  ScenarioConfig c = default_config(scenario, model);

  if (j.contains("grid")) {
    const json& g = j["grid"];
    reject_unknown(g, {"x_min", "x_max", "nx", "y_min", "y_max", "ny"}, "grid.");
    c.grid.x_min = get_num(g, "x_min", c.grid.x_min);
    c.grid.x_max = get_num(g, "x_max", c.grid.x_max);
    c.grid.nx = static_cast<int>(get_num(g, "nx", c.grid.nx));
    c.grid.y_min = get_num(g, "y_min", c.grid.y_min);
    c.grid.y_max = get_num(g, "y_max", c.grid.y_max);
    c.grid.ny = static_cast<int>(get_num(g, "ny", c.grid.ny));
  }
  if (j.contains("t_final")) {
    c.t_final = get_num(j, "t_final", c.t_final);
    // keep the default observation cadence when times were not given
    c.snapshot_times = {0.0, c.t_final / 4, c.t_final / 2, 3 * c.t_final / 4, c.t_final};
  }
  if (j.contains("params")) {
    const json& p = j["params"];
    reject_unknown(p, {"lambda", "alpha", "beta", "delta", "D_m", "s"}, "params.");
    c.params.lambda = get_num(p, "lambda", c.params.lambda);
    c.params.alpha = get_num(p, "alpha", c.params.alpha);
    c.params.beta = get_num(p, "beta", c.params.beta);
    c.params.delta = get_num(p, "delta", c.params.delta);
    c.params.D_m = get_num(p, "D_m", c.params.D_m);
    c.params.s = get_num(p, "s", c.params.s);
  }
  if (j.contains("snapshot_times")) {
    if (!j["snapshot_times"].is_array()) throw ValidationError("snapshot_times must be an array");
    c.snapshot_times.clear();
    for (const auto& v : j["snapshot_times"]) c.snapshot_times.push_back(v.get<double>());
  }
  if (j.contains("tables")) {
    const json& t = j["tables"];
    reject_unknown(t, {"half", "quarter", "m1_1d", "m1_2d"}, "tables.");
    if (t.contains("half")) c.table_half = t["half"].get<std::string>();
    if (t.contains("quarter")) c.table_quarter = t["quarter"].get<std::string>();
    if (t.contains("m1_1d")) c.table_m1_line = t["m1_1d"].get<std::string>();
    if (t.contains("m1_2d")) c.table_m1_disk = t["m1_2d"].get<std::string>();
  }
  if (j.contains("solver")) {
    const json& s = j["solver"];
    reject_unknown(s,
                   {"chemo_rel_tol", "chemo_max_iter", "explicit_chemo",
                    "chemo_pre_transport_rho", "projection", "nv"},
                   "solver.");
    c.solver.chemo_rel_tol = get_num(s, "chemo_rel_tol", c.solver.chemo_rel_tol);
    c.solver.chemo_max_iter = static_cast<long>(get_num(s, "chemo_max_iter",
                                                        static_cast<double>(c.solver.chemo_max_iter)));
    if (s.contains("explicit_chemo")) c.solver.explicit_chemo = s["explicit_chemo"].get<bool>();
    if (s.contains("chemo_pre_transport_rho")) {
      c.solver.chemo_pre_transport_rho = s["chemo_pre_transport_rho"].get<bool>();
    }
    if (s.contains("projection")) c.solver.projection = s["projection"].get<bool>();
    c.solver.nv = static_cast<int>(get_num(s, "nv", c.solver.nv));
  }
  validate(c);
  return c;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open config file: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str());
}

std::string config_to_text(const ScenarioConfig& c) {
  json j;
  j["scenario"] = to_string(c.scenario);
  j["model"] = to_string(c.model);
  j["grid"]["x_min"] = c.grid.x_min;
  j["grid"]["x_max"] = c.grid.x_max;
  j["grid"]["nx"] = c.grid.nx;
  if (c.grid.dim == 2) {
    j["grid"]["y_min"] = c.grid.y_min;
    j["grid"]["y_max"] = c.grid.y_max;
    j["grid"]["ny"] = c.grid.ny;
  }
  j["t_final"] = c.t_final;
  j["params"]["lambda"] = c.params.lambda;
  j["params"]["alpha"] = c.params.alpha;
  j["params"]["beta"] = c.params.beta;
  j["params"]["delta"] = c.params.delta;
  j["params"]["D_m"] = c.params.D_m;
  j["params"]["s"] = c.params.s;
  j["snapshot_times"] = c.snapshot_times;
  if (!c.table_half.empty()) j["tables"]["half"] = c.table_half;
  if (!c.table_quarter.empty()) j["tables"]["quarter"] = c.table_quarter;
  if (!c.table_m1_line.empty()) j["tables"]["m1_1d"] = c.table_m1_line;
  if (!c.table_m1_disk.empty()) j["tables"]["m1_2d"] = c.table_m1_disk;
  j["solver"]["chemo_rel_tol"] = c.solver.chemo_rel_tol;
  j["solver"]["chemo_max_iter"] = c.solver.chemo_max_iter;
  j["solver"]["explicit_chemo"] = c.solver.explicit_chemo;
  j["solver"]["chemo_pre_transport_rho"] = c.solver.chemo_pre_transport_rho;
  j["solver"]["projection"] = c.solver.projection;
  j["solver"]["nv"] = c.solver.nv;
  return j.dump(2) + "\n";
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_run(const std::string& out_dir, const ScenarioConfig& config,
               const RunResult& result) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ValidationError("cannot create output directory: " + out_dir);

  json manifest;
  manifest["config"] = json::parse(config_to_text(config));
  manifest["dt"] = result.dt;
  manifest["steps"] = result.steps;
  manifest["projections"] = result.projections;
  manifest["projected_mass"] = result.projected_mass;
  manifest["initial_mass"] = result.initial_mass;
  manifest["final_mass"] = result.final_mass;
  manifest["max_chemo_residual"] = result.max_chemo_residual;
  manifest["max_chemo_iterations"] = result.max_chemo_iterations;
  manifest["wall_seconds"] = result.wall_seconds;
  manifest["snapshots"] = json::array();

  for (std::size_t k = 0; k < result.snapshots.size(); ++k) {
    const Snapshot& s = result.snapshots[k];
    char name[32];
    std::snprintf(name, sizeof(name), "snap_%04zu.csv", k);
    fs::path file = fs::path(out_dir) / name;
    std::ofstream os(file);
    if (!os) throw ValidationError("cannot write snapshot file: " + file.string());
    os << (s.grid.dim == 2 ? "x,y" : "x");
    for (const auto& [fname, v] : s.fields) os << ',' << fname;
    os << '\n';
    for (int j = 0; j < s.grid.ny; ++j) {
      for (int i = 0; i < s.grid.nx; ++i) {
        os << fmt17(s.grid.x_center(i));
        if (s.grid.dim == 2) os << ',' << fmt17(s.grid.y_center(j));
        std::size_t c = s.grid.id(i, j);
        for (const auto& [fname, v] : s.fields) os << ',' << fmt17(v[c]);
        os << '\n';
      }
    }
    if (!os) throw ValidationError("failed writing snapshot file: " + file.string());
    manifest["snapshots"].push_back({{"file", name}, {"time", s.time}});
  }

  std::ofstream ms(fs::path(out_dir) / "manifest.json");
  if (!ms) throw ValidationError("cannot write manifest in " + out_dir);
  ms << manifest.dump(2) << "\n";
}

Snapshot read_snapshot_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open snapshot file: " + path);
  std::string header;
  if (!std::getline(is, header)) throw ValidationError("empty snapshot file: " + path);
  std::vector<std::string> names;
  {
    std::stringstream ss(header);
    std::string tok;
    while (std::getline(ss, tok, ',')) names.push_back(tok);
  }
  Snapshot s;
  s.time = std::nan("");
  std::vector<std::vector<double>> cols(names.size());
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::size_t k = 0;
    while (std::getline(ss, tok, ',')) {
      if (k >= cols.size()) throw ValidationError("ragged row in " + path);
      cols[k++].push_back(std::strtod(tok.c_str(), nullptr));
    }
    if (k != cols.size()) throw ValidationError("ragged row in " + path);
  }
  for (std::size_t k = 0; k < names.size(); ++k) {
    s.fields.emplace_back(names[k], std::move(cols[k]));
  }
  return s;
}

RunDirectory read_run_directory(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::path mpath = fs::path(dir) / "manifest.json";
  std::ifstream is(mpath);
  if (!is) throw ValidationError("no manifest.json in " + dir);
  json manifest;
  try {
    manifest = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ValidationError("bad manifest in " + dir + ": " + e.what());
  }
  RunDirectory rd;
  rd.config = parse_config_text(manifest["config"].dump());
  for (const auto& snap : manifest["snapshots"]) {
    rd.times.push_back(snap["time"].get<double>());
    rd.files.push_back((fs::path(dir) / snap["file"].get<std::string>()).string());
  }
  return rd;
}

std::vector<CompareRow> compare_runs(const std::string& dir_a, const std::string& dir_b,
                                     NormP p) {
  RunDirectory a = read_run_directory(dir_a);
  RunDirectory b = read_run_directory(dir_b);
  if (!(a.config.grid == b.config.grid)) {
    throw ValidationError("compare: runs use different grids");
  }
  if (a.times.size() != b.times.size()) {
    throw ValidationError("compare: runs have different snapshot counts");
  }
  std::vector<CompareRow> rows;
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    if (std::abs(a.times[k] - b.times[k]) > 1e-6 * std::max(1.0, std::abs(b.times[k]))) {
      throw ValidationError("compare: snapshot times do not match");
    }
    Snapshot sa = read_snapshot_csv(a.files[k]);
    Snapshot sb = read_snapshot_csv(b.files[k]);
    const std::vector<double>& ra = sa.field("rho");
    const std::vector<double>& rb = sb.field("rho");
    double abs_err = error_norm(a.config.grid, ra, rb, p);
    std::vector<double> zero(rb.size(), 0.0);
    double scale = error_norm(a.config.grid, rb, zero, p);
    rows.push_back({a.times[k], abs_err, scale > 0 ? abs_err / scale : 0.0});
  }
  return rows;
}

std::string format_compare_report(const std::vector<CompareRow>& rows, NormP p) {
  const char* norm_name = p == NormP::L1 ? "l1" : (p == NormP::L2 ? "l2" : "linf");
  std::string out = std::string("time,") + norm_name + "_error,relative_error\n";
  for (const auto& r : rows) {
    out += fmt17(r.time);
    out += ',';
    out += fmt17(r.abs_error);
    out += ',';
    out += fmt17(r.rel_error);
    out += '\n';
  }
  return out;
}

}  // namespace pmchemo
