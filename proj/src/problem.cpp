#include "vnlw/problem.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vnlw/errors.hpp"

namespace vnlw {

namespace {

using nlohmann::json;

ProblemSpec::Mode parse_mode(const std::string& s) {
  if (s == "solve") return ProblemSpec::Mode::Solve;
  if (s == "evolve") return ProblemSpec::Mode::Evolve;
  if (s == "verify") return ProblemSpec::Mode::Verify;
  throw ValidationError("mode must be one of solve|evolve|verify, got '" + s + "'");
}

ProblemSpec::Data parse_data(const json& j, const std::filesystem::path& base) {
  ProblemSpec::Data data;
  if (j.is_string()) {
    std::stringstream ss(j.get<std::string>());
    std::string tok;
    ss >> data.builtin;
    double v;
    while (ss >> v) data.params.push_back(v);
    if (data.builtin.empty()) throw ValidationError("data: empty builtin name");
    static const std::set<std::string> known = {"tensor-quadratic", "tensor-linear",
                                                "sine-gap", "coherent-mix"};
    if (!known.count(data.builtin))
      throw ValidationError("data: unknown builtin '" + data.builtin + "'");
    return data;
  }
  if (j.is_object()) {
    if (!j.contains("file") || !j.at("file").is_string())
      throw ValidationError("data: object form requires a string 'file' key");
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "file") throw ValidationError("data: unknown key '" + it.key() + "'");
    data.file = base / j.at("file").get<std::string>();
    if (!std::filesystem::exists(data.file))
      throw ValidationError("data: file does not exist: " + data.file.string());
    return data;
  }
  throw ValidationError("data must be a builtin string or {\"file\": path}");
}

// cheap early structural check of a referenced field file: the number of
// data rows must match either the interior or the closed product grid
void check_data_file_shape(const std::filesystem::path& file, int n_cells, int dim) {
  std::ifstream in(file);
  if (!in) throw ValidationError("data: cannot open " + file.string());
  std::string line;
  long rows = -1;  // skip header
  while (std::getline(in, line))
    if (!line.empty() && line != "\r") ++rows;
  const long m = n_cells - 1, c = n_cells + 1;
  const long mi = dim == 1 ? m : m * m;
  const long ci = dim == 1 ? c : c * c;
  if (rows != mi * mi && rows != ci * ci)
    throw ValidationError("data: " + file.string() + " has " + std::to_string(rows) +
                          " rows; the n_cells=" + std::to_string(n_cells) +
                          " grid needs " + std::to_string(mi * mi) + " (interior) or " +
                          std::to_string(ci * ci) + " (closed)");
}

std::vector<double> parse_times(const json& j) {
  std::vector<double> times;
  if (j.is_array()) {
    for (const auto& v : j) {
      if (!v.is_number()) throw ValidationError("times: entries must be numbers");
      times.push_back(v.get<double>());
    }
    for (std::size_t i = 1; i < times.size(); ++i)
      if (!(times[i] > times[i - 1]))
        throw ValidationError("times must be strictly ascending");
    return times;
  }
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "count" && it.key() != "t_max")
        throw ValidationError("times: unknown key '" + it.key() + "'");
    const int count = j.value("count", 256);
    const double t_max = j.value("t_max", 2.0 * std::numbers::pi);
    if (count < 1) throw ValidationError("times.count must be >= 1");
    if (!(t_max > 0.0)) throw ValidationError("times.t_max must be positive");
    times.reserve(count);
    for (int i = 0; i < count; ++i) times.push_back(t_max * i / count);
    return times;
  }
  throw ValidationError("times must be an array or {count, t_max}");
}

}  // namespace

ProblemSpec parse_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file " + path.string());

  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError(path.string() + ": top level must be an object");

  static const std::set<std::string> known_keys = {
      "mode", "n", "length", "n_cells", "potential", "data", "times", "tolerances"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known_keys.count(it.key()))
      throw ValidationError(path.string() + ": unknown key '" + it.key() + "'");

  ProblemSpec spec;
  spec.base_dir = path.has_parent_path() ? path.parent_path()
                                         : std::filesystem::path(".");

  if (!j.contains("mode") || !j.at("mode").is_string())
    throw ValidationError(path.string() + ": 'mode' (string) is required");
  spec.mode = parse_mode(j.at("mode").get<std::string>());

  spec.dim = j.value("n", 1);
  if (spec.dim != 1 && spec.dim != 2)
    throw ValidationError(path.string() + ": n must be 1 or 2");

  spec.length = j.value("length", 1.0);
  if (!(spec.length > 0.0))
    throw ValidationError(path.string() + ": length must be positive");

  if (!j.contains("n_cells") || !j.at("n_cells").is_number_integer())
    throw ValidationError(path.string() + ": 'n_cells' (integer) is required");
  spec.n_cells = j.at("n_cells").get<int>();
  if (spec.n_cells < 2)
    throw ValidationError(path.string() + ": n_cells must be >= 2");

  if (j.contains("potential")) {
    const auto& jp = j.at("potential");
    if (!jp.is_array())
      throw ValidationError(path.string() + ": potential must be an array");
    Eigen::VectorXd u(jp.size());
    for (std::size_t i = 0; i < jp.size(); ++i) {
      if (!jp[i].is_number())
        throw ValidationError(path.string() + ": potential entries must be numbers");
      u(static_cast<Eigen::Index>(i)) = jp[i].get<double>();
    }
    if (u.size() != spec.n_cells - 1)
      throw ValidationError(path.string() + ": potential must have n_cells-1 entries");
    spec.potential = std::move(u);
  }

  if (j.contains("data")) {
    spec.data = parse_data(j.at("data"), spec.base_dir);
    if (!spec.data.file.empty())
      check_data_file_shape(spec.data.file, spec.n_cells, spec.dim);
  } else if (spec.mode != ProblemSpec::Mode::Verify) {
    throw ValidationError(path.string() + ": 'data' is required for solve/evolve");
  }

  if (j.contains("times")) {
    if (spec.mode != ProblemSpec::Mode::Evolve)
      throw ValidationError(path.string() + ": 'times' is only valid in evolve mode");
    spec.times = parse_times(j.at("times"));
  } else if (spec.mode == ProblemSpec::Mode::Evolve) {
    spec.times = parse_times(json::object());  // 256 samples on [0, 2*pi)
  }

  if (j.contains("tolerances")) {
    const auto& jt = j.at("tolerances");
    if (!jt.is_object())
      throw ValidationError(path.string() + ": tolerances must be an object");
    for (auto it = jt.begin(); it != jt.end(); ++it)
      if (it.key() != "weak" && it.key() != "alg")
        throw ValidationError(path.string() + ": tolerances: unknown key '" +
                              it.key() + "'");
    spec.tol_weak = jt.value("weak", spec.tol_weak);
    spec.tol_alg = jt.value("alg", spec.tol_alg);
    if (!(spec.tol_weak > 0.0) || !(spec.tol_alg > 0.0))
      throw ValidationError(path.string() + ": tolerances must be positive");
  }

  // Mode-specific data constraints.
  const std::string& b = spec.data.builtin;
  if (spec.mode == ProblemSpec::Mode::Solve && !b.empty()) {
    if (b == "coherent-mix")
      throw ValidationError(path.string() + ": builtin '" + b + "' is evolve-only");
    if (b == "sine-gap") {
      if (spec.data.params.size() != 2)
        throw ValidationError(path.string() + ": sine-gap needs two mode indices");
      const double k = spec.data.params[0], l = spec.data.params[1];
      const int m = spec.n_cells - 1;
      const int m1 = spec.dim == 1 ? m : m * m;
      if (k != std::floor(k) || l != std::floor(l) || k < 1 || l < 1 || k > m1 ||
          l > m1 || k == l)
        throw ValidationError(path.string() +
                              ": sine-gap indices must be distinct integers in 1..#modes");
    } else if (!spec.data.params.empty()) {
      throw ValidationError(path.string() + ": builtin '" + b + "' takes no parameters");
    }
  }
  if (spec.mode == ProblemSpec::Mode::Evolve && !b.empty()) {
    if (b != "coherent-mix")
      throw ValidationError(path.string() + ": evolve supports the coherent-mix builtin or a field file");
    if (spec.data.params.size() > 1)
      throw ValidationError(path.string() + ": coherent-mix takes at most one parameter");
    if (spec.data.params.size() == 1) {
      const double k = spec.data.params[0];
      if (k != std::floor(k) || k < 1)
        throw ValidationError(path.string() + ": coherent-mix mode count must be a positive integer");
    }
  }

  return spec;
}

}  // namespace vnlw
