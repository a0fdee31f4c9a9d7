#include "gibbsline/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace gibbsline {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where,
                std::vector<std::string>& errs) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) errs.push_back("unknown key '" + where + "." + it.key() + "'");
}

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errs)
    : std::runtime_error("config errors:\n  " + [&errs] {
        std::string s;
        for (std::size_t i = 0; i < errs.size(); ++i) s += (i ? "\n  " : "") + errs[i];
        return s;
      }()),
      errors(std::move(errs)) {}

RunConfig parse_config_json(const json& j, bool override_condition_flag) {
  std::vector<std::string> errs;
  if (!j.is_object()) throw ConfigError({"top level must be an object"});
  check_keys(j, {"model", "growth", "limits", "scan", "output"}, "", errs);

  RunConfig cfg;
  json model = j.value("model", json::object());
  check_keys(model,
             {"kind", "alphabet", "onsite", "alpha", "beta", "J", "theta", "psi_tables",
              "override_condition"},
             "model", errs);
  std::string kind = model.value("kind", "zero");
  std::vector<std::string> labels =
      model.value("alphabet", std::vector<std::string>{"+1", "-1"});
  bool override_cond = model.value("override_condition", false) || override_condition_flag;
  double alpha = model.value("alpha", 0.0);
  double beta = model.value("beta", 1.0);
  double J = model.value("J", 1.0);
  double theta = model.value("theta", 0.0);

  Alphabet A;
  try {
    A = Alphabet(labels);
  } catch (const std::exception& e) {
    errs.push_back(std::string("model.alphabet: ") + e.what());
  }

  try {
    if (kind == "zero") {
      cfg.model = PairInteraction::zero(A);
    } else if (kind == "dyson") {
      if (!model.contains("alpha")) errs.push_back("model.alpha required for dyson kind");
      cfg.model = PairInteraction::dyson(alpha, beta, J, A, override_cond);
    } else if (kind == "exponential") {
      cfg.model = PairInteraction::exponential(theta, beta, J, A);
    } else if (kind == "table") {
      std::vector<Eigen::MatrixXd> tables;
      for (const auto& tk : model.value("psi_tables", json::array())) {
        Eigen::MatrixXd t(A.size(), A.size());
        for (int a = 0; a < A.size(); ++a)
          for (int b = 0; b < A.size(); ++b) t(a, b) = tk.at(a).at(b).get<double>();
        tables.push_back(t);
      }
      cfg.model = PairInteraction::table(tables, A);
    } else {
      errs.push_back("model.kind '" + kind + "' is not one of zero|dyson|exponential|table");
    }
  } catch (const std::exception& e) {
    errs.push_back(std::string("model: ") + e.what());
  }

  if (model.contains("onsite")) {
    std::vector<double> onsite = model["onsite"].get<std::vector<double>>();
    if (static_cast<int>(onsite.size()) != A.size()) {
      errs.push_back("model.onsite length must equal alphabet size");
    } else {
      Eigen::VectorXd v(A.size());
      for (int i = 0; i < A.size(); ++i) v[i] = onsite[i];
      try {
        cfg.model.set_onsite(v);
      } catch (const std::exception& e) {
        errs.push_back(std::string("model.onsite: ") + e.what());
      }
    }
  }

  json growth = j.value("growth", json::object());
  check_keys(growth, {"delta", "table"}, "growth", errs);
  double default_delta =
      (kind == "dyson" && alpha > 2.0) ? std::min(0.5, (alpha - 2.0) / 2.0) : 0.5;
  double delta = growth.value("delta", default_delta);
  try {
    cfg.growth = GrowthSpec(delta, growth.value("table", std::vector<double>{}));
  } catch (const std::exception& e) {
    errs.push_back(std::string("growth: ") + e.what());
  }

  json limits = j.value("limits", json::object());
  check_keys(limits, {"r_max", "p_max", "n_max", "tol", "max_iter"}, "limits", errs);
  cfg.limits.r_max = limits.value("r_max", 12);
  cfg.limits.p_max = limits.value("p_max", 22);
  cfg.limits.n_max = limits.value("n_max", 8);
  cfg.limits.tol = limits.value("tol", 1e-10);
  cfg.limits.max_iter = limits.value("max_iter", 200000);
  double dim = std::pow(double(A.size()), double(cfg.limits.r_max));
  if (dim > 4096.0)
    errs.push_back("limits.r_max: |A|^r_max = " + std::to_string(long(dim)) +
                   " exceeds the dense budget 4096");
  if (cfg.limits.p_max > 22) errs.push_back("limits.p_max exceeds hard cap 22");
  if (cfg.limits.n_max > 12) errs.push_back("limits.n_max exceeds hard cap 12");
  if (cfg.limits.tol <= 0.0) errs.push_back("limits.tol must be > 0");

  json scan = j.value("scan", json::object());
  check_keys(scan, {"r_values", "p_values", "s_values", "r_pairs", "xi", "k_max"}, "scan", errs);
  cfg.scan.r_values = scan.value("r_values", std::vector<int>{2, 3, 4, 5, 6});
  cfg.scan.p_values = scan.value("p_values", std::vector<int>{24, 36, 48});
  cfg.scan.s_values = scan.value("s_values", std::vector<long>{2, 4, 8, 16, 32});
  for (const auto& pr : scan.value("r_pairs", json::array({{2, 4}, {3, 6}, {4, 8}})))
    cfg.scan.r_pairs.emplace_back(pr.at(0).get<int>(), pr.at(1).get<int>());
  cfg.scan.xi = scan.value("xi", 0.5);
  cfg.scan.k_max = scan.value("k_max", 8);
  for (int r : cfg.scan.r_values)
    if (r > cfg.limits.r_max) errs.push_back("scan.r_values entry exceeds limits.r_max");
  if (cfg.scan.xi <= 0.0 || cfg.scan.xi >= 1.0) errs.push_back("scan.xi must be in (0,1)");

  json output = j.value("output", json::object());
  check_keys(output, {"dir", "formats"}, "output", errs);
  cfg.output.dir = output.value("dir", "out");
  if (output.contains("formats")) {
    cfg.output.csv = cfg.output.json = false;
    for (const auto& f : output["formats"]) {
      std::string s = f.get<std::string>();
      if (s == "csv")
        cfg.output.csv = true;
      else if (s == "json")
        cfg.output.json = true;
      else
        errs.push_back("output.formats entry '" + s + "' is not csv|json");
    }
  }

  if (!errs.empty()) throw ConfigError(std::move(errs));

  // canonical normalized form; json objects are key-sorted, so the dump is
  // stable
  json canon;
  canon["model"] = {{"kind", kind},
                    {"alphabet", labels},
                    {"override_condition", override_cond}};
  if (kind == "dyson") {
    canon["model"]["alpha"] = alpha;
    canon["model"]["beta"] = beta;
    canon["model"]["J"] = J;
  } else if (kind == "exponential") {
    canon["model"]["theta"] = theta;
    canon["model"]["beta"] = beta;
    canon["model"]["J"] = J;
  } else if (kind == "table") {
    canon["model"]["psi_tables"] = model.value("psi_tables", json::array());
  }
  std::vector<double> onsite_out(A.size());
  for (int i = 0; i < A.size(); ++i) onsite_out[i] = cfg.model.onsite()[i];
  canon["model"]["onsite"] = onsite_out;
  canon["growth"] = {{"delta", delta}, {"table", cfg.growth.table}};
  canon["limits"] = {{"r_max", cfg.limits.r_max}, {"p_max", cfg.limits.p_max},
                     {"n_max", cfg.limits.n_max}, {"tol", cfg.limits.tol},
                     {"max_iter", cfg.limits.max_iter}};
  canon["scan"] = {{"r_values", cfg.scan.r_values}, {"p_values", cfg.scan.p_values},
                   {"s_values", cfg.scan.s_values}, {"xi", cfg.scan.xi},
                   {"k_max", cfg.scan.k_max}};
  json pairs = json::array();
  for (auto& pr : cfg.scan.r_pairs) pairs.push_back({pr.first, pr.second});
  canon["scan"]["r_pairs"] = pairs;
  canon["output"] = {{"dir", cfg.output.dir},
                     {"csv", cfg.output.csv},
                     {"json", cfg.output.json}};
  cfg.canonical = canon;
  cfg.config_hash = fnv1a_hex(canon.dump());
  return cfg;
}

RunConfig parse_config(const std::string& path, bool override_condition_flag) {
  std::ifstream is(path);
  if (!is) throw ConfigError({"cannot open config file: " + path});
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("config parse error: ") + e.what()});
  }
  return parse_config_json(j, override_condition_flag);
}

}  // namespace gibbsline
