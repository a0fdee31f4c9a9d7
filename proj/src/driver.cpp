#include "gibbsline/driver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gibbsline {

namespace {

std::string fmt(double v) { return format_double(v); }
std::string fmt(long v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt_bool(bool b) { return b ? "true" : "false"; }

RunResult run_spectrum(const RunConfig& cfg) {
  RunResult res;
  res.envelope.columns = {"r", "dim", "rho", "log_rho", "lambda2_mod", "birkhoff_mrr"};
  for (int r : cfg.scan.r_values) {
    TransferMatrix M = build_transfer(cfg.model, r);
    SpectralData sd = perron(M, 1e-13, cfg.limits.max_iter);
    double tau = birkhoff_coefficient(scaled_power(M, sd, r).entries);
    res.envelope.add_row({fmt(r), fmt(M.dim()), fmt(sd.rho), fmt(std::log(sd.rho)),
                          fmt(sd.lambda2_mod), fmt(tau)});
  }
  return res;
}

RunResult run_measure(const RunConfig& cfg) {
  RunResult res;
  res.envelope.columns = {"r", "n", "word", "probability"};
  for (int r : cfg.scan.r_values) {
    MarkovMeasure m = make_markov_measure(cfg.model, r, 1e-13, cfg.limits.max_iter);
    for (int n = 1; n <= cfg.limits.n_max; ++n) {
      for_each_word(n, cfg.model.alphabet_size(), [&](const Word& a) {
        res.envelope.add_row({fmt(r), fmt(n), word_to_string(a), fmt(markov_cylinder(m, a))});
      });
    }
  }
  return res;
}

RunResult run_converge(const RunConfig& cfg) {
  RunResult res;
  res.envelope.columns = {"r",       "r_prime",        "epsilon_r",  "bound",
                          "max_log_ratio", "projective_gap", "worst_word", "satisfied"};
  for (auto [r, rp] : cfg.scan.r_pairs) {
    Theorem1Result t = check_theorem1(cfg.model, cfg.growth, r, rp, cfg.limits.n_max);
    bool ok = t.max_measured <= t.bound + 1e-12;
    if (!ok) res.exit_code = 2;
    res.envelope.add_row({fmt(r), fmt(rp), fmt(t.eps_r), fmt(t.bound), fmt(t.max_measured),
                          fmt(t.gap.value), word_to_string(t.gap.worst_word), fmt_bool(ok)});
  }
  return res;
}

RunResult run_mixing(const RunConfig& cfg) {
  RunResult res;
  res.envelope.columns = {"s",        "r",        "deviation", "envelope", "satisfied",
                          "fitted_C", "fitted_c", "fitted_xi", "s_star"};
  Theorem2Result t = check_theorem2(cfg.model, cfg.growth, cfg.scan.s_values, cfg.scan.xi,
                                    nullptr, cfg.limits.r_max);
  for (const BoundReport& b : t.reports) {
    if (!b.satisfied) res.exit_code = 2;
    res.envelope.add_row({fmt(long(b.params.at("s"))), fmt(long(b.params.at("r"))),
                          fmt(b.measured), fmt(b.bound), fmt_bool(b.satisfied), fmt(t.fitted_C),
                          fmt(t.fitted_c), fmt(t.fitted_xi), fmt(t.s_star)});
  }
  if (!t.envelope_holds) res.exit_code = 2;
  return res;
}

RunResult run_entropy(const RunConfig& cfg) {
  RunResult res;
  res.envelope.columns = {"r",
                          "pressure",
                          "energy",
                          "entropy_variational",
                          "entropy_conditional",
                          "h_diff",
                          "pressure_gap",
                          "pressure_gap_bound",
                          "fitted_eps",
                          "satisfied"};
  std::vector<int> rs = cfg.scan.r_values;
  if (rs.size() < 3)
    throw std::runtime_error("entropy subcommand needs at least 3 scan.r_values");
  Theorem3Result t = check_theorem3(cfg.model, cfg.growth, rs);
  std::sort(rs.begin(), rs.end());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const ThermoReport& th = t.thermo[i];
    double h_diff = i + 1 < rs.size() ? t.entropy_reports[i].measured : 0.0;
    double pg = i + 1 < rs.size() ? t.pressure_reports[i].measured : 0.0;
    double pgb = i + 1 < rs.size() ? t.pressure_reports[i].bound : 0.0;
    bool ok = true;
    if (i + 1 < rs.size()) ok = t.entropy_reports[i].satisfied && t.pressure_reports[i].satisfied;
    ok = ok && std::abs(th.entropy_variational - th.entropy_conditional) <= 1e-8;
    if (!ok) res.exit_code = 2;
    res.envelope.add_row({fmt(th.r), fmt(th.pressure), fmt(th.energy),
                          fmt(th.entropy_variational), fmt(th.entropy_conditional), fmt(h_diff),
                          fmt(pg), fmt(pgb), fmt(t.fitted_eps), fmt_bool(ok)});
  }
  return res;
}

RunResult run_check_bounds(const RunConfig& cfg) {
  RunResult res;
  res.envelope.columns = {"claim", "r", "p", "n_or_s", "word", "measured",
                          "bound", "satisfied", "slack"};
  auto refusal = [&](const std::string& claim, const std::string& why) {
    res.envelope.add_row({claim + "_refused", "", "", "", why, "", "", "false", ""});
    res.exit_code = 2;
  };
  for (int r : cfg.scan.r_values) {
    for (int p : cfg.scan.p_values) {
      int n_max = std::min(cfg.limits.n_max, p - r - 1);
      if (n_max < 1) continue;
      try {
        for (const BoundReport& b : check_lemma1(cfg.model, r, p, n_max)) {
          if (!b.satisfied) res.exit_code = 2;
          int n = int(b.params.at("n"));
          Word w = index_word(long(b.params.at("word")), n, cfg.model.alphabet_size());
          res.envelope.add_row({b.claim, fmt(r), fmt(p), fmt(n), word_to_string(w),
                                fmt(b.measured), fmt(b.bound), fmt_bool(b.satisfied),
                                fmt(b.slack)});
        }
      } catch (const std::runtime_error& e) {
        refusal("lemma1", e.what());
      }
    }
  }
  // largest configured period that accommodates the s grid
  for (int r : cfg.scan.r_values) {
    if (r > 3) continue;  // periodic scan cost grows fast in r
    long s_max = *std::max_element(cfg.scan.s_values.begin(), cfg.scan.s_values.end());
    int p_pick = 0;
    for (int p : cfg.scan.p_values)
      if (p > s_max + 2 * r) p_pick = std::max(p_pick, p);
    if (p_pick == 0) continue;
    try {
      Lemma2Result l2 = check_lemma2(cfg.model, r, p_pick, cfg.scan.s_values);
      for (const BoundReport& b : l2.reports) {
        if (!b.satisfied) res.exit_code = 2;
        res.envelope.add_row({b.claim, fmt(r), fmt(p_pick), fmt(long(b.params.at("s"))), "",
                              fmt(b.measured), fmt(b.bound), fmt_bool(b.satisfied),
                              fmt(b.slack)});
      }
    } catch (const std::runtime_error& e) {
      refusal("lemma2", e.what());
    }
  }
  return res;
}

}  // namespace

RunResult run_subcommand(const RunConfig& cfg, const std::string& name) {
  RunResult res;
  if (name == "spectrum")
    res = run_spectrum(cfg);
  else if (name == "measure")
    res = run_measure(cfg);
  else if (name == "converge")
    res = run_converge(cfg);
  else if (name == "mixing")
    res = run_mixing(cfg);
  else if (name == "entropy")
    res = run_entropy(cfg);
  else if (name == "check-bounds")
    res = run_check_bounds(cfg);
  else
    throw std::invalid_argument("unknown subcommand: " + name);
  res.envelope.subcommand = name;
  res.envelope.config_hash = cfg.config_hash;
  return res;
}

}  // namespace gibbsline
