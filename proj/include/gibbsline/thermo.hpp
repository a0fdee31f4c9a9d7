#ifndef GIBBSLINE_THERMO_HPP
#define GIBBSLINE_THERMO_HPP

#include <map>
#include <string>
#include <vector>

#include "gibbsline/measures.hpp"

namespace gibbsline {

struct ThermoReport {
  int r = 0;
  double pressure = 0.0;             // log rho_r
  double energy = 0.0;               // integral of phi_r against mu_{phi_r}
  double entropy_variational = 0.0;  // pressure - energy
  double entropy_conditional = 0.0;  // -sum mu[ac] log(mu[ac]/mu[a])
};

struct BoundReport {
  std::string claim;
  std::map<std::string, double> params;
  double bound = 0.0;
  double measured = 0.0;
  bool satisfied = false;
  double slack = 0.0;
};

inline BoundReport make_report(std::string claim, std::map<std::string, double> params,
                               double bound, double measured) {
  BoundReport b;
  b.claim = std::move(claim);
  b.params = std::move(params);
  b.bound = bound;
  b.measured = measured;
  b.satisfied = measured <= bound + 1e-12;
  b.slack = bound - measured;
  return b;
}

ThermoReport thermo_report(const PairInteraction& I, int r, long dim_cap = 4096);

/// (1/p) log sum over period-p windows of exp(S_p phi), phi evaluated through
/// the residue-folded interaction at tolerance tol.
double pressure_periodic(const PairInteraction& I, int p, double tol = 1e-10, int p_max = 22);

/// |log(mu_{phi_r}[a] / P_r^(p)[a])| against the closed-form bound
/// 12 r C_r e^{2 C_r} eta^{(p-n)/r - 2}, one report per word of length <= n_max.
std::vector<BoundReport> check_lemma1(const PairInteraction& I, int r, int p, int n_max);

struct Theorem1Result {
  std::vector<BoundReport> reports;  // one per word
  double bound = 0.0;
  double max_measured = 0.0;
  MeasureDistanceReport gap;  // projective gap between the two approximations
  double eps_r = 0.0;
};

Theorem1Result check_theorem1(const PairInteraction& I, const GrowthSpec& g, int r, int r_prime,
                              int n_max);

struct Lemma2Result {
  std::vector<BoundReport> reports;  // one per s, measured maximized over (a,b)
  double D_hat = 0.0;                // max_x delta(M^r e_x, M^{2r} e_x)
};

std::vector<long> default_s_list();
Lemma2Result check_lemma2(const PairInteraction& I, int r, int p, const std::vector<long>& s_list);

struct Theorem2Result {
  std::vector<BoundReport> reports;  // one per s; bound is the fitted envelope
  double fitted_C = 0.0;
  double fitted_c = 0.0;
  double fitted_xi = 0.0;
  long s_star = 0;
  bool envelope_holds = false;
};

/// Stretched-exponential mixing scan. schedule maps s to the proxy range
/// r(s); when empty the default ceil(s^(1-xi)) is used.
Theorem2Result check_theorem2(const PairInteraction& I, const GrowthSpec& g,
                              const std::vector<long>& s_grid, double xi = 0.5,
                              const std::function<int(long)>& schedule = nullptr,
                              int r_cap = 12);

struct Theorem3Result {
  std::vector<BoundReport> entropy_reports;   // per r: |h_proxy - h_r|
  std::vector<BoundReport> pressure_reports;  // consecutive pressure gaps
  std::vector<ThermoReport> thermo;
  double fitted_eps = 0.0;
  double proxy_budget = 0.0;  // error allowance for using the largest-r entropy
};

Theorem3Result check_theorem3(const PairInteraction& I, const GrowthSpec& g,
                              std::vector<int> r_list);

}  // namespace gibbsline

#endif  // GIBBSLINE_THERMO_HPP
