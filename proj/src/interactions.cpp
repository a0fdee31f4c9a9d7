#include "gibbsline/interactions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gibbsline {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Compensated accumulator for long tail sums.
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

// sum_{k>=r} k^e for e < -1, absolute error < tol.
// Partial sum plus the midpoint of the integral bracket
// [int_{S+1} x^e dx, int_S x^e dx].
double power_tail(double e, long r, double tol) {
  if (e >= -1.0) throw std::runtime_error("divergent power tail (exponent >= -1)");
  KahanSum acc;
  long k = r;
  for (;;) {
    acc.add(std::pow(static_cast<double>(k), e));
    double hi = std::pow(static_cast<double>(k), e + 1.0) / (-e - 1.0);
    double lo = std::pow(static_cast<double>(k + 1), e + 1.0) / (-e - 1.0);
    if (hi - lo < 2.0 * tol) {
      acc.add(0.5 * (hi + lo));
      return acc.s;
    }
    ++k;
  }
}

// sum_{k>=r} k^w theta^k for theta in (0,1), w >= 0; geometric remainder bound.
double geometric_tail(double w, double theta, long r, double tol) {
  KahanSum acc;
  long k = r;
  for (;;) {
    double a = std::pow(static_cast<double>(k), w) * std::pow(theta, static_cast<double>(k));
    acc.add(a);
    double q = std::pow(static_cast<double>(k + 1) / k, w) * theta;
    if (q < 1.0) {
      double next = std::pow(static_cast<double>(k + 1), w) *
                    std::pow(theta, static_cast<double>(k + 1));
      if (next / (1.0 - q) < tol) return acc.s;
    }
    ++k;
  }
}

// sum_{s>=r} s * exp(-lambda s^delta), lambda > 0, delta in (0,1].
// Remainder past S bounded by int_S^inf x e^{-lambda x^delta} dx
//   = (1/delta) lambda^{-2/delta} Gamma(2/delta, lambda S^delta)
// with Gamma(a,z) <= z^{a-1} e^{-z} / (1 - (a-1)/z) for z > a-1.
double stretched_tail(double lambda, double delta, long r, double tol) {
  if (lambda <= 0.0) throw std::runtime_error("stretched tail needs lambda > 0");
  double a = 2.0 / delta;
  KahanSum acc;
  long s = r;
  for (;;) {
    double x = static_cast<double>(s);
    acc.add(x * std::exp(-lambda * std::pow(x, delta)));
    double z = lambda * std::pow(x, delta);
    // the summand must already be decreasing for the integral comparison
    if (lambda * delta * std::pow(x, delta) > 1.0 && z > 2.0 * a) {
      double log_gamma_bound =
          (a - 1.0) * std::log(z) - z - std::log(1.0 - (a - 1.0) / z);
      double rem = std::exp(log_gamma_bound - std::log(delta) - (2.0 / delta) * std::log(lambda));
      if (rem < tol) return acc.s;
    }
    ++s;
  }
}

Eigen::VectorXd spin_labels(const Alphabet& A) {
  // +1/-1 labeling for two-symbol models; labels "+1"/"1" and "-1" are
  // honored, otherwise index 0 is spin up.
  Eigen::VectorXd s(A.size());
  for (int i = 0; i < A.size(); ++i) {
    const std::string& lab = A.labels[i];
    s[i] = (lab == "-1" || lab == "-") ? -1.0 : (i == 0 ? 1.0 : -1.0);
  }
  return s;
}

}  // namespace

double GrowthSpec::value(double r) const {
  long ri = static_cast<long>(r);
  if (!table.empty() && ri >= 1 && ri <= static_cast<long>(table.size()) &&
      r == static_cast<double>(ri))
    return table[ri - 1];
  return std::pow(r, 1.0 + delta);
}

PairInteraction PairInteraction::zero(Alphabet alphabet) {
  PairInteraction I;
  I.kind_ = InteractionKind::zero;
  I.alphabet_ = std::move(alphabet);
  I.onsite_ = Eigen::VectorXd::Zero(I.alphabet_.size());
  I.spins_ = spin_labels(I.alphabet_);
  return I;
}

PairInteraction PairInteraction::dyson(double alpha, double beta, double J, Alphabet alphabet,
                                       bool override_condition) {
  if (alphabet.size() != 2) throw std::invalid_argument("dyson model requires |A| = 2");
  if (alpha <= 1.0) throw std::invalid_argument("dyson model requires alpha > 1");
  if (beta < 0.0) throw std::invalid_argument("dyson model requires beta >= 0");
  if (alpha <= 2.0 && !override_condition)
    throw ConditionViolation(
        "dyson alpha <= 2 violates the growth-summability condition; pass the override "
        "flag for diagnostic runs");
  PairInteraction I;
  I.kind_ = InteractionKind::dyson;
  I.alphabet_ = std::move(alphabet);
  I.onsite_ = Eigen::VectorXd::Zero(I.alphabet_.size());
  I.spins_ = spin_labels(I.alphabet_);
  I.alpha_ = alpha;
  I.beta_ = beta;
  I.J_ = J;
  I.override_ = override_condition;
  return I;
}

PairInteraction PairInteraction::exponential(double theta, double beta, double J,
                                             Alphabet alphabet) {
  if (alphabet.size() != 2) throw std::invalid_argument("exponential model requires |A| = 2");
  if (theta <= 0.0 || theta >= 1.0)
    throw std::invalid_argument("exponential model requires theta in (0,1)");
  PairInteraction I;
  I.kind_ = InteractionKind::exponential;
  I.alphabet_ = std::move(alphabet);
  I.onsite_ = Eigen::VectorXd::Zero(I.alphabet_.size());
  I.spins_ = spin_labels(I.alphabet_);
  I.theta_ = theta;
  I.beta_ = beta;
  I.J_ = J;
  return I;
}

PairInteraction PairInteraction::table(std::vector<Eigen::MatrixXd> tables, Alphabet alphabet) {
  PairInteraction I;
  I.kind_ = InteractionKind::table;
  I.alphabet_ = std::move(alphabet);
  for (const auto& m : tables)
    if (m.rows() != I.alphabet_.size() || m.cols() != I.alphabet_.size())
      throw std::invalid_argument("table entry dimension does not match alphabet size");
  I.tables_ = std::move(tables);
  I.onsite_ = Eigen::VectorXd::Zero(I.alphabet_.size());
  I.spins_ = spin_labels(I.alphabet_);
  return I;
}

void PairInteraction::set_onsite(const Eigen::VectorXd& v) {
  if (v.size() != alphabet_.size())
    throw std::invalid_argument("onsite vector size does not match alphabet size");
  onsite_ = v;
}

int PairInteraction::finite_range() const {
  switch (kind_) {
    case InteractionKind::zero:
      return 0;
    case InteractionKind::table:
      return static_cast<int>(tables_.size());
    default:
      return -1;
  }
}

double PairInteraction::psi(int k, Symbol a, Symbol b) const {
  if (k == 0) return onsite_[a];
  switch (kind_) {
    case InteractionKind::zero:
      return 0.0;
    case InteractionKind::dyson:
      return -beta_ * J_ * spins_[a] * spins_[b] * std::pow(static_cast<double>(k), -alpha_);
    case InteractionKind::exponential:
      return -beta_ * J_ * spins_[a] * spins_[b] * std::pow(theta_, static_cast<double>(k));
    case InteractionKind::table:
      if (k <= static_cast<int>(tables_.size())) return tables_[k - 1](a, b);
      return 0.0;
  }
  return 0.0;
}

double PairInteraction::psi_norm(int k) const {
  if (k < 1) throw std::invalid_argument("psi_norm requires k >= 1");
  switch (kind_) {
    case InteractionKind::zero:
      return 0.0;
    case InteractionKind::dyson:
      return beta_ * J_ * std::pow(static_cast<double>(k), -alpha_);
    case InteractionKind::exponential:
      return beta_ * J_ * std::pow(theta_, static_cast<double>(k));
    case InteractionKind::table:
      if (k <= static_cast<int>(tables_.size()))
        return tables_[k - 1].array().abs().maxCoeff();
      return 0.0;
  }
  return 0.0;
}

namespace {

// sum_{k>=r} k^w ||psi_k|| with absolute error < tol; w >= 0.
double weighted_psi_tail(const PairInteraction& I, int r, double w, double tol) {
  if (r < 1) throw std::invalid_argument("tail sums start at r >= 1");
  double bj = I.beta() * I.coupling();
  switch (I.kind()) {
    case InteractionKind::zero:
      return 0.0;
    case InteractionKind::table: {
      double s = 0.0;
      for (int k = r; k <= I.finite_range(); ++k)
        s += std::pow(static_cast<double>(k), w) * I.psi_norm(k);
      return s;
    }
    case InteractionKind::dyson: {
      double e = w - I.alpha();
      if (e >= -1.0) throw ConditionViolation("divergent interaction tail (alpha too small)");
      if (bj == 0.0) return 0.0;
      return bj * power_tail(e, r, tol / bj);
    }
    case InteractionKind::exponential:
      if (bj == 0.0) return 0.0;
      return bj * geometric_tail(w, I.theta(), r, tol / bj);
  }
  return 0.0;
}

}  // namespace

double tail_norm_sum(const PairInteraction& I, int r, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tail_norm_sum requires tol > 0");
  return weighted_psi_tail(I, r, 0.0, tol);
}

InteractionConstants constants(const PairInteraction& I, int r) {
  if (r < 1) throw std::invalid_argument("constants requires r >= 1");
  const double tol = 1e-11;
  InteractionConstants c;
  c.r = r;
  for (int k = 1; k <= r; ++k) c.C_r += k * I.psi_norm(k);
  c.C_inf = c.C_r + weighted_psi_tail(I, r + 1, 1.0, tol);
  c.eta = 1.0 - std::exp(-2.0 * c.C_inf);
  c.R = c.C_inf * std::exp(2.0 * c.C_inf);
  c.tail_norm = weighted_psi_tail(I, r, 0.0, tol);
  return c;
}

ConditionReport check_condition(const PairInteraction& I, const GrowthSpec& g) {
  ConditionReport rep;
  const double tol = 1e-11;
  // tabled growth values first, power-form tail beyond
  long t = static_cast<long>(g.table.size());
  double head = 0.0;
  for (long s = 1; s <= t; ++s) head += g.table[s - 1] * I.psi_norm(static_cast<int>(s));
  try {
    rep.value = head + weighted_psi_tail(I, static_cast<int>(t) + 1, 1.0 + g.delta, tol);
    rep.satisfied = true;
  } catch (const std::runtime_error&) {
    rep.value = kInf;
    rep.satisfied = false;
  }
  return rep;
}

double epsilon_r(const PairInteraction& I, const GrowthSpec& g, int r) {
  if (r < 1) throw std::invalid_argument("epsilon_r requires r >= 1");
  ConditionReport cond = check_condition(I, g);
  if (!cond.satisfied)
    throw ConditionViolation("epsilon_r: growth-summability condition not satisfied");
  const double tol = 1e-11;

  // first term: 2 sum_{s>=r} p(s) ||psi_s||
  double first = 0.0;
  long t = static_cast<long>(g.table.size());
  long tail_start = r;
  for (long s = r; s <= t; ++s) {
    first += g.value(static_cast<double>(s)) * I.psi_norm(static_cast<int>(s));
    tail_start = s + 1;
  }
  first += weighted_psi_tail(I, static_cast<int>(tail_start), 1.0 + g.delta, tol);

  // second term: 24 R sum_{s>=r} s eta^{p(s)/s}
  InteractionConstants c = constants(I, 1);
  double second = 0.0;
  if (c.eta > 0.0) {
    double lambda = -std::log(c.eta);
    tail_start = r;
    for (long s = r; s <= t; ++s) {
      second += s * std::exp(-lambda * g.value(static_cast<double>(s)) / s);
      tail_start = s + 1;
    }
    second += stretched_tail(lambda, g.delta, tail_start, tol / (24.0 * c.R));
  }
  return 2.0 * first + 24.0 * c.R * second;
}

double phi_r_word(const PairInteraction& I, const Word& w) {
  if (w.empty()) throw std::invalid_argument("phi_r_word: empty word");
  double v = I.onsite()[w[0]];
  for (std::size_t k = 1; k < w.size(); ++k) v += I.psi(static_cast<int>(k), w[0], w[k]);
  return v;
}

FoldedInteraction fold_interaction(const PairInteraction& I, int p, double tol) {
  if (p < 1) throw std::invalid_argument("fold_interaction requires p >= 1");
  if (tol <= 0.0) throw std::invalid_argument("fold_interaction requires tol > 0");
  int n = I.alphabet_size();
  FoldedInteraction f;
  f.p = p;
  f.residue.assign(p, Eigen::MatrixXd::Zero(n, n));

  // truncation point K: neglected tail norm below tol
  long K;
  int m = I.finite_range();
  if (m >= 0) {
    K = m;
    f.truncation_bound = 0.0;
  } else if (I.kind() == InteractionKind::dyson) {
    double a = I.alpha();
    if (a <= 1.0) throw std::runtime_error("divergent interaction tail (alpha <= 1)");
    double bj = I.beta() * I.coupling();
    K = bj == 0.0 ? 1
                  : static_cast<long>(std::ceil(std::pow(bj / ((a - 1.0) * tol), 1.0 / (a - 1.0))));
    if (K < 1) K = 1;
    f.truncation_bound = bj * std::pow(static_cast<double>(K), 1.0 - a) / (a - 1.0);
  } else {  // exponential
    double bj = I.beta() * I.coupling();
    double th = I.theta();
    K = bj == 0.0
            ? 1
            : static_cast<long>(std::ceil(std::log(tol * (1.0 - th) / bj) / std::log(th)));
    if (K < 1) K = 1;
    f.truncation_bound = bj * std::pow(th, static_cast<double>(K + 1)) / (1.0 - th);
  }

  for (long k = 1; k <= K; ++k) {
    int res = static_cast<int>(k % p);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) f.residue[res](a, b) += I.psi(static_cast<int>(k), a, b);
  }
  return f;
}

PeriodicEnergy phi_periodic(const PairInteraction& I, const Word& y, double tol) {
  if (y.empty()) throw std::invalid_argument("phi_periodic: empty period window");
  FoldedInteraction f = fold_interaction(I, static_cast<int>(y.size()), tol);
  PeriodicEnergy e;
  e.truncation_bound = f.truncation_bound;
  e.value = I.onsite()[y[0]];
  for (int m = 0; m < f.p; ++m) e.value += f.residue[m](y[0], y[m]);
  return e;
}

double periodic_orbit_energy(const PairInteraction& I, const FoldedInteraction& fold,
                             const Word& y) {
  int p = static_cast<int>(y.size());
  if (p != fold.p) throw std::invalid_argument("periodic_orbit_energy: period mismatch");
  double s = 0.0;
  for (int j = 0; j < p; ++j) {
    s += I.onsite()[y[j]];
    for (int m = 0; m < p; ++m) s += fold.residue[m](y[j], y[(j + m) % p]);
  }
  return s;
}

}  // namespace gibbsline
