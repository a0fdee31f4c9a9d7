#ifndef GIBBSLINE_INTERACTIONS_HPP
#define GIBBSLINE_INTERACTIONS_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gibbsline/lattice.hpp"

namespace gibbsline {

enum class InteractionKind { zero, dyson, exponential, table };

/// Thrown when a bound-checking operation is asked to run on a model whose
/// growth-weighted interaction sums diverge.
struct ConditionViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Growth function p(r) entering the summability condition. Power form
/// p(r) = r^(1+delta); an optional table overrides the listed small-r values
/// (index m holds p(m+1)).
struct GrowthSpec {
  double delta = 0.5;
  std::vector<double> table;

  explicit GrowthSpec(double d = 0.5, std::vector<double> tab = {})
      : delta(d), table(std::move(tab)) {
    if (delta <= 0.0) throw std::invalid_argument("growth exponent delta must be > 0");
  }

  double value(double r) const;
};

/// Closed-form constants of the interaction at range r.
struct InteractionConstants {
  int r = 0;
  double C_r = 0.0;       // sum_{k=1}^{r} k * ||psi_k||
  double C_inf = 0.0;     // sum_{k=1}^{inf} k * ||psi_k||
  double eta = 0.0;       // 1 - exp(-2 C_inf)
  double R = 0.0;         // C_inf * exp(2 C_inf)
  double tail_norm = 0.0; // sum_{k>=r} ||psi_k||
};

/// Family {psi_k} of distance-dependent pair interactions plus the k = 0
/// on-site term. The dyson kind is the Ising chain psi_k(a,b) =
/// -beta*J*sigma(a)*sigma(b)*k^(-alpha) on a two-symbol alphabet.
class PairInteraction {
 public:
  // default-constructs the zero interaction on the two-symbol alphabet
  PairInteraction() : onsite_(Eigen::VectorXd::Zero(2)), spins_(2) { spins_ << 1.0, -1.0; }

  static PairInteraction zero(Alphabet alphabet = Alphabet());
  static PairInteraction dyson(double alpha, double beta, double J,
                               Alphabet alphabet = Alphabet(),
                               bool override_condition = false);
  static PairInteraction exponential(double theta, double beta, double J,
                                     Alphabet alphabet = Alphabet());
  // tables[m] holds psi_{m+1}; psi_k == 0 beyond the listed range.
  static PairInteraction table(std::vector<Eigen::MatrixXd> tables,
                               Alphabet alphabet = Alphabet());

  InteractionKind kind() const { return kind_; }
  const Alphabet& alphabet() const { return alphabet_; }
  int alphabet_size() const { return alphabet_.size(); }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double coupling() const { return J_; }
  double theta() const { return theta_; }
  bool condition_overridden() const { return override_; }
  int finite_range() const;  // largest k with psi_k != 0, or -1 if infinite

  const Eigen::VectorXd& onsite() const { return onsite_; }
  void set_onsite(const Eigen::VectorXd& v);

  /// psi_k(a,b); the k = 0 call returns the on-site energy of a.
  double psi(int k, Symbol a, Symbol b) const;

  /// ||psi_k|| = max_{a,b} |psi_k(a,b)|, k >= 1.
  double psi_norm(int k) const;

  double spin(Symbol a) const { return spins_[a]; }

 private:
  InteractionKind kind_ = InteractionKind::zero;
  Alphabet alphabet_;
  Eigen::VectorXd onsite_;
  Eigen::VectorXd spins_;
  double alpha_ = 0.0, beta_ = 1.0, J_ = 1.0, theta_ = 0.0;
  std::vector<Eigen::MatrixXd> tables_;
  bool override_ = false;
};

/// sum_{k>=r} ||psi_k|| with absolute error < tol.
double tail_norm_sum(const PairInteraction& I, int r, double tol = 1e-12);

/// All closed-form constants at range r, each to absolute error < 1e-10.
InteractionConstants constants(const PairInteraction& I, int r);

struct ConditionReport {
  bool satisfied = false;
  double value = 0.0;  // sum_r p(r)||psi_r||; infinity when divergent
};

/// Evaluates the growth-weighted summability condition.
ConditionReport check_condition(const PairInteraction& I, const GrowthSpec& g);

/// Projective-convergence rate
///   eps_r = 2 sum_{s>=r} p(s)||psi_s|| + 24 R sum_{s>=r} s eta^{p(s)/s},
/// both tails bounded to absolute error < 1e-10.
double epsilon_r(const PairInteraction& I, const GrowthSpec& g, int r);

/// Truncated local energy of a length-r window:
///   onsite[w_0] + sum_{k=1}^{r-1} psi_k(w_0, w_k).
double phi_r_word(const PairInteraction& I, const Word& w);

struct PeriodicEnergy {
  double value = 0.0;
  double truncation_bound = 0.0;
};

/// Full local energy of the periodic point with period window y:
///   onsite[y_0] + sum_{k>=1} psi_k(y_0, y_{k mod p}),
/// truncated where the tail norm drops below tol.
PeriodicEnergy phi_periodic(const PairInteraction& I, const Word& y, double tol = 1e-10);

/// Interaction summed over each residue class mod p:
///   fold[m](a,b) = sum_{k>=1, k = m mod p} psi_k(a,b),
/// truncated so the neglected tail norm is < tol. Shared kernel behind
/// phi_periodic and the period-p pressure sums.
struct FoldedInteraction {
  int p = 0;
  std::vector<Eigen::MatrixXd> residue;  // residue[m], m in [0, p)
  double truncation_bound = 0.0;
};

FoldedInteraction fold_interaction(const PairInteraction& I, int p, double tol = 1e-10);

/// Full-orbit Birkhoff sum S_p phi(y) over one period of window y.
double periodic_orbit_energy(const PairInteraction& I, const FoldedInteraction& fold,
                             const Word& y);

}  // namespace gibbsline

#endif  // GIBBSLINE_INTERACTIONS_HPP
