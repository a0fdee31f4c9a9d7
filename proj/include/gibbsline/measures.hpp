#ifndef GIBBSLINE_MEASURES_HPP
#define GIBBSLINE_MEASURES_HPP

#include <functional>
#include <map>
#include <memory>

#include "gibbsline/transfer.hpp"

namespace gibbsline {

/// r-step shift-invariant Gibbs measure of the truncated potential,
/// evaluable on any cylinder.
struct MarkovMeasure {
  PairInteraction interaction;
  TransferMatrix transfer;
  SpectralData spectral;

  int r() const { return transfer.r; }
  int alphabet_size() const { return transfer.alphabet_size; }
};

MarkovMeasure make_markov_measure(const PairInteraction& I, int r, double tol = 1e-13,
                                  int max_iter = 200000, long dim_cap = 4096);

double log_markov_cylinder(const MarkovMeasure& m, const Word& a);
double markov_cylinder(const MarkovMeasure& m, const Word& a);

/// mu([a] cap T^{-s}[b]) for words of length <= r (shorter words are
/// marginalized through their length-r refinements).
double joint_cylinder(const MarkovMeasure& m, const Word& a, const Word& b, long s);

/// joint / (mu[a] mu[b]); tends to 1 at the spectral-gap rate.
double correlation_ratio(const MarkovMeasure& m, const Word& a, const Word& b, long s);

/// Atomic measure on period-p points weighted by exponentiated full-period
/// Birkhoff sums of phi_r (or of the full potential in full-phi mode).
class PeriodicMeasure {
 public:
  enum class Mode { transfer, bruteforce };

  // r < 0 selects the full (untruncated) potential; bruteforce mode only.
  PeriodicMeasure(const PairInteraction& I, int r, int p, Mode mode, int p_max = 22,
                  bool single_window_sums = false, double tol = 1e-12);

  int range() const { return r_; }
  int period() const { return p_; }
  Mode mode() const { return mode_; }

  double cylinder(const Word& a) const;
  /// P([a] cap T^{-s}[b]) for a, b of length r.
  double joint(const Word& a, const Word& b, long s) const;

 private:
  double bruteforce_cylinder(const Word& a) const;
  const Eigen::MatrixXd& power(long k) const;

  PairInteraction I_;
  int r_, p_;
  Mode mode_;
  bool single_window_sums_;  // weight by S_n over the queried word instead of S_p
  double tol_;
  TransferMatrix transfer_;
  SpectralData spectral_;
  FoldedInteraction fold_;  // full-phi bruteforce weights
  mutable std::map<long, Eigen::MatrixXd> power_cache_;
};

inline double periodic_cylinder(const PeriodicMeasure& pm, const Word& a) {
  return pm.cylinder(a);
}

using CylinderFn = std::function<double(const Word&)>;

struct MeasureDistanceReport {
  std::string kind;
  int horizon = 0;
  double value = 0.0;
  Word worst_word;
  double truncation_error = 0.0;  // weak-* only
};

/// max over 1 <= n <= n_max and a in A^n of (1/n)|log(m1[a]/m2[a])|.
MeasureDistanceReport projective_gap(const CylinderFn& m1, const CylinderFn& m2, int n_max,
                                     int alphabet_size);

/// Truncated weak-* metric sum_{k=1}^{k_max} 2^{-(k+1)} sum_{|a|=k} |m1[a]-m2[a]|.
MeasureDistanceReport weakstar_distance(const CylinderFn& m1, const CylinderFn& m2, int k_max,
                                        int alphabet_size);

struct GibbsBracket {
  double C_low = 0.0;
  double C_high = 0.0;
};

/// Brackets mu[a] / exp(S_n phi_r(y) - n log rho) over all cylinders of
/// length r..n_max, with y the periodic extension of the word.
GibbsBracket gibbs_constant_scan(const MarkovMeasure& m, int n_max);

}  // namespace gibbsline

#endif  // GIBBSLINE_MEASURES_HPP
