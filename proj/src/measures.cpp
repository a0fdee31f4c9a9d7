#include "gibbsline/measures.hpp"

#include <cmath>
#include <stdexcept>

namespace gibbsline {

namespace {

// state index of a_j^{j+r-1} stepped to a_{j+1}^{j+r}
inline long step_state(long state, Symbol next, long suffix_mod, int asize) {
  return (state % suffix_mod) * asize + next;
}

long prefix_state(const Word& a, int r, int asize) {
  Word head(a.begin(), a.begin() + r);
  return word_index(head, r, asize);
}

}  // namespace

MarkovMeasure make_markov_measure(const PairInteraction& I, int r, double tol, int max_iter,
                                  long dim_cap) {
  MarkovMeasure m;
  m.interaction = I;
  m.transfer = build_transfer(I, r, dim_cap);
  m.spectral = perron(m.transfer, tol, max_iter);
  return m;
}

double log_markov_cylinder(const MarkovMeasure& m, const Word& a) {
  int n = static_cast<int>(a.size());
  if (n < 1) throw std::invalid_argument("markov_cylinder: empty word");
  int r = m.r();
  int asize = m.alphabet_size();
  long dim = m.transfer.dim();
  if (n < r) {
    // marginalize over all length-r extensions; prefix blocks are contiguous
    long block = dim / pow_long(asize, n);
    long start = word_index(a, n, asize) * block;
    double s = 0.0;
    for (long i = start; i < start + block; ++i) s += m.spectral.left[i] * m.spectral.right[i];
    return std::log(s);
  }
  long suffix_mod = dim / asize;
  long state = prefix_state(a, r, asize);
  double lp = std::log(m.spectral.left[state]);
  double log_rho = std::log(m.spectral.rho);
  for (int j = 0; j + r < n; ++j) {
    long next = step_state(state, a[j + r], suffix_mod, asize);
    lp += std::log(m.transfer.mat(state, next)) - log_rho;
    state = next;
  }
  lp += std::log(m.spectral.right[state]);
  return lp;
}

double markov_cylinder(const MarkovMeasure& m, const Word& a) {
  return std::exp(log_markov_cylinder(m, a));
}

double joint_cylinder(const MarkovMeasure& m, const Word& a, const Word& b, long s) {
  int r = m.r();
  if (s < 0) throw std::invalid_argument("joint_cylinder requires s >= 0");
  if (static_cast<int>(a.size()) > r || static_cast<int>(b.size()) > r)
    throw std::invalid_argument("joint_cylinder supports words of length <= r");
  int asize = m.alphabet_size();
  if (static_cast<int>(a.size()) < r || static_cast<int>(b.size()) < r) {
    // marginalize through length-r refinements
    double total = 0.0;
    auto refine = [&](const Word& w) {
      std::vector<Word> out;
      int missing = r - static_cast<int>(w.size());
      for_each_word(missing, asize, [&](const Word& tail) {
        Word full = w;
        full.insert(full.end(), tail.begin(), tail.end());
        out.push_back(full);
      });
      return out;
    };
    for (const Word& fa : refine(a))
      for (const Word& fb : refine(b)) total += joint_cylinder(m, fa, fb, s);
    return total;
  }
  long ia = word_index(a, r, asize);
  long ib = word_index(b, r, asize);
  if (s == 0) return ia == ib ? markov_cylinder(m, a) : 0.0;
  ScaledPower P = scaled_power(m.transfer, m.spectral, s);
  return m.spectral.left[ia] * P.entries(ia, ib) * m.spectral.right[ib];
}

double correlation_ratio(const MarkovMeasure& m, const Word& a, const Word& b, long s) {
  double ma = markov_cylinder(m, a);
  double mb = markov_cylinder(m, b);
  if (ma <= 0.0 || mb <= 0.0)
    throw std::runtime_error("correlation_ratio: zero marginal cylinder");
  return joint_cylinder(m, a, b, s) / (ma * mb);
}

PeriodicMeasure::PeriodicMeasure(const PairInteraction& I, int r, int p, Mode mode, int p_max,
                                 bool single_window_sums, double tol)
    : I_(I), r_(r), p_(p), mode_(mode), single_window_sums_(single_window_sums), tol_(tol) {
  if (p < 1) throw std::invalid_argument("PeriodicMeasure requires p >= 1");
  if (r_ >= 0 && p_ < r_) throw std::invalid_argument("PeriodicMeasure requires p >= r");
  if (mode_ == Mode::transfer) {
    if (r_ < 0) throw std::invalid_argument("full-potential mode needs bruteforce evaluation");
    transfer_ = build_transfer(I_, r_);
    spectral_ = perron(transfer_);
  } else {
    if (p_ > p_max)
      throw std::invalid_argument("bruteforce period " + std::to_string(p_) +
                                  " exceeds p_max = " + std::to_string(p_max));
    if (r_ < 0) fold_ = fold_interaction(I_, p_, tol_ / p_);
  }
}

const Eigen::MatrixXd& PeriodicMeasure::power(long k) const {
  auto it = power_cache_.find(k);
  if (it != power_cache_.end()) return it->second;
  ScaledPower sp = scaled_power(transfer_, spectral_, k);
  return power_cache_.emplace(k, std::move(sp.entries)).first->second;
}

double PeriodicMeasure::cylinder(const Word& a) const {
  int n = static_cast<int>(a.size());
  if (n < 1) throw std::invalid_argument("periodic_cylinder: empty word");
  if (n > p_)
    throw std::invalid_argument("periodic_cylinder: word length exceeds the period");
  if (mode_ == Mode::bruteforce) return bruteforce_cylinder(a);

  int asize = transfer_.alphabet_size;
  long dim = transfer_.dim();
  const Eigen::MatrixXd& Pp = power(p_);
  double den = Pp.trace();
  if (n < r_) {
    long block = dim / pow_long(asize, n);
    long start = word_index(a, n, asize) * block;
    double num = 0.0;
    for (long i = start; i < start + block; ++i) num += Pp(i, i);
    return num / den;
  }
  long suffix_mod = dim / asize;
  long start_state = prefix_state(a, r_, asize);
  long state = start_state;
  double num = 1.0;
  for (int j = 0; j + r_ < n; ++j) {
    long next = step_state(state, a[j + r_], suffix_mod, asize);
    num *= transfer_.mat(state, next) / spectral_.rho;
    state = next;
  }
  num *= power(p_ - n + r_)(state, start_state);
  return num / den;
}

double PeriodicMeasure::joint(const Word& a, const Word& b, long s) const {
  if (r_ < 0 || static_cast<int>(a.size()) != r_ || static_cast<int>(b.size()) != r_)
    throw std::invalid_argument("periodic joint cylinders need words of length r");
  if (s < 0 || s + r_ > p_)
    throw std::invalid_argument("periodic joint cylinder needs 0 <= s <= p - r");
  int asize = I_.alphabet_size();
  if (mode_ == Mode::bruteforce) {
    double shift = -std::numeric_limits<double>::infinity();
    std::vector<double> energies;
    std::vector<bool> in_cyl;
    for (const Word& y : enumerate_periodic_points(p_, I_.alphabet(), p_)) {
      double e = 0.0;
      Word window(r_);
      for (int j = 0; j < p_; ++j) {
        for (int t = 0; t < r_; ++t) window[t] = y[(j + t) % p_];
        e += phi_r_word(I_, window);
      }
      bool in = true;
      for (int t = 0; t < r_ && in; ++t) in = (y[t] == a[t]);
      for (int t = 0; t < r_ && in; ++t) in = (y[(s + t) % p_] == b[t]);
      energies.push_back(e);
      in_cyl.push_back(in);
      shift = std::max(shift, e);
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
      double w = std::exp(energies[i] - shift);
      den += w;
      if (in_cyl[i]) num += w;
    }
    return num / den;
  }
  long ia = word_index(a, r_, asize);
  long ib = word_index(b, r_, asize);
  double den = power(p_).trace();
  return power(s)(ia, ib) * power(p_ - s)(ib, ia) / den;
}

double PeriodicMeasure::bruteforce_cylinder(const Word& a) const {
  int n = static_cast<int>(a.size());
  double shift = -std::numeric_limits<double>::infinity();
  std::vector<double> energies;
  std::vector<bool> in_cyl;
  Word window(r_ > 0 ? r_ : 0);
  for (const Word& y : enumerate_periodic_points(p_, I_.alphabet(), p_)) {
    double e;
    if (r_ < 0) {
      e = periodic_orbit_energy(I_, fold_, y);
    } else {
      int horizon = single_window_sums_ ? n : p_;
      e = 0.0;
      for (int j = 0; j < horizon; ++j) {
        for (int t = 0; t < r_; ++t) window[t] = y[(j + t) % p_];
        e += phi_r_word(I_, window);
      }
    }
    bool in = true;
    for (int t = 0; t < n && in; ++t) in = (y[t] == a[t]);
    energies.push_back(e);
    in_cyl.push_back(in);
    shift = std::max(shift, e);
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    double w = std::exp(energies[i] - shift);
    den += w;
    if (in_cyl[i]) num += w;
  }
  return num / den;
}

MeasureDistanceReport projective_gap(const CylinderFn& m1, const CylinderFn& m2, int n_max,
                                     int alphabet_size) {
  if (n_max < 1) throw std::invalid_argument("projective_gap requires n_max >= 1");
  MeasureDistanceReport rep;
  rep.kind = "projective";
  rep.horizon = n_max;
  for (int n = 1; n <= n_max; ++n) {
    for_each_word(n, alphabet_size, [&](const Word& a) {
      double p1 = m1(a), p2 = m2(a);
      if (p1 <= 0.0 || p2 <= 0.0)
        throw std::runtime_error("projective_gap: zero cylinder at word " + word_to_string(a));
      double v = std::abs(std::log(p1 / p2)) / n;
      if (v > rep.value) {
        rep.value = v;
        rep.worst_word = a;
      }
    });
  }
  return rep;
}

MeasureDistanceReport weakstar_distance(const CylinderFn& m1, const CylinderFn& m2, int k_max,
                                        int alphabet_size) {
  if (k_max < 1) throw std::invalid_argument("weakstar_distance requires k_max >= 1");
  MeasureDistanceReport rep;
  rep.kind = "weakstar";
  rep.horizon = k_max;
  for (int k = 1; k <= k_max; ++k) {
    double level = 0.0;
    for_each_word(k, alphabet_size, [&](const Word& a) { level += std::abs(m1(a) - m2(a)); });
    rep.value += std::ldexp(level, -(k + 1));
  }
  rep.truncation_error = std::ldexp(1.0, -k_max);
  return rep;
}

GibbsBracket gibbs_constant_scan(const MarkovMeasure& m, int n_max) {
  int r = m.r();
  if (n_max < r) throw std::invalid_argument("gibbs_constant_scan requires n_max >= r");
  int asize = m.alphabet_size();
  double log_rho = std::log(m.spectral.rho);
  GibbsBracket br;
  br.C_low = std::numeric_limits<double>::infinity();
  br.C_high = 0.0;
  Word window(r);
  for (int n = r; n <= n_max; ++n) {
    for_each_word(n, asize, [&](const Word& a) {
      // Birkhoff sum along the periodic extension of a
      double birkhoff = 0.0;
      for (int j = 0; j < n; ++j) {
        for (int t = 0; t < r; ++t) window[t] = a[(j + t) % n];
        birkhoff += phi_r_word(m.interaction, window);
      }
      double ratio = std::exp(log_markov_cylinder(m, a) - (birkhoff - n * log_rho));
      br.C_low = std::min(br.C_low, ratio);
      br.C_high = std::max(br.C_high, ratio);
    });
  }
  return br;
}

}  // namespace gibbsline
