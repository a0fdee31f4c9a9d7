#include <doctest.h>

#include <cmath>

#include "gibbsline/thermo.hpp"

using namespace gibbsline;
using doctest::Approx;

TEST_CASE("thermo closed forms on degenerate models") {
  auto Z = PairInteraction::zero();
  for (int r : {1, 2, 4}) {
    auto t = thermo_report(Z, r);
    CHECK(t.pressure == Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(t.energy == Approx(0.0).epsilon(1e-12));
    CHECK(t.entropy_variational == Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(t.entropy_conditional == Approx(std::log(2.0)).epsilon(1e-12));
  }

  // Bernoulli(1/4, 3/4): P = log 4, h = log 4 - (3/4) log 3
  auto B = PairInteraction::zero();
  Eigen::VectorXd v(2);
  v << std::log(1.0), std::log(3.0);
  B.set_onsite(v);
  auto t = thermo_report(B, 1);
  CHECK(t.pressure == Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(t.energy == Approx(0.75 * std::log(3.0)).epsilon(1e-11));
  double h = std::log(4.0) - 0.75 * std::log(3.0);
  CHECK(t.entropy_variational == Approx(h).epsilon(1e-11));
  CHECK(t.entropy_conditional == Approx(h).epsilon(1e-11));
}

TEST_CASE("thermo on dyson matches frozen eigensolver oracle") {
  auto I = PairInteraction::dyson(3.0, 1.0, 1.0);
  auto t = thermo_report(I, 2);
  CHECK(t.pressure == Approx(1.1269280110429727).epsilon(1e-10));
  CHECK(t.energy == Approx(0.761594155955765).epsilon(1e-9));
  CHECK(t.entropy_variational == Approx(0.3653338550872077).epsilon(1e-9));
  CHECK(t.entropy_conditional == Approx(t.entropy_variational).epsilon(1e-10));
  for (int r : {3, 4, 5, 6}) {
    auto tr = thermo_report(I, r);
    CHECK(tr.entropy_conditional == Approx(tr.entropy_variational).epsilon(1e-9));
  }
}

TEST_CASE("periodic pressure: exact values and frozen oracle") {
  auto Z = PairInteraction::zero();
  for (int p : {1, 5, 12}) CHECK(pressure_periodic(Z, p) == Approx(std::log(2.0)).epsilon(1e-12));

  // range-1 table model: (1/p) log((2 cosh 1)^p + (-2 sinh 1)^p) exactly
  Eigen::MatrixXd t1(2, 2);
  t1 << -1.0, 1.0, 1.0, -1.0;
  auto T = PairInteraction::table({t1});
  for (int p : {4, 8, 14}) {
    double rho = 2.0 * std::cosh(1.0), l2 = -2.0 * std::sinh(1.0);
    double expect = std::log(std::pow(rho, p) + std::pow(l2, p)) / p;
    CHECK(pressure_periodic(T, p) == Approx(expect).epsilon(1e-10));
  }

  // frozen 30-digit residue-folded sums for dyson alpha = 3
  auto I = PairInteraction::dyson(3.0, 1.0, 1.0);
  CHECK(pressure_periodic(I, 8) == Approx(1.0772121126466982).epsilon(1e-8));
  CHECK(pressure_periodic(I, 12) == Approx(1.0730235910641184).epsilon(1e-8));
  CHECK(pressure_periodic(I, 16) == Approx(1.0724854915842585).epsilon(1e-8));
  CHECK(pressure_periodic(I, 20) == Approx(1.072416764337611).epsilon(1e-8));
  CHECK_THROWS_AS(pressure_periodic(I, 23), std::invalid_argument);
}

TEST_CASE("lemma 1 bound check") {
  auto I = PairInteraction::dyson(3.0, 1.0, 1.0);
  auto reps = check_lemma1(I, 2, 24, 3);
  CHECK(reps.size() == 2 + 4 + 8);
  for (const auto& rep : reps) {
    CHECK(rep.claim == "lemma1");
    CHECK(rep.satisfied);
    CHECK(rep.measured >= 0.0);
    CHECK(rep.bound > 0.0);
  }
  // zero interaction: both measures are uniform, deviation vanishes
  auto Z = PairInteraction::zero();
  for (const auto& rep : check_lemma1(Z, 2, 12, 3)) {
    CHECK(rep.measured == Approx(0.0).epsilon(1e-12));
    CHECK(rep.satisfied);
  }
}

TEST_CASE("theorem 1 bound check") {
  auto I = PairInteraction::dyson(3.0, 1.0, 1.0);
  GrowthSpec g(0.5);
  auto res = check_theorem1(I, g, 2, 4, 4);
  CHECK(res.eps_r == Approx(epsilon_r(I, g, 2)).epsilon(1e-12));
  CHECK(res.bound > 0.0);
  CHECK(res.max_measured > 0.0);
  CHECK(res.max_measured <= res.bound);
  // the length-normalized gap can only sharpen the raw worst log-ratio
  CHECK(res.gap.value > 0.0);
  CHECK(res.gap.value <= res.max_measured + 1e-12);
  for (const auto& rep : res.reports) CHECK(rep.satisfied);
}

TEST_CASE("lemma 2 bound check") {
  auto I = PairInteraction::dyson(3.0, 1.0, 1.0);
  auto res = check_lemma2(I, 2, 14, {2, 4, 8});
  CHECK(res.D_hat > 0.0);
  CHECK(res.reports.size() == 3);
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& rep : res.reports) {
    CHECK(rep.claim == "lemma2");
    CHECK(rep.satisfied);
    CHECK(rep.measured <= prev + 1e-12);
    prev = rep.measured;
  }
  CHECK_THROWS_AS(check_lemma2(I, 2, 10, {8}), std::invalid_argument);
  CHECK_THROWS_AS(check_lemma2(I, 2, 14, {}), std::invalid_argument);
  CHECK(default_s_list() == std::vector<long>{2, 4, 8, 16, 32});
}

TEST_CASE("theorem 2 mixing envelope") {
  auto I = PairInteraction::dyson(3.0, 1.0, 1.0);
  GrowthSpec g(0.5);
  auto res = check_theorem2(I, g, {2, 4, 8, 16, 32}, 0.5);
  CHECK(res.envelope_holds);
  CHECK(res.fitted_C > 0.0);
  CHECK(res.fitted_c > 0.0);
  CHECK(res.fitted_xi > 0.0);
  CHECK(res.fitted_xi < 1.0);
  CHECK(res.reports.size() == 5);
  for (const auto& rep : res.reports) CHECK(rep.satisfied);
  // deviations themselves decay
  CHECK(res.reports.back().measured < res.reports.front().measured);
}

TEST_CASE("theorem 3 entropy convergence") {
  auto I = PairInteraction::dyson(3.0, 1.0, 1.0);
  GrowthSpec g(0.5);
  auto res = check_theorem3(I, g, {2, 3, 4, 5, 6});
  CHECK(res.thermo.size() == 5);
  CHECK(res.entropy_reports.size() == 4);
  CHECK(res.pressure_reports.size() == 4);
  for (const auto& rep : res.entropy_reports) CHECK(rep.satisfied);
  for (const auto& rep : res.pressure_reports) {
    CHECK(rep.satisfied);
    CHECK(rep.bound > 0.0);
  }
  // differences against the largest-r proxy shrink monotonically
  for (std::size_t i = 1; i < res.entropy_reports.size(); ++i)
    CHECK(res.entropy_reports[i].measured <= res.entropy_reports[i - 1].measured + 1e-12);
  CHECK(res.fitted_eps > 0.0);
  CHECK_THROWS_AS(check_theorem3(I, g, {2, 3}), std::invalid_argument);
}
