#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pmsaw/dynamics.hpp"

using namespace pmsaw;
using cd = std::complex<double>;

TEST(Presets, TableOfParameters) {
  const auto a = dynamics::figure_preset("fig7a");
  EXPECT_DOUBLE_EQ(a.gamma0, constants::two_pi * 100e6);
  EXPECT_DOUBLE_EQ(a.delay_t, 0.1e-6);
  const auto c = dynamics::figure_preset("fig8c");
  EXPECT_DOUBLE_EQ(c.gamma0, constants::two_pi * 1e6);
  const auto n = dynamics::figure_preset("fig9c");
  EXPECT_DOUBLE_EQ(n.theta_t, constants::pi);
  EXPECT_DOUBLE_EQ(n.delay_t, 0.1e-6);  // mod(pi, pi) adds nothing
  const auto h = dynamics::figure_preset("fig9b");
  EXPECT_NEAR(h.delay_t, 0.1e-6 + 0.75 * constants::pi / (constants::two_pi * 4.72e9), 1e-20);
  EXPECT_THROW(dynamics::figure_preset("fig11a"), UsageError);
}

TEST(Presets, PhaseReconciliationHelper) {
  // 4.72 GHz x 0.1 us is an integer number of cycles.
  const double th = dynamics::theta_from_delay(constants::two_pi * 4.72e9, 0.1e-6);
  EXPECT_LT(std::min(th, constants::two_pi - th), 1e-6);
  const auto p = dynamics::figure_preset("fig9b");
  const double th2 = dynamics::theta_from_delay(constants::two_pi * 4.72e9, p.delay_t);
  EXPECT_NEAR(th2, 0.75 * constants::pi, 1e-5);
}

TEST(Integrate, PreconditionsEnforced) {
  dynamics::DDEProblem p;
  p.gamma0 = 1e6;
  p.delay_t = 1e-7;
  p.theta_t = 0;
  p.t_max = 1e-6;
  p.dt = p.delay_t / 10.0;  // too coarse
  EXPECT_THROW(dynamics::integrate(p), UsageError);
  p.dt = p.delay_t / 50.0;
  EXPECT_NO_THROW(dynamics::integrate(p));
  p.alpha_a0 = 1.0;
  p.alpha_b0 = 0.5;  // over-occupied
  EXPECT_THROW(dynamics::integrate(p), UsageError);
}

TEST(Integrate, UndrivenSegmentIsPureDecay) {
  auto p = dynamics::figure_preset("fig8b");
  p.t_max = p.delay_t;
  const auto tr = dynamics::integrate(p);
  for (size_t i = 0; i < tr.size(); ++i) {
    if (tr.times[i] > p.delay_t) break;
    EXPECT_NEAR(tr.p_a[i], std::exp(-2.0 * p.gamma0 * tr.times[i]), 1e-10);
    EXPECT_EQ(tr.p_b[i], 0.0);  // causality: exactly zero before the delay
  }
}

TEST(Integrate, SecondSegmentClosedForm) {
  auto p = dynamics::figure_preset("fig7a");
  p.t_max = 2 * p.delay_t - 1e-12;
  const auto tr = dynamics::integrate(p);
  const cd phase = std::polar(1.0, p.theta_t);
  double maxdev = 0.0;
  for (size_t i = 0; i < tr.size(); ++i) {
    const double t = tr.times[i];
    if (t < p.delay_t) continue;
    const cd ref = -p.gamma0 * (t - p.delay_t) * phase *
                   std::exp(-p.gamma0 * (t - p.delay_t));
    maxdev = std::max(maxdev, std::abs(tr.alpha_b[i] - ref));
  }
  EXPECT_LT(maxdev, 1e-8);
  // Peak population of the freshly excited qubit: e^{-2} when G0*T >> 1.
  double peak = 0.0;
  for (size_t i = 0; i < tr.size(); ++i) peak = std::max(peak, tr.p_b[i]);
  EXPECT_NEAR(peak, std::exp(-2.0), 1e-5);
}

TEST(Integrate, ThreeSegmentOracle) {
  for (const char* name : {"fig7a", "fig8b", "fig8c"}) {
    auto p = dynamics::figure_preset(name);
    p.t_max = 3 * p.delay_t - 1e-12;
    const auto an = dynamics::analytic_segments(p);
    const auto tr = dynamics::integrate(p);
    double maxdev = 0.0;
    for (size_t i = 0; i < tr.size(); ++i) {
      if (tr.times[i] >= 3 * p.delay_t) break;
      const auto [a, b] = an.eval(tr.times[i]);
      maxdev = std::max({maxdev, std::abs(a - tr.alpha_a[i]), std::abs(b - tr.alpha_b[i])});
    }
    EXPECT_LT(maxdev, 1e-6) << name;
  }
}

TEST(Integrate, FourthOrderConvergence) {
  auto p = dynamics::figure_preset("fig8c");
  p.t_max = 3 * p.delay_t - 1e-12;
  const auto an = dynamics::analytic_segments(p);
  double err[2];
  for (int r = 0; r < 2; ++r) {
    auto pr = p;
    pr.dt = p.delay_t / (100 << r);
    const auto tr = dynamics::integrate(pr);
    double e = 0.0;
    for (size_t i = 0; i < tr.size(); ++i) {
      if (tr.times[i] >= 3 * p.delay_t) break;
      const auto [a, b] = an.eval(tr.times[i]);
      e = std::max({e, std::abs(a - tr.alpha_a[i]), std::abs(b - tr.alpha_b[i])});
    }
    err[r] = e;
  }
  EXPECT_GE(err[0] / err[1], 8.0);
}

TEST(Integrate, ZeroDelaySuperradiantPair) {
  dynamics::DDEProblem p;
  p.gamma0 = constants::two_pi * 1e6;
  p.delay_t = 0.0;
  p.theta_t = 0.0;
  p.alpha_a0 = p.alpha_b0 = 1.0 / std::sqrt(2.0);
  p.t_max = 3.0 / p.gamma0;
  p.dt = 0.005 / p.gamma0;
  const auto tr = dynamics::integrate(p);
  for (size_t i = 0; i < tr.size(); ++i) {
    const double ref = 0.5 * std::exp(-4.0 * p.gamma0 * tr.times[i]);
    EXPECT_NEAR(tr.p_a[i], ref, 1e-9);
    EXPECT_NEAR(tr.p_b[i], ref, 1e-9);
  }
}

TEST(Integrate, ExcitationBoundAndConcurrenceDefinition) {
  auto p = dynamics::figure_preset("fig8c");
  p.t_max = 3e-6;
  const auto tr = dynamics::integrate(p);
  for (size_t i = 0; i < tr.size(); ++i) {
    EXPECT_LE(tr.p_a[i] + tr.p_b[i], 1.0 + 1e-9);
    EXPECT_DOUBLE_EQ(tr.concurrence[i],
                     2.0 * std::abs(tr.alpha_a[i] * std::conj(tr.alpha_b[i])));
  }
}

TEST(Integrate, ExchangeSymmetry) {
  auto p = dynamics::figure_preset("fig8b");
  p.alpha_a0 = cd(0.6, 0.1);
  p.alpha_b0 = cd(0.2, -0.3);
  p.t_max = 1e-6;
  auto q = p;
  std::swap(q.alpha_a0, q.alpha_b0);
  const auto t1 = dynamics::integrate(p);
  const auto t2 = dynamics::integrate(q);
  for (size_t i = 0; i < t1.size(); ++i) {
    EXPECT_DOUBLE_EQ(t1.p_a[i], t2.p_b[i]);
    EXPECT_DOUBLE_EQ(t1.p_b[i], t2.p_a[i]);
  }
}

TEST(Integrate, PhasePeriodicityPi) {
  auto p1 = dynamics::figure_preset("fig9b");
  p1.t_max = 2e-6;
  auto p2 = p1;
  p2.theta_t += constants::pi;
  const auto t1 = dynamics::integrate(p1);
  const auto t2 = dynamics::integrate(p2);
  for (size_t i = 0; i < t1.size(); ++i) {
    EXPECT_NEAR(t1.p_a[i], t2.p_a[i], 1e-8);
    EXPECT_NEAR(t1.p_b[i], t2.p_b[i], 1e-8);
    EXPECT_NEAR(t1.concurrence[i], t2.concurrence[i], 1e-8);
  }
}

TEST(Concurrence, MatchesGeneralDensityMatrixRoutine) {
  auto p = dynamics::figure_preset("fig9c");
  p.t_max = 2e-6;
  const auto tr = dynamics::integrate(p);
  std::mt19937 rng(99);
  std::uniform_int_distribution<size_t> pick(0, tr.size() - 1);
  for (int i = 0; i < 10; ++i) {
    const size_t idx = pick(rng);
    const auto rho = oracles::two_qubit_state(tr.alpha_a[idx], tr.alpha_b[idx]);
    EXPECT_NEAR(oracles::concurrence_4x4(rho), tr.concurrence[idx], 1e-8);
  }
}

TEST(SteadyState, NodeConditionTrapsSymmetricShare) {
  auto p = dynamics::figure_preset("fig10c");
  const auto ss = dynamics::steady_state(p);
  const double expected = 1.0 / (2.0 * (1.0 + p.gamma0 * p.delay_t));
  EXPECT_NEAR(std::abs(ss.alpha_a_inf), expected, 1e-12);
  EXPECT_NEAR(ss.c_inf, 2.0 * expected * expected, 1e-12);
  EXPECT_NEAR(ss.c_inf, 0.19, 0.01);

  // Zero-delay limit: the dark state holds half the amplitude.
  dynamics::DDEProblem z;
  z.gamma0 = 1e6;
  z.delay_t = 0.0;
  z.theta_t = constants::pi;
  z.alpha_a0 = 1.0;
  const auto sz = dynamics::steady_state(z);
  EXPECT_DOUBLE_EQ(std::abs(sz.alpha_a_inf), 0.5);
  EXPECT_DOUBLE_EQ(sz.c_inf, 0.5);

  // Away from the node condition there is no trapped pole.
  auto q = dynamics::figure_preset("fig10a");
  const auto sq = dynamics::steady_state(q);
  EXPECT_EQ(std::abs(sq.alpha_a_inf), 0.0);
  EXPECT_EQ(sq.c_inf, 0.0);
}

TEST(SteadyState, LongTimeIntegrationAgreesWithPole) {
  auto p = dynamics::figure_preset("fig10c");
  p.t_max = 50.0 / p.gamma0;
  const auto tr = dynamics::integrate(p);
  const auto ss = dynamics::steady_state(p);
  EXPECT_NEAR(tr.concurrence.back(), ss.c_inf, 1e-3);
}
