#include <gtest/gtest.h>

#include <random>

#include "pmsaw/quantize.hpp"

using namespace pmsaw;

namespace {

const MaterialParams& terfenol() {
  static const auto m = builtin_terfenol_d();
  return m;
}

const rayleigh::RayleighMode& mode3ghz() {
  static const auto md = rayleigh::solve_mode(terfenol(), constants::two_pi * 3e9 / 1005.0);
  return md;
}

}  // namespace

TEST(EnergyDensities, DecayWithDepth) {
  const auto& md = mode3ghz();
  const double lam = constants::two_pi / md.k;
  const auto [k0, p0] = quantize::energy_densities(md, terfenol(), 1.0, 0.0);
  const auto [k3, p3] = quantize::energy_densities(md, terfenol(), 1.0, 30.0 * lam);
  EXPECT_GT(k0, 0.0);
  EXPECT_LT(std::abs(k3), 1e-12 * k0);
  EXPECT_LT(std::abs(p3), 1e-12 * (std::abs(p0) + k0));
}

TEST(EnergyDensities, PurelyElasticWhenDecoupled) {
  auto m = terfenol();
  m.q31 = m.q33 = 0.0;
  const auto md = rayleigh::solve_mode(m, constants::two_pi * 3e9 / 1005.0);
  // No magnetic potential at all: the density must equal the elastic terms
  // alone, which a permeability change cannot affect.
  const auto [k1, p1] = quantize::energy_densities(md, m, 1.0, 0.2e-6);
  auto m2 = m;
  m2.mu11 *= 7.0;
  const auto [k2, p2] = quantize::energy_densities(md, m2, 1.0, 0.2e-6);
  EXPECT_DOUBLE_EQ(p1, p2);
  EXPECT_DOUBLE_EQ(k1, k2);
}

TEST(EnergyDensities, KineticBalancesElasticPotential) {
  // The displacement field is an eigenmode of the elastic operator, so for a
  // purely elastic medium the depth-integrated time-averaged kinetic energy
  // equals the potential exactly. With the slaved magnetic sector included,
  // the totals pick up the (small) potential-only field energy; the measured
  // imbalance is recorded.
  auto m_el = terfenol();
  m_el.q31 = m_el.q33 = 0.0;
  const auto md_el = rayleigh::solve_mode(m_el, constants::two_pi * 3e9 / 1005.0);
  const auto [kin_el, pot_el] = quantize::mode_energy_per_area(md_el, m_el);
  EXPECT_NEAR(kin_el / pot_el, 1.0, 1e-6);

  const auto [kin, pot] = quantize::mode_energy_per_area(mode3ghz(), terfenol());
  ::testing::Test::RecordProperty("total_kinetic_over_potential", kin / pot);
  EXPECT_NEAR(kin / pot, 1.0, 0.05);
}

TEST(EnergyDensities, QuadratureMatchesClosedForm) {
  const auto& md = mode3ghz();
  const auto [kin, pot] = quantize::mode_energy_per_area(md, terfenol());
  const double quad = quantize::mode_energy_per_area_quadrature(md, terfenol());
  EXPECT_NEAR(quad / (kin + pot), 1.0, 1e-8);
}

TEST(Normalization, ReferenceAmplitudeAtOneMicron) {
  const auto qm = quantize::normalize_single_phonon(mode3ghz(), terfenol(), 1e-6);
  EXPECT_NEAR(qm.u0k, 8.71e-16, 0.02 * 8.71e-16);
  EXPECT_NEAR(qm.u_zp, 1.18e-15, 0.05e-15);
  EXPECT_DOUBLE_EQ(qm.energy_per_phonon, constants::hbar * mode3ghz().omega);
}

TEST(Normalization, InverseWidthScaling) {
  const auto q1 = quantize::normalize_single_phonon(mode3ghz(), terfenol(), 1e-6);
  const auto q2 = quantize::normalize_single_phonon(mode3ghz(), terfenol(), 2e-6);
  EXPECT_NEAR(q2.u0k, 0.5 * q1.u0k, 1e-12 * q1.u0k);
}

TEST(Normalization, AmplitudeIndependentOfFrequency) {
  const auto m1 = rayleigh::solve_mode(terfenol(), constants::two_pi * 1e9 / 1005.0);
  const auto m2 = rayleigh::solve_mode(terfenol(), constants::two_pi * 10e9 / 1005.0);
  const auto q1 = quantize::normalize_single_phonon(m1, terfenol(), 1e-6);
  const auto q2 = quantize::normalize_single_phonon(m2, terfenol(), 1e-6);
  EXPECT_NEAR(q1.u0k, q2.u0k, 1e-9 * q1.u0k);
}

TEST(ZeroPointFields, DegenerateWithoutPiezomagnetism) {
  auto m = terfenol();
  m.q31 = m.q33 = 0.0;
  const auto md = rayleigh::solve_mode(m, 1e7);
  const auto [bx, bz] = quantize::zero_point_fields(md, m, 1e-15);
  EXPECT_EQ(bx, 0.0);
  EXPECT_EQ(bz, 0.0);
}

TEST(ZeroPointFields, LinearInWavenumberTimesAmplitude) {
  const auto& md = mode3ghz();
  const auto [bx1, bz1] = quantize::zero_point_fields(md, terfenol(), 1e-16);
  const auto [bx2, bz2] = quantize::zero_point_fields(md, terfenol(), 3e-16);
  EXPECT_DOUBLE_EQ(bx2, 3.0 * bx1);
  EXPECT_DOUBLE_EQ(bz2, 3.0 * bz1);
  auto md2 = md;
  md2.k *= 2.0;
  md2.omega = md2.k * md2.v;
  const auto [bx3, bz3] = quantize::zero_point_fields(md2, terfenol(), 1e-16);
  EXPECT_NEAR(bx3, 2.0 * bx1, 1e-12 * std::abs(bx1));
  EXPECT_NEAR(bz3, 2.0 * bz1, 1e-12 * std::abs(bz1));
}

TEST(ZeroPointFields, AgreeWithFieldEvaluationAtSurface) {
  // Two independent code paths: the closed forms versus the pointwise field
  // evaluator with amplitude u0k.
  const auto qm = quantize::normalize_single_phonon(mode3ghz(), terfenol(), 1e-6);
  const auto f = rayleigh::evaluate_fields(mode3ghz(), terfenol(), qm.u0k, 0.0, 0.0, 0.0);
  EXPECT_NEAR(f.b_xprime.real(), qm.b_xprime_zp, 1e-10 * std::abs(qm.b_xprime_zp));
  EXPECT_NEAR(f.b_xprime.imag(), 0.0, 1e-10 * std::abs(qm.b_xprime_zp));
  EXPECT_NEAR(f.b_z.imag(), qm.b_z_zp, 1e-10 * std::abs(qm.b_z_zp));
  EXPECT_NEAR(f.b_z.real(), 0.0, 1e-10 * std::abs(qm.b_z_zp));
}

TEST(ZeroPointFields, SurfaceContinuityFixesComponentRatio) {
  // With a boundary-consistent mode, both surface components follow from the
  // same vacuum evanescent solution, so Bz/Bx = -mu0/mu11 exactly.
  const auto qm = quantize::normalize_single_phonon(mode3ghz(), terfenol(), 1e-6);
  EXPECT_NEAR(qm.b_z_zp / qm.b_xprime_zp, -constants::mu0 / terfenol().mu11,
              1e-9);
}

TEST(ZeroPointFields, MonotoneInWidthAndFrequency) {
  auto md = mode3ghz();
  double prev_bx = 1e300;
  for (double l_um : {1.0, 3.0, 10.0, 30.0, 100.0}) {
    const auto qm = quantize::normalize_single_phonon(md, terfenol(), l_um * 1e-6);
    EXPECT_LT(std::abs(qm.b_xprime_zp), prev_bx);
    prev_bx = std::abs(qm.b_xprime_zp);
  }
  double prev_f = 0.0;
  for (double f_ghz : {1.0, 2.0, 5.0, 10.0}) {
    md.k = constants::two_pi * f_ghz * 1e9 / md.v;
    md.omega = md.k * md.v;
    const auto qm = quantize::normalize_single_phonon(md, terfenol(), 1e-6);
    EXPECT_GT(std::abs(qm.b_xprime_zp), prev_f);
    prev_f = std::abs(qm.b_xprime_zp);
  }
}

TEST(QuantizedCoefficients, SurfaceAndConsistency) {
  const auto& md = mode3ghz();
  const auto [u1, u3, psi] = quantize::quantized_field_coefficients(md, terfenol(), 0.0);
  EXPECT_NEAR(u1.real(), 2.0 * std::cos(md.theta), 1e-12);
  EXPECT_NEAR(u1.imag(), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(psi),
              (terfenol().q33 / terfenol().mu11) *
                  std::abs(2.0 * md.a_coef * std::cos(md.theta + md.tau) + md.a3_coef),
              1e-9 * std::abs(psi));

  // Cross-module equality: u0k * U1'(z) equals the field evaluator output.
  const double u0k = 5e-16;
  for (double z : {0.0, 0.08e-6, 0.31e-6}) {
    const auto coeffs = quantize::quantized_field_coefficients(md, terfenol(), z);
    const auto f = rayleigh::evaluate_fields(md, terfenol(), u0k, 0.0, z, 0.0);
    EXPECT_NEAR(std::abs(u0k * coeffs[0] - f.u1_prime), 0.0, 1e-12 * u0k);
    EXPECT_NEAR(std::abs(u0k * coeffs[1] - f.u3), 0.0, 1e-12 * u0k);
    EXPECT_NEAR(std::abs(u0k * coeffs[2] - f.psi), 0.0, 1e-9 * std::abs(u0k * coeffs[2]));
  }
}

TEST(CanonicalForm, TransformsExactAndResidualsBounded) {
  // The two quadratic forms do not commute (the piezomagnetic cross block
  // couples a massless coordinate to a massive one), so no orthogonal pair
  // diagonalizes both exactly. The transforms themselves are exactly
  // orthogonal, the kinetic form comes out diagonal to machine precision,
  // and the joint off-diagonal residual is small wherever the
  // derivative-coupling ratios are well conditioned; it grows near nodes of
  // the potential profile, where those ratios degenerate.
  std::mt19937 rng(2024);
  const auto& md = mode3ghz();
  const double lam = constants::two_pi / md.k;
  std::uniform_real_distribution<double> zdist(0.0, 2.0 * lam);
  double worst_any = 0.0, worst_conditioned = 0.0;
  int conditioned = 0;
  for (int i = 0; i < 200; ++i) {
    const double z = zdist(rng);
    const auto d = quantize::verify_canonical_form(md, terfenol(), z);
    const Eigen::Matrix3d i3 = Eigen::Matrix3d::Identity();
    EXPECT_LE((d.q1.transpose() * d.q1 - i3).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE((d.q2.transpose() * d.q2 - i3).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(d.lambda_k.maxCoeff(), terfenol().rho, 1e-6 * terfenol().rho);
    EXPECT_NEAR(d.lambda_k.minCoeff(), 0.0, 1e-9 * terfenol().rho);
    worst_any = std::max(worst_any, d.offdiag_residual);

    const double kz = md.k * z;
    const double env = 2.0 * md.a_coef * std::exp(-md.q_alpha * kz) +
                       md.a3_coef * std::exp(-kz);
    const double f = 2.0 * md.a_coef * std::exp(-md.q_alpha * kz) *
                         std::cos(md.q_beta * kz + md.theta + md.tau) +
                     md.a3_coef * std::exp(-kz);
    const bool ok = std::abs(f) >= 0.25 * env &&
                    std::abs(std::cos(md.q_beta * kz + md.theta)) >= 0.25 &&
                    std::abs(std::cos(md.q_beta * kz + md.theta + md.xi)) >= 0.25;
    if (ok) {
      ++conditioned;
      worst_conditioned = std::max(worst_conditioned, d.offdiag_residual);
    }
  }
  EXPECT_GT(conditioned, 50);
  EXPECT_LE(worst_conditioned, 1e-8);
  EXPECT_LE(worst_any, 1e-3);
  ::testing::Test::RecordProperty("offdiag_worst_conditioned", worst_conditioned);
  ::testing::Test::RecordProperty("offdiag_worst_any", worst_any);
}

TEST(CanonicalForm, DecoupledPotentialRowGivesUnitEigenvector) {
  auto m = terfenol();
  m.q31 = m.q33 = 0.0;
  const auto md = rayleigh::solve_mode(m, constants::two_pi * 3e9 / 1005.0);
  // q33 = 0 makes the magnetic sector vanish identically: the potential row
  // of G is zero, the first-stage spectrum is singular and flagged, and
  // (0,0,1) is an eigenvector.
  const auto d = quantize::verify_canonical_form(md, m, 0.13e-6);
  EXPECT_TRUE(d.degenerate);
  bool has_e3 = false;
  for (int c = 0; c < 3; ++c) {
    const Eigen::Vector3d v = d.q1.col(c).cwiseAbs();
    if (std::abs(v(2) - 1.0) < 1e-12 && v(0) < 1e-12 && v(1) < 1e-12) has_e3 = true;
  }
  EXPECT_TRUE(has_e3);
}

TEST(Normalization, EnergyClosureAtOnePhonon) {
  const auto qm = quantize::normalize_single_phonon(mode3ghz(), terfenol(), 1e-6);
  const double factor =
      quantize::norm_convention_factor * quantize::norm_convention_factor;
  const double e_quad = quantize::mode_energy_per_area_quadrature(mode3ghz(), terfenol()) *
                        qm.u0k * qm.u0k * 1e-12 / factor;
  EXPECT_NEAR(e_quad, constants::hbar * mode3ghz().omega,
              1e-6 * constants::hbar * mode3ghz().omega);
}
