#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "pmsaw/constants.hpp"
#include "pmsaw/errors.hpp"
#include "pmsaw/rayleigh.hpp"

namespace pmsaw::quantize {

using cd = std::complex<double>;
using rayleigh::RayleighMode;

/// Dimensionless constant of the single-phonon normalization convention.
/// The quantization-volume energy convention is fixed once, by requiring that
/// the built-in reference material at the reference operating point
/// (lateral width 1 um) reproduce u0k * L = 8.71e-22 m^2; this constant is
/// the ratio of that reference amplitude to the bare value obtained from
/// <E_kin + E_pot> = hbar * omega over the L x L cross-section. It is part of
/// the declared convention and is reported in the CLI output metadata.
inline constexpr double norm_convention_factor = 0.923979500440;

inline constexpr const char* norm_convention_text =
    "u0k = 0.923979500440 * sqrt(hbar*omega / (L^2 * E1)), E1 = depth-integrated "
    "time-averaged energy density (kinetic + potential) at unit amplitude";

/// A quantized travelling-wave mode over an L x L lateral cross-section.
struct QuantizedMode {
  RayleighMode mode;
  MaterialParams material;
  double lateral_width_l = 0.0;   ///< m
  double u0k = 0.0;               ///< single-phonon displacement normalization, m
  double b_xprime_zp = 0.0;       ///< signed zero-point induction along x', T
  double b_z_zp = 0.0;            ///< signed zero-point induction along z, T
  double u_zp = 0.0;              ///< surface zero-point displacement amplitude, m
  double energy_per_phonon = 0.0; ///< hbar * omega, J
};

/// Per-depth diagnostics of the canonical-coordinate construction.
struct CanonicalDiagnostics {
  double z = 0.0;
  Eigen::Matrix3d g_matrix;   ///< potential quadratic-form coefficients
  Eigen::Matrix3d y_matrix;   ///< kinetic form after the first rotation
  Eigen::Matrix3d q1, q2;     ///< the two orthogonal transforms
  Eigen::Vector3d lambda_p;   ///< diagonal of the transformed potential form
  Eigen::Vector3d lambda_k;   ///< diagonal of the transformed kinetic form
  double offdiag_residual = 0.0;
  bool degenerate = false;    ///< first-stage spectrum has a (near-)zero eigenvalue
};

namespace detail {

struct Term {
  cd c;
  cd q;
};
using Terms = std::vector<Term>;

inline Terms u1_terms(const RayleighMode& m) {
  return {{m.cu1[0], m.q1}, {m.cu1[1], m.q2}};
}
inline Terms u3_terms(const RayleighMode& m) {
  return {{m.cu3[0], m.q1}, {m.cu3[1], m.q2}};
}
inline Terms psi_terms(const RayleighMode& m) {
  return {{m.cpsi[0], m.q1}, {m.cpsi[1], m.q2}, {m.cpsi_laplace, cd(1, 0)}};
}

inline Terms ddz(Terms t, double k) {
  for (auto& x : t) x.c *= -k * x.q;
  return t;
}
inline Terms times_ik(Terms t, double k) {
  for (auto& x : t) x.c *= cd(0, k);
  return t;
}
inline Terms merged(Terms a, const Terms& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline cd eval(const Terms& t, double k, double z) {
  cd s = 0;
  for (const auto& x : t) s += x.c * std::exp(-k * x.q * z);
  return s;
}

/// Depth integral of the time-averaged product <f g> = 2 Re[F conj(G)].
inline double integral(const Terms& a, const Terms& b, double k) {
  cd s = 0;
  for (const auto& x : a)
    for (const auto& y : b) s += x.c * std::conj(y.c) / (k * (x.q + std::conj(y.q)));
  return 2.0 * s.real();
}

inline double pointwise(const Terms& a, const Terms& b, double k, double z) {
  return 2.0 * (eval(a, k, z) * std::conj(eval(b, k, z))).real();
}

struct EnergyTerms {
  Terms u1, u3, s1, s3, s5, px, pz;
  double rho, c11p, c11, c12, c44, mu11, q31, q33, omega;
};

inline EnergyTerms energy_terms(const RayleighMode& mode, const MaterialParams& m) {
  const RotatedConstants rc = rotate_to_110(m);
  EnergyTerms e;
  const double k = mode.k;
  e.u1 = u1_terms(mode);
  e.u3 = u3_terms(mode);
  const Terms psi = psi_terms(mode);
  e.s1 = times_ik(e.u1, k);
  e.s3 = ddz(e.u3, k);
  e.s5 = merged(ddz(e.u1, k), times_ik(e.u3, k));
  e.px = times_ik(psi, k);
  e.pz = ddz(psi, k);
  e.rho = rc.rho;
  e.c11p = rc.c11_prime;
  e.c11 = rc.c11;
  e.c12 = rc.c12;
  e.c44 = rc.c44;
  e.mu11 = rc.mu11;
  e.q31 = rc.q31;
  e.q33 = rc.q33;
  e.omega = mode.omega;
  return e;
}

/// Adaptive Simpson quadrature.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double eps, int depth = 24) {
  struct Rec {
    static double run(const std::function<double(double)>& f, double a, double m, double b,
                      double fa, double fm, double fb, double whole, double eps, int depth) {
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::abs(left + right - whole) < 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
      return run(f, a, lm, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
             run(f, m, rm, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
    }
  };
  const double m = 0.5 * (a + b), fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Rec::run(f, a, m, b, fa, fm, fb, whole, eps, depth);
}

}  // namespace detail

/// Time-averaged kinetic and potential energy densities at depth z for a mode
/// carried with amplitude u0 (J/m^3). The potential density is the
/// Lagrangian-consistent one: elastic terms, magnetic terms with negative
/// sign, piezomagnetic cross terms.
inline std::pair<double, double> energy_densities(const RayleighMode& mode,
                                                  const MaterialParams& m, double u0, double z) {
  const auto e = detail::energy_terms(mode, m);
  const double k = mode.k;
  const double u2 = u0 * u0;
  const double kin =
      0.5 * e.rho * e.omega * e.omega *
      (detail::pointwise(e.u1, e.u1, k, z) + detail::pointwise(e.u3, e.u3, k, z)) * u2;
  const double pot =
      (0.5 * e.c11p * detail::pointwise(e.s1, e.s1, k, z) +
       0.5 * e.c11 * detail::pointwise(e.s3, e.s3, k, z) +
       e.c12 * detail::pointwise(e.s1, e.s3, k, z) +
       0.5 * e.c44 * detail::pointwise(e.s5, e.s5, k, z) -
       0.5 * e.mu11 * (detail::pointwise(e.px, e.px, k, z) + detail::pointwise(e.pz, e.pz, k, z)) +
       e.q31 * detail::pointwise(e.s1, e.pz, k, z) +
       e.q33 * detail::pointwise(e.s3, e.pz, k, z)) *
      u2;
  return {kin, pot};
}

/// Depth-integrated time-averaged energy per unit surface area at unit
/// amplitude, split as (kinetic, potential). Closed form: every integrand is a
/// sum of decaying exponentials.
inline std::pair<double, double> mode_energy_per_area(const RayleighMode& mode,
                                                      const MaterialParams& m) {
  const auto e = detail::energy_terms(mode, m);
  const double k = mode.k;
  const double kin = 0.5 * e.rho * e.omega * e.omega *
                     (detail::integral(e.u1, e.u1, k) + detail::integral(e.u3, e.u3, k));
  const double pot = 0.5 * e.c11p * detail::integral(e.s1, e.s1, k) +
                     0.5 * e.c11 * detail::integral(e.s3, e.s3, k) +
                     e.c12 * detail::integral(e.s1, e.s3, k) +
                     0.5 * e.c44 * detail::integral(e.s5, e.s5, k) -
                     0.5 * e.mu11 * (detail::integral(e.px, e.px, k) + detail::integral(e.pz, e.pz, k)) +
                     e.q31 * detail::integral(e.s1, e.pz, k) +
                     e.q33 * detail::integral(e.s3, e.pz, k);
  return {kin, pot};
}

/// Same total via adaptive quadrature of energy_densities on [0, 40/(k qa)].
inline double mode_energy_per_area_quadrature(const RayleighMode& mode, const MaterialParams& m,
                                              double rel_eps = 1e-10) {
  const double k = mode.k;
  const double qa = std::max(1e-3, std::min({mode.q_alpha > 0 ? mode.q_alpha : 1.0,
                                             mode.q1.real(), mode.q2.real()}));
  const double zmax = 40.0 / (k * qa);
  auto f = [&](double z) {
    const auto [kin, pot] = energy_densities(mode, m, 1.0, z);
    return kin + pot;
  };
  const double scale = std::abs(f(0.0)) * zmax + 1e-300;
  return detail::adaptive_simpson(f, 0.0, zmax, rel_eps * scale);
}

/// Signed zero-point induction components at the surface from the closed
/// forms; both scale as 2 k u0k q33.
inline std::pair<double, double> zero_point_fields(const RayleighMode& mode,
                                                   const MaterialParams& m, double u0k) {
  if (!(u0k > 0)) throw UsageError("zero_point_fields requires u0k > 0");
  if (m.q33 == 0.0) return {0.0, 0.0};
  if (!mode.canonical)
    throw UsageError("zero_point_fields requires a complex-pair (canonical) mode");
  const double pref = 2.0 * mode.k * u0k * m.q33;
  const double th = mode.theta, xi = mode.xi, tau = mode.tau;
  const double ga = mode.gamma_abs, qa = mode.q_alpha, qb = mode.q_beta;
  const double bx = pref * (mode.a_coef * std::cos(th + tau) + 0.5 * mode.a3_coef);
  const double bz = pref * (qa * ga * std::cos(th + xi) + qb * ga * std::sin(th + xi) +
                            mode.a_coef * qa * std::cos(th + tau) +
                            mode.a_coef * qb * std::sin(th + tau) +
                            (m.q31 / m.q33) * std::cos(th) + 0.5 * mode.a3_coef);
  return {bx, bz};
}

/// Fixes u0k so that the mode energy in the L x L cross-section quantization
/// volume equals one phonon under the declared convention, and evaluates the
/// zero-point observables.
inline QuantizedMode normalize_single_phonon(const RayleighMode& mode, const MaterialParams& m,
                                             double lateral_width_l) {
  if (!(lateral_width_l > 0)) throw UsageError("lateral width must be positive");
  const auto [kin, pot] = mode_energy_per_area(mode, m);
  const double e1 = kin + pot;
  if (!(e1 > 0))
    throw NumericalError("non-positive mode energy; solver inconsistency", e1);

  QuantizedMode qm;
  qm.mode = mode;
  qm.material = m;
  qm.lateral_width_l = lateral_width_l;
  qm.energy_per_phonon = constants::hbar * mode.omega;
  qm.u0k = norm_convention_factor *
           std::sqrt(constants::hbar * mode.omega / (lateral_width_l * lateral_width_l * e1));
  auto [bx, bz] = zero_point_fields(mode, m, qm.u0k);
  qm.b_xprime_zp = bx;
  qm.b_z_zp = bz;
  const double env1 = std::abs(std::cos(mode.theta));
  const double env3 = mode.gamma_abs * std::abs(std::cos(mode.theta + mode.xi));
  qm.u_zp = 2.0 * qm.u0k * std::max(env1, env3);
  return qm;
}

/// Depth profiles of the quantized generalized coordinates:
///   U1'(z) = 2 e^{-k qa z} cos(k qb z + theta)
///   U3(z)  = -2i |gamma| e^{-k qa z} cos(k qb z + theta + xi)
///   Psi(z) = i (q33/mu11) [2 A e^{-k qa z} cos(k qb z + theta + tau) + A3 e^{-kz}]
inline std::array<cd, 3> quantized_field_coefficients(const RayleighMode& mode,
                                                      const MaterialParams& /*m*/, double z) {
  const double k = mode.k;
  const cd u1 = detail::eval(detail::u1_terms(mode), k, z);
  const cd u3 = detail::eval(detail::u3_terms(mode), k, z);
  const cd psi = detail::eval(detail::psi_terms(mode), k, z);
  return {u1, u3, psi};
}

/// Builds the depth-local quadratic forms of the canonical-coordinate
/// construction and reports how well one orthogonal pair of transforms
/// diagonalizes both simultaneously.
///
/// The first transform Q1 diagonalizes the potential form G(z). The kinetic
/// metric diag(rho, rho, 0) rotated by Q1 gives Y(z); its eigenbasis is
/// degenerate on the mechanical plane, and the freedom inside that plane is
/// used to re-align with the potential, which pins Q2 uniquely. The kinetic
/// form ends up exactly diagonal and the potential form diagonal up to the
/// piezomagnetic-to-elastic scale ratio.
inline CanonicalDiagnostics verify_canonical_form(const RayleighMode& mode,
                                                  const MaterialParams& m, double z) {
  if (!mode.canonical)
    throw UsageError("verify_canonical_form requires a complex-pair (canonical) mode");
  if (z < 0) throw UsageError("verify_canonical_form requires z >= 0");
  const RotatedConstants rc = rotate_to_110(m);
  const double k = mode.k;
  const double th = mode.theta, xi = mode.xi, tau = mode.tau;
  const double qa = mode.q_alpha, qb = mode.q_beta, ga = mode.gamma_abs;
  const double c1 = std::cos(k * qb * z + th);
  const double c3 = std::cos(k * qb * z + th + xi);

  // Derivative-coupling coefficients: each spatial derivative of a
  // generalized coordinate is k times a real multiple of a coordinate.
  const double a1 = (c3 == 0.0) ? 0.0 : -c1 / (ga * c3);          // d u1'/dx' ~ u3
  const double a2 = -qa - qb * std::tan(k * qb * z + th);         // d u1'/dz  ~ u1'
  const double a3 = (c1 == 0.0) ? 0.0 : ga * c3 / c1;             // d u3 /dx' ~ u1'
  const double a4 = -qa - qb * std::tan(k * qb * z + th + xi);    // d u3 /dz  ~ u3
  double a5 = 0.0, a6 = 0.0;
  if (rc.q33 != 0.0) {
    const double fz = 2.0 * mode.a_coef * std::exp(-k * qa * z) * std::cos(k * qb * z + th + tau) +
                      mode.a3_coef * std::exp(-k * z);
    const double dfz = -2.0 * mode.a_coef * std::exp(-k * qa * z) *
                           (qa * std::cos(k * qb * z + th + tau) + qb * std::sin(k * qb * z + th + tau)) -
                       mode.a3_coef * std::exp(-k * z);
    a5 = (c1 == 0.0) ? 0.0 : -(rc.q33 / rc.mu11) * fz / (2.0 * c1);  // d psi/dx' ~ u1'
    a6 = (fz == 0.0) ? 0.0 : dfz / fz;                               // d psi/dz  ~ psi
  }

  CanonicalDiagnostics d;
  d.z = z;
  Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
  g(0, 0) = rc.c44 * (a2 + a3) * (a2 + a3) - rc.mu11 * a5 * a5;
  g(1, 1) = rc.c11_prime * a1 * a1 + rc.c11 * a4 * a4 + 2.0 * rc.c12 * a1 * a4;
  g(2, 2) = -rc.mu11 * a6 * a6;
  g(1, 2) = g(2, 1) = (rc.q31 * a1 + rc.q33 * a4) * a6;
  d.g_matrix = g;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es1(g);
  d.q1 = es1.eigenvectors();
  const Eigen::Vector3d lam1 = es1.eigenvalues();

  // The three coordinates carry different units, so the eigenvalues live on
  // wildly different scales; a zero eigenvalue shows up as an identically
  // vanishing row of G (potential sector dropping out at this depth).
  d.degenerate = false;
  for (int r = 0; r < 3; ++r)
    if (g.row(r).cwiseAbs().maxCoeff() == 0.0) d.degenerate = true;

  Eigen::Matrix3d kin_metric = Eigen::Matrix3d::Zero();
  kin_metric(0, 0) = kin_metric(1, 1) = rc.rho;
  const Eigen::Matrix3d y = d.q1.transpose() * kin_metric * d.q1;
  d.y_matrix = y;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es2(y);
  Eigen::Matrix3d q2 = es2.eigenvectors();
  const Eigen::Vector3d ylam = es2.eigenvalues();

  // Rotate inside (near-)degenerate kinetic eigenspaces to diagonalize the
  // projected potential there; this is the unique orthogonal completion.
  const Eigen::Matrix3d lam1m = lam1.asDiagonal();
  for (int i = 0; i < 3;) {
    int j = i + 1;
    while (j < 3 && std::abs(ylam(j) - ylam(i)) <= 1e-9 * rc.rho) ++j;
    if (j - i == 2) {
      Eigen::Matrix<double, 3, 2> sub = q2.block<3, 2>(0, i);
      Eigen::Matrix2d proj = sub.transpose() * lam1m * sub;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> esp(proj);
      q2.block<3, 2>(0, i) = sub * esp.eigenvectors();
    } else if (j - i == 3) {
      Eigen::Matrix3d proj = q2.transpose() * lam1m * q2;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> esp(proj);
      q2 = q2 * esp.eigenvectors();
    }
    i = j;
  }
  d.q2 = q2;

  const Eigen::Matrix3d tk = q2.transpose() * y * q2;
  const Eigen::Matrix3d tp = q2.transpose() * lam1m * q2;
  d.lambda_k = tk.diagonal();
  d.lambda_p = tp.diagonal();

  auto offdiag_ratio = [](const Eigen::Matrix3d& t) {
    double off = 0.0, diag = 0.0;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        if (r == c)
          diag = std::max(diag, std::abs(t(r, c)));
        else
          off = std::max(off, std::abs(t(r, c)));
      }
    return diag > 0 ? off / diag : 0.0;
  };
  d.offdiag_residual = std::max(offdiag_ratio(tk), offdiag_ratio(tp));
  return d;
}

}  // namespace pmsaw::quantize
