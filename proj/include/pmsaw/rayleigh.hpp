#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "pmsaw/constants.hpp"
#include "pmsaw/errors.hpp"
#include "pmsaw/materials.hpp"

namespace pmsaw::rayleigh {

using cd = std::complex<double>;

/// A solved Rayleigh-type surface mode.
///
/// The sagittal displacement is a superposition of two decaying partial waves
/// with complex decay constants q1, q2 (a conjugate pair for cubic media in
/// the [110] frame); the magnetic potential adds the Laplace branch e^{-kz}.
/// When the pair is complex the profile collapses to the compact form
///   u1'(z) = 2 e^{-k qa z} cos(k qb z + theta),
///   u3(z)  = -2i |gamma| e^{-k qa z} cos(k qb z + theta + xi),
///   psi(z) = i (q33/mu11) [2 A e^{-k qa z} cos(k qb z + theta + tau) + A3 e^{-kz}],
/// and the fields theta/gamma_abs/xi/a_coef/tau/a3_coef hold that
/// parametrization (canonical == true).
struct RayleighMode {
  double k = 0.0;      ///< wavenumber, rad/m
  double omega = 0.0;  ///< angular frequency, rad/s (= k*v)
  double v = 0.0;      ///< phase velocity, m/s

  cd q1, q2;  ///< decaying partial-wave constants, Re > 0; q1 has Im >= 0

  bool canonical = false;
  double q_alpha = 0.0;
  double q_beta = 0.0;
  double theta = 0.0;
  double gamma_abs = 0.0;
  double xi = 0.0;
  double a_coef = 0.0;
  double tau = 0.0;
  double a3_coef = 0.0;

  /// Envelope coefficients per unit amplitude: field = sum_j c[j] e^{-k q_j z}
  /// (psi carries the extra Laplace coefficient on e^{-kz}).
  std::array<cd, 2> cu1{}, cu3{}, cpsi{};
  cd cpsi_laplace{};

  int root_count = 1;  ///< number of admissible velocity roots found in the bracket
};

/// Pointwise complex field sample; the physical fields are these phasors
/// plus their conjugates (the counter-propagating -k companion).
struct FieldSample {
  double x_prime = 0.0, z = 0.0, t = 0.0;
  cd u1_prime, u3;        ///< displacement, m
  cd psi;                 ///< magnetic potential, A
  cd b_xprime, b_z;       ///< magnetic induction, T
  cd s11_prime, s33, s13; ///< tensor strain components
};

namespace detail {

/// Elastic quadratic in s = q^2 for the sagittal [110] problem:
///   e2 s^2 + e1 s + e0 = 0 with
///   e2 = C11 C44, e1 = -(A1 C11 + A2 C44 - P^2), e0 = A1 A2,
///   A1 = C11' - rho v^2, A2 = C44 - rho v^2, P = C12 + C44.
struct ElasticQuadratic {
  double e2, e1, e0;
};

inline ElasticQuadratic elastic_quadratic(const RotatedConstants& rc, double v) {
  const double X = rc.rho * v * v;
  const double a1 = rc.c11_prime - X;
  const double a2 = rc.c44 - X;
  const double p = rc.c12 + rc.c44;
  return {rc.c11 * rc.c44, -(a1 * rc.c11 + a2 * rc.c44 - p * p), a1 * a2};
}

inline std::array<cd, 2> elastic_s_roots(const RotatedConstants& rc, double v) {
  const auto [e2, e1, e0] = elastic_quadratic(rc, v);
  const cd disc = cd(e1 * e1 - 4.0 * e2 * e0, 0.0);
  const cd r = std::sqrt(disc);
  cd s1 = (-e1 + r) / (2.0 * e2);
  cd s2 = (-e1 - r) / (2.0 * e2);
  return {s1, s2};
}

/// Decaying branch: sqrt with Re >= 0.
inline cd decaying_sqrt(cd s) {
  cd q = std::sqrt(s);
  if (q.real() < 0.0) q = -q;
  return q;
}

/// Null vector (U1', W) of the elastic 2x2 block at a root s = q^2.
/// Row 1 gives (U1', W) ~ (-i q P, a) with a = C11' - C44 s - rho v^2;
/// row 2 gives (d, -i q P) with d = C44 - C11 s - rho v^2. Pick the better
/// conditioned representation.
inline std::array<cd, 2> elastic_null(const RotatedConstants& rc, double v, cd q) {
  const double X = rc.rho * v * v;
  const cd s = q * q;
  const double p = rc.c12 + rc.c44;
  const cd a = rc.c11_prime - rc.c44 * s - X;
  const cd d = rc.c44 - rc.c11 * s - X;
  if (std::abs(a) >= std::abs(d)) return {cd(0, -1) * q * p, a};
  return {d, cd(0, -1) * q * p};
}

/// Magnetic potential amplitude slaved to a displacement partial wave through
/// the Gauss law: Psi = (i q q31 U1' - q^2 q33 W) / (mu11 (1 - q^2)).
inline cd slaved_psi(const RotatedConstants& rc, cd q, cd u1, cd w) {
  const cd s = q * q;
  const cd denom = rc.mu11 * (1.0 - s);
  return (cd(0, 1) * q * rc.q31 * u1 - s * rc.q33 * w) / denom;
}

/// Boundary-condition column for one partial wave (common factor k removed):
///   row 0: T13 = C44 (-q U1' + i W)
///   row 1: T33 (elastic traction) = i C12 U1' - C11 q W
///   row 2: magnetic continuity  = (mu0 + mu11 q) Psi + i q31 U1' - q33 q W
inline Eigen::Vector3cd boundary_column(const RotatedConstants& rc, cd q, cd u1, cd w, cd psi) {
  Eigen::Vector3cd col;
  col(0) = rc.c44 * (-q * u1 + cd(0, 1) * w);
  col(1) = cd(0, 1) * rc.c12 * u1 - rc.c11 * q * w;
  col(2) = (constants::mu0 + rc.mu11 * q) * psi + cd(0, 1) * rc.q31 * u1 - rc.q33 * q * w;
  return col;
}

struct BoundarySystem {
  Eigen::Matrix3cd m;       // columns: pair wave 1, pair wave 2, Laplace branch
  std::array<cd, 2> q;      // pair decay constants
  std::array<cd, 2> u1, w;  // pair null vectors
  std::array<cd, 2> psi;    // slaved potential amplitudes
  bool distinct = true;     // pair roots well separated
};

inline BoundarySystem boundary_system(const RotatedConstants& rc, double v) {
  BoundarySystem b;
  const auto s = elastic_s_roots(rc, v);
  // Deterministic ordering: complex pair -> positive-Im member first;
  // real roots -> descending s.
  std::array<cd, 2> so = s;
  if (std::abs(so[0].imag()) > 1e-12 * std::abs(so[0])) {
    if (so[0].imag() < so[1].imag()) std::swap(so[0], so[1]);
  } else if (so[0].real() < so[1].real()) {
    std::swap(so[0], so[1]);
  }
  b.distinct = std::abs(so[0] - so[1]) > 1e-8 * (std::abs(so[0]) + std::abs(so[1]) + 1e-300);

  for (int j = 0; j < 2; ++j) {
    const cd q = decaying_sqrt(so[j]);
    auto nv = elastic_null(rc, v, q);
    const double nrm = std::sqrt(std::norm(nv[0]) + std::norm(nv[1]));
    nv[0] /= nrm;
    nv[1] /= nrm;
    b.q[j] = q;
    b.u1[j] = nv[0];
    b.w[j] = nv[1];
    b.psi[j] = (rc.q33 == 0.0 && rc.q31 == 0.0) ? cd(0, 0) : slaved_psi(rc, q, nv[0], nv[1]);
  }
  // Enforce the exact conjugate structure for a complex pair so the
  // determinant stays on a single real/imaginary ray.
  if (std::abs(so[0].imag()) > 1e-12 * std::abs(so[0])) {
    b.q[1] = std::conj(b.q[0]);
    b.u1[1] = -std::conj(b.u1[0]);
    b.w[1] = std::conj(b.w[0]);
    b.psi[1] = std::conj(b.psi[0]);
  }

  b.m.col(0) = boundary_column(rc, b.q[0], b.u1[0], b.w[0], b.psi[0]);
  b.m.col(1) = boundary_column(rc, b.q[1], b.u1[1], b.w[1], b.psi[1]);
  b.m.col(2) = boundary_column(rc, cd(1, 0), cd(0, 0), cd(0, 0), cd(1, 0));
  return b;
}

/// Boundary determinant with rows and columns scaled to unit max magnitude,
/// so the value is O(1) away from roots; the zero set is unchanged.
inline cd normalized_determinant(Eigen::Matrix3cd m) {
  for (int r = 0; r < 3; ++r) {
    const double scale = m.row(r).cwiseAbs().maxCoeff();
    if (scale > 0.0) m.row(r) /= scale;
  }
  for (int c = 0; c < 3; ++c) {
    const double scale = m.col(c).cwiseAbs().maxCoeff();
    if (scale > 0.0) m.col(c) /= scale;
  }
  return m.determinant();
}

/// Real scan variable: the determinant lies on the real or imaginary axis
/// depending on whether the pair is complex; one component is always ~0.
inline double det_scan_value(cd det) { return det.real() + det.imag(); }

}  // namespace detail

/// Coefficient matrix of the partial-wave substitution
/// (U1', W, Psi) e^{-kqz} e^{i(kx'-wt)}. Rows 0-1 are the sagittal equations
/// of motion, row 2 the magnetic Gauss law. The solver works in the
/// weak-coupling form in which the piezomagnetic back-action on the motion is
/// dropped, so rows 0-1 carry no potential column; this is the formulation
/// whose mode parameters the reference values correspond to.
inline Eigen::Matrix3cd characteristic_matrix(const RotatedConstants& rc, double v, cd q) {
  const double X = rc.rho * v * v;
  const cd s = q * q;
  const double p = rc.c12 + rc.c44;
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  m(0, 0) = rc.c11_prime - rc.c44 * s - X;
  m(0, 1) = cd(0, 1) * q * p;
  m(1, 0) = m(0, 1);
  m(1, 1) = rc.c44 - rc.c11 * s - X;
  m(2, 0) = cd(0, 1) * q * rc.q31;
  m(2, 1) = -rc.q33 * s;
  m(2, 2) = rc.mu11 * (s - 1.0);
  return m;
}

struct DecayRoot {
  cd q;                        ///< decay constant, Re(q) > 0
  Eigen::Vector3cd amplitude;  ///< null-space vector (U1', W, Psi)
};

/// All decaying roots of det(characteristic_matrix) = 0. The determinant is a
/// cubic polynomial in s = q^2; its coefficients are expanded symbolically and
/// the roots obtained from the companion-matrix eigenproblem.
inline std::vector<DecayRoot> decay_roots(const RotatedConstants& rc, double v) {
  const auto [e2, e1, e0] = detail::elastic_quadratic(rc, v);
  // det = mu11 (s - 1) (e2 s^2 + e1 s + e0): cubic c3 s^3 + c2 s^2 + c1 s + c0.
  const double c3 = rc.mu11 * e2;
  const double c2 = rc.mu11 * (e1 - e2);
  const double c1 = rc.mu11 * (e0 - e1);
  const double c0 = -rc.mu11 * e0;

  Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
  comp(1, 0) = 1.0;
  comp(2, 1) = 1.0;
  comp(0, 2) = -c0 / c3;
  comp(1, 2) = -c1 / c3;
  comp(2, 2) = -c2 / c3;
  Eigen::EigenSolver<Eigen::Matrix3d> es(comp);
  if (es.info() != Eigen::Success)
    throw NumericalError("companion-matrix eigenproblem failed to converge");

  std::vector<DecayRoot> roots;
  const double poly_scale =
      std::abs(c3) + std::abs(c2) + std::abs(c1) + std::abs(c0);
  for (int i = 0; i < 3; ++i) {
    const cd s = es.eigenvalues()(i);
    const cd resid = ((c3 * s + c2) * s + c1) * s + c0;
    if (std::abs(resid) > 1e-8 * poly_scale)
      throw NumericalError("companion root residual too large", std::abs(resid));
    const cd q = detail::decaying_sqrt(s);
    if (!(q.real() > 1e-12)) continue;  // non-decaying branch

    DecayRoot r;
    r.q = q;
    const double elastic_resid = std::abs((e2 * s + e1) * s + e0);
    const double magnetic_resid = std::abs(s - 1.0) * (std::abs(e2) + std::abs(e1) + std::abs(e0));
    if (magnetic_resid <= elastic_resid) {
      r.amplitude = Eigen::Vector3cd(0, 0, 1);
    } else {
      auto nv = detail::elastic_null(rc, v, q);
      const double nrm = std::sqrt(std::norm(nv[0]) + std::norm(nv[1]));
      const cd psi = (rc.q33 == 0.0 && rc.q31 == 0.0)
                         ? cd(0, 0)
                         : detail::slaved_psi(rc, q, nv[0] / nrm, nv[1] / nrm);
      r.amplitude = Eigen::Vector3cd(nv[0] / nrm, nv[1] / nrm, psi);
    }
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(), [](const DecayRoot& a, const DecayRoot& b) {
    if (a.q.real() != b.q.real()) return a.q.real() < b.q.real();
    return a.q.imag() < b.q.imag();
  });
  return roots;
}

/// Determinant of the surface boundary system (stress-free surface plus
/// magnetic continuity against the vacuum branch psi' = psi0' e^{kz}) over the
/// decaying partial waves and the homogeneous magnetic solution e^{-kz}.
/// Normalized so its magnitude is O(1) away from roots.
inline cd boundary_determinant(const RotatedConstants& rc, double v) {
  if (!(v > 0.0)) throw UsageError("boundary_determinant requires v > 0");
  return detail::normalized_determinant(detail::boundary_system(rc, v).m);
}

namespace detail {

inline double wrap_pi(double a) {
  // reduce to (-pi, pi]
  a = std::fmod(a, constants::two_pi);
  if (a <= -constants::pi) a += constants::two_pi;
  if (a > constants::pi) a -= constants::two_pi;
  return a;
}

/// Extracts the compact cosine-profile parameters from the solved
/// superposition and rebuilds the envelope coefficients from them.
inline void canonicalize(RayleighMode& mode, const RotatedConstants& rc,
                         const BoundarySystem& b, const Eigen::Vector3cd& alpha) {
  std::array<cd, 2> cu1{alpha(0) * b.u1[0], alpha(1) * b.u1[1]};
  std::array<cd, 2> cu3{alpha(0) * b.w[0], alpha(1) * b.w[1]};
  std::array<cd, 2> cpsi{alpha(0) * b.psi[0], alpha(1) * b.psi[1]};
  cd cpsi_l = alpha(2);

  const bool complex_pair = std::abs(b.q[0].imag()) > 1e-9 * std::abs(b.q[0]);
  mode.q1 = b.q[0];
  mode.q2 = b.q[1];

  if (!complex_pair) {
    // Real-exponent regime (isotropic media): keep the raw two-wave profile.
    mode.canonical = false;
    cd phase = cu3[0];
    if (std::abs(phase) < 1e-30) phase = cu1[0];
    phase /= std::abs(phase);
    double scale = 0.0;
    for (int j = 0; j < 2; ++j)
      scale = std::max({scale, std::abs(cu1[j]), std::abs(cu3[j])});
    for (int j = 0; j < 2; ++j) {
      mode.cu1[j] = cu1[j] / phase / scale;
      mode.cu3[j] = cu3[j] / phase / scale;
      mode.cpsi[j] = cpsi[j] / phase / scale;
    }
    mode.cpsi_laplace = cpsi_l / phase / scale;
    mode.q_alpha = std::min(b.q[0].real(), b.q[1].real());
    mode.q_beta = 0.0;
    return;
  }

  mode.canonical = true;
  mode.q_alpha = b.q[0].real();
  mode.q_beta = std::abs(b.q[0].imag());

  // The two pair coefficients of u1' must have equal magnitude; a global
  // phase rotation then puts them at e^{-i theta}, e^{+i theta}.
  const double mag_defect =
      std::abs(std::abs(cu1[0]) - std::abs(cu1[1])) / std::max(std::abs(cu1[0]), std::abs(cu1[1]));
  if (mag_defect > 1e-6)
    throw NumericalError("mode decomposition lost conjugate symmetry", mag_defect);

  double theta = 0.5 * (std::arg(cu1[1]) - std::arg(cu1[0]));
  const double gphase = -0.5 * (std::arg(cu1[0]) + std::arg(cu1[1]));
  cd rot = std::polar(1.0, gphase);
  theta = wrap_pi(theta);
  if (theta < 0.0) {  // flip the global sign to land theta in [0, pi)
    theta += constants::pi;
    rot = -rot;
  }
  if (theta >= constants::pi) {
    theta -= constants::pi;
    rot = -rot;
  }
  const double scale = std::abs(cu1[0]);
  rot /= scale;

  for (int j = 0; j < 2; ++j) {
    cu1[j] *= rot;
    cu3[j] *= rot;
    cpsi[j] *= rot;
  }
  cpsi_l *= rot;

  mode.theta = theta;
  mode.gamma_abs = std::abs(cu3[0]);
  mode.xi = wrap_pi(-std::arg(cd(0, 1) * cu3[0]) - theta);

  if (rc.q33 == 0.0) {
    // Degenerate potential scale: magnetic outputs are identically zero.
    mode.a_coef = 0.0;
    mode.tau = 0.0;
    mode.a3_coef = 0.0;
  } else {
    const cd wa = cpsi[0] * rc.mu11 / (cd(0, 1) * rc.q33);
    mode.a_coef = std::abs(wa);
    mode.tau = wrap_pi(-std::arg(wa) - theta);
    const cd a3 = cpsi_l * rc.mu11 / (cd(0, 1) * rc.q33);
    if (std::abs(a3.imag()) > 1e-6 * (std::abs(a3) + 1e-300))
      throw NumericalError("Laplace branch coefficient is not real", std::abs(a3.imag()));
    mode.a3_coef = a3.real();
  }

  // Rebuild the envelopes exactly from the extracted parameters.
  const cd em = std::polar(1.0, -theta);
  mode.cu1 = {em, std::conj(em)};
  mode.cu3 = {cd(0, -1) * mode.gamma_abs * std::polar(1.0, -(theta + mode.xi)),
              cd(0, -1) * mode.gamma_abs * std::polar(1.0, theta + mode.xi)};
  if (rc.q33 == 0.0) {
    mode.cpsi = {cd(0, 0), cd(0, 0)};
    mode.cpsi_laplace = cd(0, 0);
  } else {
    const cd pref = cd(0, 1) * rc.q33 / rc.mu11;
    mode.cpsi = {pref * mode.a_coef * std::polar(1.0, -(theta + mode.tau)),
                 pref * mode.a_coef * std::polar(1.0, theta + mode.tau)};
    mode.cpsi_laplace = pref * mode.a3_coef;
  }

  // Consistency of the rebuild against the raw superposition. The potential
  // part is skipped in the degenerate q33 = 0 case, where the magnetic
  // outputs are zeroed by contract.
  const double tol = 1e-7;
  auto defect = [&](cd x, cd y) {
    return std::abs(x - y) / (std::abs(x) + std::abs(y) + 1e-12);
  };
  double worst = std::max(defect(mode.cu1[0], cu1[0]), defect(mode.cu3[0], cu3[0]));
  if (rc.q33 != 0.0) worst = std::max(worst, defect(mode.cpsi[0], cpsi[0]));
  if (worst > tol)
    throw NumericalError("canonical-form rebuild mismatch (relative defect " +
                             std::to_string(worst) + ")",
                         worst);
}

}  // namespace detail

/// Solves the surface-wave boundary problem: brackets the boundary
/// determinant over (0.3, 0.999) v_shear with a 200-sample scan, polishes the
/// slowest admissible root by bisection plus a secant refinement, and
/// decomposes the boundary null vector into the mode parametrization.
inline RayleighMode solve_mode(const MaterialParams& m, double k) {
  if (!(k > 0.0)) throw UsageError("solve_mode requires k > 0");
  const RotatedConstants rc = rotate_to_110(m);
  const double vs = std::sqrt(rc.c44 / rc.rho);

  auto chi = [&](double v) {
    return detail::det_scan_value(detail::normalized_determinant(detail::boundary_system(rc, v).m));
  };

  const int n_scan = 200;
  const double vlo = 0.3 * vs, vhi = 0.999 * vs;
  std::vector<double> vg(n_scan), fg(n_scan);
  for (int i = 0; i < n_scan; ++i) {
    vg[i] = vlo + (vhi - vlo) * i / (n_scan - 1);
    fg[i] = chi(vg[i]);
  }

  std::vector<double> roots;
  for (int i = 0; i + 1 < n_scan; ++i) {
    if (!(fg[i] == 0.0) && !(fg[i] * fg[i + 1] < 0.0)) continue;
    double a = vg[i], b = vg[i + 1], fa = fg[i], fb = fg[i + 1];
    for (int it = 0; it < 100 && (b - a) > 1e-13 * vs; ++it) {
      double mid;
      if (it % 3 == 2 && fb != fa) {  // secant step, clamped to the bracket
        mid = b - fb * (b - a) / (fb - fa);
        if (!(mid > a && mid < b)) mid = 0.5 * (a + b);
      } else {
        mid = 0.5 * (a + b);
      }
      const double fm = chi(mid);
      if (fa * fm <= 0.0) {
        b = mid;
        fb = fm;
      } else {
        a = mid;
        fa = fm;
      }
    }
    const double vr = 0.5 * (a + b);
    const auto sys = detail::boundary_system(rc, vr);
    if (!sys.distinct) continue;  // degenerate-pair artifact, not a mode
    if (!(sys.q[0].real() > 1e-12) || !(sys.q[1].real() > 1e-12)) continue;
    if (std::abs(detail::normalized_determinant(sys.m)) > 1e-9) continue;
    roots.push_back(vr);
  }

  if (roots.empty())
    throw NumericalError("no surface mode in (0.3, 0.999) v_shear");

  RayleighMode mode;
  mode.root_count = static_cast<int>(roots.size());
  mode.v = roots.front();  // slowest
  mode.k = k;
  mode.omega = k * mode.v;

  const auto sys = detail::boundary_system(rc, mode.v);
  // Null vector of the boundary matrix via SVD on the row/column-equilibrated
  // system; the raw entries span many orders of magnitude and would otherwise
  // let a small but nonsingular direction masquerade as the null space.
  Eigen::Matrix3cd msc = sys.m;
  for (int r = 0; r < 3; ++r) {
    const double s = msc.row(r).cwiseAbs().maxCoeff();
    if (s > 0.0) msc.row(r) /= s;
  }
  Eigen::Vector3d colscale = Eigen::Vector3d::Ones();
  for (int c = 0; c < 3; ++c) {
    const double s = msc.col(c).cwiseAbs().maxCoeff();
    if (s > 0.0) {
      msc.col(c) /= s;
      colscale(c) = s;
    }
  }
  Eigen::JacobiSVD<Eigen::Matrix3cd> svd(msc, Eigen::ComputeFullV);
  Eigen::Vector3cd alpha = svd.matrixV().col(2);
  for (int c = 0; c < 3; ++c) alpha(c) /= colscale(c);
  detail::canonicalize(mode, rc, sys, alpha);
  return mode;
}

/// Evaluates displacement, potential, strain and induction at a point.
/// z < 0 is the vacuum half-space: displacement and strain vanish and the
/// potential follows the e^{kz} branch.
inline FieldSample evaluate_fields(const RayleighMode& mode, const MaterialParams& m, double u0,
                                   double x_prime, double z, double t) {
  const RotatedConstants rc = rotate_to_110(m);
  const double k = mode.k;
  const cd phase = std::polar(1.0, k * x_prime - mode.omega * t);
  const std::array<cd, 2> q{mode.q1, mode.q2};

  FieldSample f;
  f.x_prime = x_prime;
  f.z = z;
  f.t = t;

  if (z >= 0.0) {
    cd u1 = 0, u3 = 0, psi = 0, du1 = 0, du3 = 0, dpsi = 0;
    for (int j = 0; j < 2; ++j) {
      const cd e = std::exp(-k * q[j] * z);
      u1 += mode.cu1[j] * e;
      u3 += mode.cu3[j] * e;
      psi += mode.cpsi[j] * e;
      du1 += -k * q[j] * mode.cu1[j] * e;
      du3 += -k * q[j] * mode.cu3[j] * e;
      dpsi += -k * q[j] * mode.cpsi[j] * e;
    }
    const double el = std::exp(-k * z);
    psi += mode.cpsi_laplace * el;
    dpsi += -k * mode.cpsi_laplace * el;

    const cd ik = cd(0, k);
    f.u1_prime = u0 * u1 * phase;
    f.u3 = u0 * u3 * phase;
    f.psi = u0 * psi * phase;
    f.s11_prime = u0 * ik * u1 * phase;
    f.s33 = u0 * du3 * phase;
    f.s13 = u0 * 0.5 * (du1 + ik * u3) * phase;
    f.b_xprime = -rc.mu11 * u0 * ik * psi * phase;
    f.b_z = (-rc.mu11 * dpsi + rc.q31 * ik * u1 + rc.q33 * du3) * u0 * phase;
    return f;
  }

  // Vacuum branch: psi(0) e^{kz}.
  cd psi0 = mode.cpsi_laplace;
  for (int j = 0; j < 2; ++j) psi0 += mode.cpsi[j];
  const double ez = std::exp(k * z);
  f.u1_prime = f.u3 = f.s11_prime = f.s33 = f.s13 = cd(0, 0);
  f.psi = u0 * psi0 * ez * phase;
  f.b_xprime = -constants::mu0 * cd(0, k) * f.psi;
  f.b_z = -constants::mu0 * k * f.psi;
  return f;
}

}  // namespace pmsaw::rayleigh
