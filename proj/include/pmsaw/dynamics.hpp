#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "pmsaw/constants.hpp"
#include "pmsaw/errors.hpp"

namespace pmsaw::dynamics {

using cd = std::complex<double>;

/// Two identical emitters coupled through a one-dimensional phonon channel:
///   da/dt = -G0 a(t) - G0 e^{i theta} b(t - T) H(t - T)
/// and the mirrored equation for b. theta is an independent input; a helper
/// reconciles it with (w10, T) on request.
struct DDEProblem {
  double gamma0 = 0.0;   ///< channel decay rate, rad/s
  double delay_t = 0.0;  ///< propagation delay T, s
  double theta_t = 0.0;  ///< propagation phase, rad
  cd alpha_a0{1.0, 0.0};
  cd alpha_b0{0.0, 0.0};
  double t_max = 0.0;    ///< s
  double dt = 0.0;       ///< requested step, s (aligned to divide the delay)

  void validate() const {
    if (!(gamma0 > 0)) throw UsageError("gamma0 must be positive");
    if (delay_t < 0) throw UsageError("delay_t must be non-negative");
    if (!(t_max > 0)) throw UsageError("t_max must be positive");
    if (!(dt > 0)) throw UsageError("dt must be positive");
    if (delay_t > 0 && dt > delay_t / 50.0)
      throw UsageError("dt must not exceed delay_t/50");
    if (delay_t == 0 && dt > 0.01 / gamma0)
      throw UsageError("dt must not exceed 0.01/gamma0 when delay_t = 0");
    if (std::norm(alpha_a0) + std::norm(alpha_b0) > 1.0 + 1e-12)
      throw UsageError("initial excitation exceeds one");
  }
};

struct Trace {
  std::vector<double> times;
  std::vector<cd> alpha_a, alpha_b;
  std::vector<double> p_a, p_b, concurrence;

  size_t size() const { return times.size(); }

  /// Index of the last node with time <= t.
  size_t index_at(double t) const {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    return it == times.begin() ? 0 : static_cast<size_t>(it - times.begin()) - 1;
  }
};

inline double concurrence_of(cd a, cd b) { return 2.0 * std::abs(a * std::conj(b)); }

/// Propagation phase w10*T reduced to [0, 2 pi).
inline double theta_from_delay(double omega10, double delay_t) {
  double th = std::fmod(omega10 * delay_t, constants::two_pi);
  if (th < 0) th += constants::two_pi;
  return th;
}

namespace detail {

struct State {
  cd a, b;
};

/// Cubic Hermite interpolation on one stored step.
inline cd hermite(double s, cd y0, cd y1, cd d0, cd d1, double h) {
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * y1 +
         (s3 - s2) * h * d1;
}

}  // namespace detail

/// Method-of-steps integrator: classical 4th-order stepping on a mesh aligned
/// with the delay, with dense cubic history interpolation for the delayed
/// argument at interior stage times. History before t = 0 is the zero
/// extension; the delayed term switches on at t = T (right-continuous inside
/// steps, so breakpoints sit exactly on mesh nodes).
inline Trace integrate(const DDEProblem& p) {
  p.validate();
  const double g = p.gamma0;
  const cd phase = std::polar(1.0, p.theta_t);
  const double T = p.delay_t;

  double h = p.dt;
  long n_delay = 0;
  if (T > 0) {
    n_delay = static_cast<long>(std::ceil(T / p.dt - 1e-9));
    h = T / static_cast<double>(n_delay);
  }
  const long n_steps = static_cast<long>(std::ceil(p.t_max / h - 1e-9));

  Trace tr;
  tr.times.reserve(n_steps + 1);
  tr.alpha_a.reserve(n_steps + 1);
  tr.alpha_b.reserve(n_steps + 1);
  // Per-node slopes for the dense cubic output: the right limit seeds the
  // window starting at a node, the left limit closes the window ending there.
  // They differ only where the delayed term switches on (t = T).
  std::vector<cd> dra(n_steps + 1), drb(n_steps + 1), dla(n_steps + 1), dlb(n_steps + 1);

  auto hist = [&](const std::vector<cd>& y, const std::vector<cd>& dr, const std::vector<cd>& dl,
                  double t) -> cd {
    // The lookup time is formed as a difference of mesh times and can sit a
    // rounding error below an exact node (including zero).
    if (t <= -1e-6 * h) return cd(0, 0);
    const double x = std::max(t, 0.0) / h;
    long i = static_cast<long>(std::floor(x + 1e-9));
    const double frac = x - static_cast<double>(i);
    if (frac < 1e-9) return y[i];
    return detail::hermite(frac, y[i], y[i + 1], dr[i], dl[i + 1], h);
  };

  // Right-hand side; `delayed_on` reflects whether the step being integrated
  // lies past the first delay window.
  auto rhs = [&](double t, detail::State s, bool delayed_on) -> detail::State {
    cd fa = -g * s.a;
    cd fb = -g * s.b;
    if (T == 0.0) {
      fa -= g * phase * s.b;
      fb -= g * phase * s.a;
    } else if (delayed_on) {
      fa -= g * phase * hist(tr.alpha_b, drb, dlb, t - T);
      fb -= g * phase * hist(tr.alpha_a, dra, dla, t - T);
    }
    return {fa, fb};
  };

  detail::State y{p.alpha_a0, p.alpha_b0};
  tr.times.push_back(0.0);
  tr.alpha_a.push_back(y.a);
  tr.alpha_b.push_back(y.b);
  {
    const auto d0 = rhs(0.0, y, n_delay == 0);
    dra[0] = dla[0] = d0.a;
    drb[0] = dlb[0] = d0.b;
  }

  for (long n = 0; n < n_steps; ++n) {
    const double t = static_cast<double>(n) * h;
    const bool on = (T == 0.0) || (n >= n_delay);
    const detail::State k1 = rhs(t, y, on);
    const detail::State k2 =
        rhs(t + 0.5 * h, {y.a + 0.5 * h * k1.a, y.b + 0.5 * h * k1.b}, on);
    const detail::State k3 =
        rhs(t + 0.5 * h, {y.a + 0.5 * h * k2.a, y.b + 0.5 * h * k2.b}, on);
    const detail::State k4 = rhs(t + h, {y.a + h * k3.a, y.b + h * k3.b}, on);
    y.a += h / 6.0 * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a);
    y.b += h / 6.0 * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b);
    const double tn = static_cast<double>(n + 1) * h;
    if (!std::isfinite(y.a.real()) || !std::isfinite(y.a.imag()) ||
        !std::isfinite(y.b.real()) || !std::isfinite(y.b.imag()))
      throw NumericalError("non-finite state at t = " + std::to_string(tn));
    tr.times.push_back(tn);
    tr.alpha_a.push_back(y.a);
    tr.alpha_b.push_back(y.b);
    const auto dl = rhs(tn, y, on);
    dla[n + 1] = dl.a;
    dlb[n + 1] = dl.b;
    const bool on_next = (T == 0.0) || (n + 1 >= n_delay);
    if (on_next == on) {
      dra[n + 1] = dl.a;
      drb[n + 1] = dl.b;
    } else {
      const auto dr = rhs(tn, y, on_next);
      dra[n + 1] = dr.a;
      drb[n + 1] = dr.b;
    }
  }

  tr.p_a.resize(tr.size());
  tr.p_b.resize(tr.size());
  tr.concurrence.resize(tr.size());
  for (size_t i = 0; i < tr.size(); ++i) {
    tr.p_a[i] = std::norm(tr.alpha_a[i]);
    tr.p_b[i] = std::norm(tr.alpha_b[i]);
    tr.concurrence[i] = concurrence_of(tr.alpha_a[i], tr.alpha_b[i]);
  }
  return tr;
}

/// Exact piecewise solution on the first three delay windows for a start with
/// alpha_b(0) = 0, obtained by iterated integrating factors:
///   [0, T):  a = a0 e^{-G t},                      b = 0
///   [T, 2T): a = a0 e^{-G t},                      b = -a0 G (t-T) e^{i th} e^{-G (t-T)}
///   [2T,3T): a = a0 e^{-G t}
///                + a0 (G (t-2T))^2/2 e^{2 i th} e^{-G (t-2T)},  b as above
struct AnalyticSegments {
  double gamma0, delay_t;
  cd phase;
  cd a0;

  std::pair<cd, cd> eval(double t) const {
    const double g = gamma0, T = delay_t;
    if (t < 0) throw UsageError("analytic segments defined for t >= 0");
    if (t >= 3 * T) throw UsageError("analytic segments cover [0, 3T) only");
    cd a = a0 * std::exp(-g * t);
    cd b = 0;
    if (t >= T) b = -a0 * g * (t - T) * phase * std::exp(-g * (t - T));
    if (t >= 2 * T) {
      const double x = g * (t - 2 * T);
      a += a0 * 0.5 * x * x * phase * phase * std::exp(-x);
    }
    return {a, b};
  }
};

inline AnalyticSegments analytic_segments(const DDEProblem& p, int n_seg = 3) {
  if (n_seg > 3) throw UsageError("analytic segments support at most 3 delay windows");
  if (std::abs(p.alpha_b0) != 0.0)
    throw UsageError("analytic segments require alpha_b(0) = 0");
  if (!(p.delay_t > 0)) throw UsageError("analytic segments require a positive delay");
  return {p.gamma0, p.delay_t, std::polar(1.0, p.theta_t), p.alpha_a0};
}

struct SteadyState {
  cd alpha_a_inf, alpha_b_inf;
  double c_inf = 0.0;
};

/// Residue of the zero-frequency pole of the symmetric mode. A trapped
/// excitation exists when theta = pi (mod 2 pi); otherwise both amplitudes
/// decay to zero.
inline SteadyState steady_state(const DDEProblem& p) {
  SteadyState s;
  const double mod = std::remainder(p.theta_t - constants::pi, constants::two_pi);
  if (std::abs(mod) > 1e-12) {
    s.alpha_a_inf = s.alpha_b_inf = cd(0, 0);
    s.c_inf = 0.0;
    return s;
  }
  const cd sym = 0.5 * (p.alpha_a0 + p.alpha_b0);
  const cd ainf = sym / (1.0 + p.gamma0 * p.delay_t);
  s.alpha_a_inf = s.alpha_b_inf = ainf;
  s.c_inf = concurrence_of(ainf, ainf);
  return s;
}

/// Reference parameter sets. w10/2pi = 4.72 GHz throughout; delays chosen so
/// that w10*T reduces to the labeled phase.
inline DDEProblem figure_preset(const std::string& name) {
  const double w10 = constants::two_pi * 4.72e9;
  DDEProblem p;
  p.alpha_a0 = cd(1, 0);
  p.alpha_b0 = cd(0, 0);

  auto phase_preset = [&](double theta, double t_max) {
    p.gamma0 = constants::two_pi * 1e6;
    const double mod_pi = std::fmod(theta, constants::pi);
    p.delay_t = 0.1e-6 + mod_pi / w10;
    p.theta_t = theta;
    p.t_max = t_max;
  };

  if (name == "fig7a" || name == "fig7b" || name == "fig7c") {
    p.gamma0 = constants::two_pi * 100e6;
    p.delay_t = name == "fig7a" ? 0.1e-6 : (name == "fig7b" ? 0.2e-6 : 0.3e-6);
    p.theta_t = theta_from_delay(w10, p.delay_t);  // integer cycle counts: 0
    p.t_max = 1.2e-6;
  } else if (name == "fig8a" || name == "fig8b" || name == "fig8c") {
    p.gamma0 = constants::two_pi * (name == "fig8a" ? 100e6 : (name == "fig8b" ? 10e6 : 1e6));
    p.delay_t = 0.1e-6;
    p.theta_t = theta_from_delay(w10, p.delay_t);
    p.t_max = name == "fig8c" ? 4e-6 : 2e-6;
  } else if (name == "fig9a" || name == "fig10a") {
    phase_preset(constants::pi / 2, name[3] == '1' ? 8e-6 : 4e-6);
  } else if (name == "fig9b" || name == "fig10b") {
    phase_preset(0.75 * constants::pi, name[3] == '1' ? 8e-6 : 4e-6);
  } else if (name == "fig9c" || name == "fig10c") {
    phase_preset(constants::pi, name[3] == '1' ? 8e-6 : 4e-6);
  } else {
    throw UsageError("unknown preset '" + name + "'");
  }
  p.dt = std::min(p.delay_t / 50.0, 0.01 / p.gamma0);
  return p;
}

}  // namespace pmsaw::dynamics
