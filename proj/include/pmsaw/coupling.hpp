#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "pmsaw/constants.hpp"
#include "pmsaw/errors.hpp"
#include "pmsaw/quantize.hpp"

namespace pmsaw::coupling {

using cd = std::complex<double>;
using quantize::QuantizedMode;

/// Qubit parameter sets. All energies are ordinary frequencies in Hz
/// (converted to angular units internally); gyromagnetic ratios in Hz/T.
struct Fluxonium {
  double e_c = 0.0, e_j = 0.0, e_l = 0.0;  ///< Hz
  double loop_area_s = 0.0;                ///< m^2
};
struct Transmon {
  double e_c = 0.0, e_j = 0.0;  ///< Hz
  double loop_area_s = 0.0;     ///< m^2
};
struct MagnonFilm {
  double gamma_f = 0.0;    ///< Hz/T
  double spin_s = 0.5;     ///< spin quantum number
  double n_spins = 1.0;    ///< number of spins participating collectively
  double distance_d = 0.0; ///< film-to-surface distance, m
};
struct DefectCenter {
  double gamma_c = 0.0;    ///< Hz/T
  double distance_d = 0.0; ///< m
};

using QubitSpec = std::variant<Fluxonium, Transmon, MagnonFilm, DefectCenter>;

enum class CouplingOrder { linear, quadratic };

struct CouplingResult {
  cd g;                    ///< coupling rate, rad/s
  double qubit_freq = 0.0; ///< transition angular frequency w10, rad/s
  CouplingOrder order = CouplingOrder::linear;
  double detuning = 0.0;   ///< w10 - omega_saw, rad/s
};

namespace detail {

inline void check_positive(double v, const char* what) {
  if (!(v > 0)) throw ValidationError(std::string(what) + " must be positive");
}

}  // namespace detail

/// Flux qubit with a large shunt inductor; linear coupling of the loop flux
/// to the z induction. The transition frequency carries the first-order
/// anharmonic shift -E_C of the quartic term.
inline CouplingResult fluxonium_coupling(const QuantizedMode& qm, const Fluxonium& f) {
  detail::check_positive(f.e_c, "e_c");
  detail::check_positive(f.e_j, "e_j");
  detail::check_positive(f.e_l, "e_l");
  const double ec = constants::two_pi * f.e_c;
  const double ej = constants::two_pi * f.e_j;
  const double el = constants::two_pi * f.e_l;
  CouplingResult r;
  r.qubit_freq = 2.0 * std::sqrt(2.0 * ec * ej) + el * std::sqrt(2.0 * ec / ej) - ec;
  r.g = -constants::two_pi * std::pow(2.0 * ec / ej, 0.25) * el * qm.b_z_zp * f.loop_area_s /
        constants::phi0;
  r.order = CouplingOrder::linear;
  r.detuning = r.qubit_freq - qm.mode.omega;
  return r;
}

/// Split-junction transmon; the loop flux enters through the junction
/// asymmetry quadratically.
inline CouplingResult transmon_coupling(const QuantizedMode& qm, const Transmon& t) {
  detail::check_positive(t.e_c, "e_c");
  detail::check_positive(t.e_j, "e_j");
  const double ec = constants::two_pi * t.e_c;
  const double ej = constants::two_pi * t.e_j;
  CouplingResult r;
  r.qubit_freq = 4.0 * std::sqrt(ec * ej) - ec;
  const double x = constants::pi * qm.b_z_zp * t.loop_area_s / constants::phi0;
  r.g = -std::sqrt(ec * ej) * x * x / 2.0;
  r.order = CouplingOrder::quadratic;
  r.detuning = r.qubit_freq - qm.mode.omega;
  return r;
}

/// Ferromagnetic film suspended a distance d above the surface; the x'
/// induction couples to the collective spin with the evanescent factor
/// e^{-kd}.
inline CouplingResult magnon_coupling(const QuantizedMode& qm, const MagnonFilm& mf) {
  detail::check_positive(mf.gamma_f, "gamma_f");
  detail::check_positive(mf.spin_s, "spin_s");
  detail::check_positive(mf.n_spins, "n_spins");
  if (mf.distance_d < 0) throw ValidationError("distance_d must be non-negative");
  const double gam = constants::two_pi * mf.gamma_f;
  CouplingResult r;
  r.g = cd(1, -1) * std::sqrt(mf.n_spins * mf.spin_s) * gam * qm.b_xprime_zp *
        std::exp(-qm.mode.k * mf.distance_d) / 2.0;
  r.qubit_freq = qm.mode.omega;  // operated at resonance with the mode
  r.order = CouplingOrder::linear;
  r.detuning = 0.0;
  return r;
}

/// Spin defect in a suspended diamond film.
inline CouplingResult defect_coupling(const QuantizedMode& qm, const DefectCenter& dc) {
  detail::check_positive(dc.gamma_c, "gamma_c");
  if (dc.distance_d < 0) throw ValidationError("distance_d must be non-negative");
  const double gam = constants::two_pi * dc.gamma_c;
  CouplingResult r;
  r.g = cd(1, -1) * gam * qm.b_xprime_zp * std::exp(-qm.mode.k * dc.distance_d) /
        (2.0 * std::sqrt(2.0));
  r.qubit_freq = qm.mode.omega;
  r.order = CouplingOrder::linear;
  r.detuning = 0.0;
  return r;
}

inline CouplingResult couple(const QuantizedMode& qm, const QubitSpec& spec) {
  return std::visit(
      [&](const auto& s) -> CouplingResult {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Fluxonium>) return fluxonium_coupling(qm, s);
        if constexpr (std::is_same_v<T, Transmon>) return transmon_coupling(qm, s);
        if constexpr (std::is_same_v<T, MagnonFilm>) return magnon_coupling(qm, s);
        if constexpr (std::is_same_v<T, DefectCenter>) return defect_coupling(qm, s);
      },
      spec);
}

/// Collective spin number N*s that would reproduce a target magnon coupling
/// magnitude under this mode's zero-point field.
inline double magnon_ns_for_target(const QuantizedMode& qm, const MagnonFilm& mf,
                                   double target_hz) {
  const double gam = constants::two_pi * mf.gamma_f;
  const double per_spin =
      gam * std::abs(qm.b_xprime_zp) * std::exp(-qm.mode.k * mf.distance_d) / std::sqrt(2.0);
  if (per_spin == 0.0) throw NumericalError("zero coupling per spin; cannot calibrate");
  const double g_target = constants::two_pi * target_hz;
  return (g_target / per_spin) * (g_target / per_spin);
}

enum class SweepAxis { loop_area_s, distance_d, lateral_width_l };

inline SweepAxis sweep_axis_from_name(const std::string& name) {
  if (name == "loop_area_s") return SweepAxis::loop_area_s;
  if (name == "distance_d") return SweepAxis::distance_d;
  if (name == "lateral_width_l") return SweepAxis::lateral_width_l;
  throw UsageError("unknown sweep axis '" + name + "'");
}

struct SweepPoint {
  double axis_value = 0.0;
  double g_abs_hz = 0.0;       ///< |g|/2pi
  double qubit_freq_hz = 0.0;  ///< w10/2pi
};

/// Sweeps one parameter, recomputing the quantized mode whenever the lateral
/// width varies. The range is sampled linearly, endpoints included.
inline std::vector<SweepPoint> sweep_coupling(const rayleigh::RayleighMode& mode,
                                              const MaterialParams& m, double lateral_width_l,
                                              QubitSpec spec, SweepAxis axis, double lo, double hi,
                                              int n) {
  if (n < 2) throw UsageError("sweep needs at least 2 points");
  std::vector<SweepPoint> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    double width = lateral_width_l;
    QubitSpec s = spec;
    switch (axis) {
      case SweepAxis::lateral_width_l:
        width = x;
        break;
      case SweepAxis::loop_area_s:
        std::visit(
            [&](auto& q) {
              using T = std::decay_t<decltype(q)>;
              if constexpr (std::is_same_v<T, Fluxonium> || std::is_same_v<T, Transmon>)
                q.loop_area_s = x;
              else
                throw UsageError("loop_area_s sweep needs a superconducting qubit");
            },
            s);
        break;
      case SweepAxis::distance_d:
        std::visit(
            [&](auto& q) {
              using T = std::decay_t<decltype(q)>;
              if constexpr (std::is_same_v<T, MagnonFilm> || std::is_same_v<T, DefectCenter>)
                q.distance_d = x;
              else
                throw UsageError("distance_d sweep needs a film-coupled system");
            },
            s);
        break;
    }
    const QuantizedMode qm = quantize::normalize_single_phonon(mode, m, width);
    const CouplingResult r = couple(qm, s);
    out.push_back({x, std::abs(r.g) / constants::two_pi, r.qubit_freq / constants::two_pi});
  }
  return out;
}

/// Reference operating points of the four coupling examples.
struct CouplePreset {
  std::string name;
  QubitSpec spec;
  double freq_hz = 0.0;  ///< SAW frequency (resonant with the system), Hz
  double width_l = 1e-6; ///< lateral width, m
};

inline CouplePreset couple_preset(const std::string& name) {
  if (name == "fig5a")
    return {name, Fluxonium{1e9, 3e9, 1e9, 100e-12}, 4.72e9, 1e-6};
  if (name == "fig5b")
    return {name, Transmon{100e6, 10e9, 100e-12}, 3.9e9, 1e-6};
  if (name == "fig5c")
    return {name, MagnonFilm{30.59e9, 0.5, 1.0, 0.1e-6}, 3e9, 1e-6};
  if (name == "fig5d")
    return {name, DefectCenter{28e9, 0.1e-6}, 2.87e9, 1e-6};
  throw UsageError("unknown preset '" + name + "'");
}

}  // namespace pmsaw::coupling
