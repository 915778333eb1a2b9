// Command-line front end: mode solving, field profiles, zero-point estimates,
// coupling strengths, delay dynamics, and the acceptance suite. Tabular
// results go out as CSV with a provenance comment line; scalar reports as
// JSON. Output files are written atomically (temp file + rename).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmsaw/acceptance.hpp"
#include "pmsaw/constants.hpp"
#include "pmsaw/coupling.hpp"
#include "pmsaw/dynamics.hpp"
#include "pmsaw/materials.hpp"
#include "pmsaw/quantize.hpp"
#include "pmsaw/rayleigh.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace pmsaw;

constexpr const char* kVersion = "pmsaw 1.0.0";

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Doubles rounded through 12 significant digits for deterministic output.
double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot open '" + tmp + "' for writing");
    f << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw UsageError("cannot move temporary file onto '" + path + "'");
}

struct CommonOpts {
  std::string material = "terfenol-D";
  std::vector<std::string> material_files;
  std::string output;
};

MaterialDb make_db(const CommonOpts& o) {
  MaterialDb db([](const std::string& w) { std::cerr << "warning: " << w << "\n"; });
  if (const char* env = std::getenv("PIEZOMAG_SAW_MATERIALS")) {
    std::stringstream ss(env);
    std::string path;
    while (std::getline(ss, path, ':'))
      if (!path.empty()) db.add_file(path);
  }
  for (const auto& f : o.material_files) db.add_file(f);
  return db;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_material = true) {
  if (with_material) {
    cmd->add_option("--material", o.material, "material name (default terfenol-D)");
    cmd->add_option("--material-file", o.material_files, "extra material file(s)");
  }
  cmd->add_option("-o,--output", o.output, "output path (default stdout)");
}

std::string provenance(const std::string& sub, const std::string& params) {
  return "# " + std::string(kVersion) + " " + sub + " " + params + "\n";
}

json mode_json(const rayleigh::RayleighMode& md, const std::string& material, double freq_ghz) {
  json j;
  j["material"] = material;
  j["freq_ghz"] = round12(freq_ghz);
  j["k_rad_m"] = round12(md.k);
  j["omega_rad_s"] = round12(md.omega);
  j["v_m_s"] = round12(md.v);
  j["q_alpha"] = round12(md.q_alpha);
  j["q_beta"] = round12(md.q_beta);
  j["theta_rad"] = round12(md.theta);
  j["gamma_abs"] = round12(md.gamma_abs);
  j["xi_rad"] = round12(md.xi);
  j["a_coef"] = round12(md.a_coef);
  j["tau_rad"] = round12(md.tau);
  j["a3_coef"] = round12(md.a3_coef);
  j["complex_pair"] = md.canonical;
  j["velocity_roots_found"] = md.root_count;
  return j;
}

rayleigh::RayleighMode solve_for(const MaterialDb& db, const std::string& material,
                                 double freq_ghz) {
  const auto& m = db.find(material);
  // The dimensionless mode is k-invariant; a provisional wavenumber from the
  // shear velocity seeds the solve, then k is fixed against the solved v.
  const double vs = bulk_velocities(m).v_shear;
  auto md = rayleigh::solve_mode(m, constants::two_pi * freq_ghz * 1e9 / vs);
  md.k = constants::two_pi * freq_ghz * 1e9 / md.v;
  md.omega = md.k * md.v;
  return md;
}

int cmd_mode(const CommonOpts& o, double freq_ghz) {
  const auto db = make_db(o);
  const auto md = solve_for(db, o.material, freq_ghz);
  write_output(o.output, mode_json(md, o.material, freq_ghz).dump(2) + "\n");
  return 0;
}

int cmd_profile(const CommonOpts& o, double freq_ghz, double zmax_wavelengths, int samples) {
  const auto db = make_db(o);
  const auto& m = db.find(o.material);
  const auto md = solve_for(db, o.material, freq_ghz);
  const double lam = constants::two_pi / md.k;
  std::ostringstream os;
  os << provenance("profile", "material=" + o.material + " freq_ghz=" + fmt12(freq_ghz) +
                                  " zmax_wavelengths=" + fmt12(zmax_wavelengths) +
                                  " samples=" + std::to_string(samples) + " u0=1");
  os << "z_over_lambda,u1_re,u1_im,u3_re,u3_im,psi_re,psi_im\n";
  for (int i = 0; i < samples; ++i) {
    const double zl = zmax_wavelengths * i / (samples - 1);
    const auto f = rayleigh::evaluate_fields(md, m, 1.0, 0.0, zl * lam, 0.0);
    os << fmt12(zl) << "," << fmt12(f.u1_prime.real()) << "," << fmt12(f.u1_prime.imag()) << ","
       << fmt12(f.u3.real()) << "," << fmt12(f.u3.imag()) << "," << fmt12(f.psi.real()) << ","
       << fmt12(f.psi.imag()) << "\n";
  }
  write_output(o.output, os.str());
  return 0;
}

int cmd_zeropoint(const CommonOpts& o, double freq_ghz, double width_um) {
  const auto db = make_db(o);
  const auto& m = db.find(o.material);
  const auto md = solve_for(db, o.material, freq_ghz);
  const auto qm = quantize::normalize_single_phonon(md, m, width_um * 1e-6);
  json j;
  j["material"] = o.material;
  j["freq_ghz"] = round12(freq_ghz);
  j["width_um"] = round12(width_um);
  j["u0k_m"] = round12(qm.u0k);
  j["b_xprime_zp_t"] = round12(qm.b_xprime_zp);
  j["b_z_zp_t"] = round12(qm.b_z_zp);
  j["u_zp_m"] = round12(qm.u_zp);
  j["energy_per_phonon_j"] = round12(qm.energy_per_phonon);
  j["normalization_convention"] = quantize::norm_convention_text;
  write_output(o.output, j.dump(2) + "\n");
  return 0;
}

struct Range {
  double lo = 0, hi = 0;
  int n = 0;
};

Range parse_range(const std::string& s) {
  Range r;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d", &r.lo, &r.hi, &r.n) != 3 || r.n < 2)
    throw UsageError("range must be lo:hi:n with n >= 2, got '" + s + "'");
  return r;
}

int cmd_zeropoint_map(const CommonOpts& o, const std::string& freq_range,
                      const std::string& width_range) {
  const auto db = make_db(o);
  const auto& m = db.find(o.material);
  const Range fr = parse_range(freq_range);
  const Range wr = parse_range(width_range);
  auto md = solve_for(db, o.material, fr.lo);
  std::ostringstream os;
  os << provenance("zeropoint-map", "material=" + o.material + " freq_ghz_range=" + freq_range +
                                        " width_um_range=" + width_range);
  os << "l_um,freq_ghz,b_xprime_zp_ut,b_z_zp_ut\n";
  for (int i = 0; i < wr.n; ++i) {
    const double l_um = wr.lo + (wr.hi - wr.lo) * i / (wr.n - 1);
    for (int j = 0; j < fr.n; ++j) {
      const double f_ghz = fr.lo + (fr.hi - fr.lo) * j / (fr.n - 1);
      md.k = constants::two_pi * f_ghz * 1e9 / md.v;
      md.omega = md.k * md.v;
      const auto qm = quantize::normalize_single_phonon(md, m, l_um * 1e-6);
      os << fmt12(l_um) << "," << fmt12(f_ghz) << "," << fmt12(qm.b_xprime_zp * 1e6) << ","
         << fmt12(qm.b_z_zp * 1e6) << "\n";
    }
  }
  write_output(o.output, os.str());
  return 0;
}

struct SystemOpts {
  std::string system;
  std::string preset;
  double width_um = 1.0;
  double freq_ghz = 3.0;
  // fluxonium / transmon
  double e_c_ghz = 1.0, e_j_ghz = 3.0, e_l_ghz = 1.0;
  double loop_area_um2 = 100.0;
  // magnon / defect
  double gamma_ghz_per_t = 28.0;
  double spin_s = 0.5;
  double n_spins = 1.0;
  double distance_um = 0.1;
};

coupling::QubitSpec spec_of(const SystemOpts& s) {
  if (s.system == "fluxonium")
    return coupling::Fluxonium{s.e_c_ghz * 1e9, s.e_j_ghz * 1e9, s.e_l_ghz * 1e9,
                               s.loop_area_um2 * 1e-12};
  if (s.system == "transmon")
    return coupling::Transmon{s.e_c_ghz * 1e9, s.e_j_ghz * 1e9, s.loop_area_um2 * 1e-12};
  if (s.system == "magnon")
    return coupling::MagnonFilm{s.gamma_ghz_per_t * 1e9, s.spin_s, s.n_spins,
                                s.distance_um * 1e-6};
  if (s.system == "nv")
    return coupling::DefectCenter{s.gamma_ghz_per_t * 1e9, s.distance_um * 1e-6};
  throw UsageError("unknown system '" + s.system + "' (fluxonium|transmon|magnon|nv)");
}

void apply_preset(SystemOpts& s) {
  if (s.preset.empty()) return;
  const auto pre = coupling::couple_preset(s.preset);
  s.freq_ghz = pre.freq_hz / 1e9;
  s.width_um = pre.width_l * 1e6;
  std::visit(
      [&](const auto& q) {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, coupling::Fluxonium>) {
          s.system = "fluxonium";
          s.e_c_ghz = q.e_c / 1e9;
          s.e_j_ghz = q.e_j / 1e9;
          s.e_l_ghz = q.e_l / 1e9;
          s.loop_area_um2 = q.loop_area_s * 1e12;
        } else if constexpr (std::is_same_v<T, coupling::Transmon>) {
          s.system = "transmon";
          s.e_c_ghz = q.e_c / 1e9;
          s.e_j_ghz = q.e_j / 1e9;
          s.loop_area_um2 = q.loop_area_s * 1e12;
        } else if constexpr (std::is_same_v<T, coupling::MagnonFilm>) {
          s.system = "magnon";
          s.gamma_ghz_per_t = q.gamma_f / 1e9;
          s.spin_s = q.spin_s;
          s.n_spins = q.n_spins;
          s.distance_um = q.distance_d * 1e6;
        } else {
          s.system = "nv";
          s.gamma_ghz_per_t = q.gamma_c / 1e9;
          s.distance_um = q.distance_d * 1e6;
        }
      },
      pre.spec);
}

int cmd_couple(const CommonOpts& o, SystemOpts s) {
  apply_preset(s);
  const auto db = make_db(o);
  const auto& m = db.find(o.material);
  const auto md = solve_for(db, o.material, s.freq_ghz);
  const auto qm = quantize::normalize_single_phonon(md, m, s.width_um * 1e-6);
  const auto spec = spec_of(s);
  const auto r = coupling::couple(qm, spec);
  json j;
  j["system"] = s.system;
  j["material"] = o.material;
  j["freq_ghz"] = round12(s.freq_ghz);
  j["width_um"] = round12(s.width_um);
  j["g_re_rad_s"] = round12(r.g.real());
  j["g_im_rad_s"] = round12(r.g.imag());
  j["g_abs_hz"] = round12(std::abs(r.g) / constants::two_pi);
  j["qubit_freq_ghz"] = round12(r.qubit_freq / constants::two_pi / 1e9);
  j["order"] = r.order == coupling::CouplingOrder::quadratic ? "quadratic" : "linear";
  j["detuning_rad_s"] = round12(r.detuning);
  if (s.system == "magnon") {
    const auto& mf = std::get<coupling::MagnonFilm>(spec);
    j["n_spins"] = round12(mf.n_spins);
    j["ns_calibrated_for_1673hz"] = round12(coupling::magnon_ns_for_target(qm, mf, 1673.0));
  }
  write_output(o.output, j.dump(2) + "\n");
  return 0;
}

int cmd_sweep(const CommonOpts& o, SystemOpts s, const std::string& axis,
              const std::string& range) {
  apply_preset(s);
  const auto db = make_db(o);
  const auto& m = db.find(o.material);
  const auto md = solve_for(db, o.material, s.freq_ghz);
  const auto ax = coupling::sweep_axis_from_name(axis);
  const Range rg = parse_range(range);
  // Axis values arrive in the CLI units (um^2 for areas, um for lengths).
  double unit = 1.0;
  switch (ax) {
    case coupling::SweepAxis::loop_area_s: unit = 1e-12; break;
    case coupling::SweepAxis::distance_d:
    case coupling::SweepAxis::lateral_width_l: unit = 1e-6; break;
  }
  const auto rows = coupling::sweep_coupling(md, m, s.width_um * 1e-6, spec_of(s), ax,
                                             rg.lo * unit, rg.hi * unit, rg.n);
  std::ostringstream os;
  os << provenance("sweep", "system=" + s.system + " material=" + o.material +
                                " axis=" + axis + " range=" + range +
                                " freq_ghz=" + fmt12(s.freq_ghz));
  os << "axis_value,g_abs_hz,qubit_freq_ghz\n";
  for (const auto& p : rows)
    os << fmt12(p.axis_value / unit) << "," << fmt12(p.g_abs_hz) << ","
       << fmt12(p.qubit_freq_hz / 1e9) << "\n";
  write_output(o.output, os.str());
  return 0;
}

int cmd_dynamics(const CommonOpts& o, const std::string& preset, double gamma0_mhz,
                 double delay_us, double theta_pi, double tmax_us, double dt_ns) {
  dynamics::DDEProblem p;
  if (!preset.empty()) {
    p = dynamics::figure_preset(preset);
  } else {
    p.gamma0 = constants::two_pi * gamma0_mhz * 1e6;
    p.delay_t = delay_us * 1e-6;
    p.theta_t = theta_pi * constants::pi;
    p.t_max = tmax_us > 0 ? tmax_us * 1e-6 : 20.0 / p.gamma0;
    p.dt = p.delay_t > 0 ? std::min(p.delay_t / 50.0, 0.01 / p.gamma0) : 0.01 / p.gamma0;
  }
  if (tmax_us > 0) p.t_max = tmax_us * 1e-6;
  if (dt_ns > 0) p.dt = dt_ns * 1e-9;
  const auto tr = dynamics::integrate(p);
  std::ostringstream os;
  os << provenance("dynamics",
                   (preset.empty() ? "custom" : "preset=" + preset) +
                       " gamma0_rad_s=" + fmt12(p.gamma0) + " delay_us=" + fmt12(p.delay_t * 1e6) +
                       " theta_rad=" + fmt12(p.theta_t) + " dt_ns=" + fmt12(p.dt * 1e9));
  os << "t_us,p_a,p_b,concurrence,alpha_a_re,alpha_a_im,alpha_b_re,alpha_b_im\n";
  for (size_t i = 0; i < tr.size(); ++i)
    os << fmt12(tr.times[i] * 1e6) << "," << fmt12(tr.p_a[i]) << "," << fmt12(tr.p_b[i]) << ","
       << fmt12(tr.concurrence[i]) << "," << fmt12(tr.alpha_a[i].real()) << ","
       << fmt12(tr.alpha_a[i].imag()) << "," << fmt12(tr.alpha_b[i].real()) << ","
       << fmt12(tr.alpha_b[i].imag()) << "\n";
  write_output(o.output, os.str());
  return 0;
}

int cmd_materials(const CommonOpts& o, const std::string& action, const std::string& name) {
  const auto db = make_db(o);
  if (action == "list") {
    std::ostringstream os;
    for (const auto& m : db.records()) os << m.name << "\n";
    write_output(o.output, os.str());
    return 0;
  }
  if (action == "show") {
    const auto& m = db.find(name);
    json j;
    j["name"] = m.name;
    j["rho_kg_m3"] = round12(m.rho);
    j["c11_pa"] = round12(m.c11);
    j["c12_pa"] = round12(m.c12);
    j["c44_pa"] = round12(m.c44);
    j["q31_n_am"] = round12(m.q31);
    j["q33_n_am"] = round12(m.q33);
    j["mu11_n_a2"] = round12(m.mu11);
    write_output(o.output, j.dump(2) + "\n");
    return 0;
  }
  throw UsageError("materials action must be list or show");
}

int cmd_verify(const CommonOpts& o, const std::string& level) {
  if (level != "fast" && level != "full") throw UsageError("verify level must be fast or full");
  const auto results = acceptance::run_acceptance(level == "full");
  std::string report = acceptance::report_of(results);
  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;
  report += failed == 0 ? "all criteria passed\n"
                        : std::to_string(failed) + " criteria failed\n";
  write_output(o.output, report);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surface-wave quantization toolkit for piezomagnetic strip waveguides"};
  app.require_subcommand(1);

  CommonOpts o_mode, o_profile, o_zp, o_zpm, o_couple, o_sweep, o_dyn, o_mat, o_verify;
  double freq_ghz = 3.0, profile_freq = 3.0, zp_freq = 3.0, zp_width = 1.0;
  double zmax_wl = 2.0;
  int samples = 201;
  std::string freq_range = "1:10:10", width_range = "1:100:10";
  SystemOpts sys_couple, sys_sweep;
  std::string sweep_axis_name = "loop_area_s", sweep_range = "100:1000:10";
  std::string dyn_preset;
  double g0_mhz = 1.0, delay_us = 0.1, theta_pi = 1.0, tmax_us = 0.0, dt_ns = 0.0;
  std::string mat_action = "list", mat_name;
  std::string verify_level = "fast";

  auto* mode = app.add_subcommand("mode", "solve the surface mode, print JSON parameters");
  add_common(mode, o_mode);
  mode->add_option("--freq-ghz", freq_ghz, "frequency in GHz")->required();

  auto* profile = app.add_subcommand(
      "profile",
      "depth profile CSV of displacement and potential (columns: z_over_lambda, u1_re, "
      "u1_im, u3_re, u3_im, psi_re, psi_im)");
  add_common(profile, o_profile);
  profile->add_option("--freq-ghz", profile_freq, "frequency in GHz");
  profile->add_option("--zmax-wavelengths", zmax_wl, "depth extent in wavelengths");
  profile->add_option("--samples", samples, "number of rows")->check(CLI::Range(2, 1000000));

  auto* zp = app.add_subcommand("zeropoint", "single-phonon normalization and zero-point fields");
  add_common(zp, o_zp);
  zp->add_option("--freq-ghz", zp_freq, "frequency in GHz")->required();
  zp->add_option("--width-um", zp_width, "lateral width in um")->required();

  auto* zpm = app.add_subcommand(
      "zeropoint-map",
      "zero-point field CSV over a (width, freq) grid (columns: l_um, freq_ghz, "
      "b_xprime_zp_ut, b_z_zp_ut)");
  add_common(zpm, o_zpm);
  zpm->add_option("--freq-ghz-range", freq_range, "lo:hi:n in GHz");
  zpm->add_option("--width-um-range", width_range, "lo:hi:n in um");

  auto* couple = app.add_subcommand("couple", "coupling of one magnetic system to the mode");
  add_common(couple, o_couple);
  couple->add_option("--system", sys_couple.system, "fluxonium|transmon|magnon|nv");
  couple->add_option("--preset", sys_couple.preset, "fig5a|fig5b|fig5c|fig5d");
  couple->add_option("--width-um", sys_couple.width_um, "lateral width in um");
  couple->add_option("--freq-ghz", sys_couple.freq_ghz, "mode frequency in GHz");
  couple->add_option("--e-c-ghz", sys_couple.e_c_ghz, "capacitive energy /2pi, GHz");
  couple->add_option("--e-j-ghz", sys_couple.e_j_ghz, "Josephson energy /2pi, GHz");
  couple->add_option("--e-l-ghz", sys_couple.e_l_ghz, "inductive energy /2pi, GHz");
  couple->add_option("--loop-area-um2", sys_couple.loop_area_um2, "loop area, um^2");
  couple->add_option("--gamma-ghz-per-t", sys_couple.gamma_ghz_per_t, "gyromagnetic ratio, GHz/T");
  couple->add_option("--spin-s", sys_couple.spin_s, "spin quantum number");
  couple->add_option("--n-spins", sys_couple.n_spins, "collective spin count");
  couple->add_option("--distance-um", sys_couple.distance_um, "film distance, um");

  auto* sweep = app.add_subcommand(
      "sweep",
      "coupling strength along one parameter axis, CSV (columns: axis_value, g_abs_hz, "
      "qubit_freq_ghz)");
  add_common(sweep, o_sweep);
  sweep->add_option("--system", sys_sweep.system, "fluxonium|transmon|magnon|nv");
  sweep->add_option("--preset", sys_sweep.preset, "fig5a|fig5b|fig5c|fig5d");
  sweep->add_option("--axis", sweep_axis_name, "loop_area_s|distance_d|lateral_width_l");
  sweep->add_option("--range", sweep_range, "lo:hi:n (um^2 for areas, um for lengths)");
  sweep->add_option("--width-um", sys_sweep.width_um, "lateral width in um");
  sweep->add_option("--freq-ghz", sys_sweep.freq_ghz, "mode frequency in GHz");
  sweep->add_option("--e-c-ghz", sys_sweep.e_c_ghz, "capacitive energy /2pi, GHz");
  sweep->add_option("--e-j-ghz", sys_sweep.e_j_ghz, "Josephson energy /2pi, GHz");
  sweep->add_option("--e-l-ghz", sys_sweep.e_l_ghz, "inductive energy /2pi, GHz");
  sweep->add_option("--loop-area-um2", sys_sweep.loop_area_um2, "loop area, um^2");
  sweep->add_option("--gamma-ghz-per-t", sys_sweep.gamma_ghz_per_t, "gyromagnetic ratio, GHz/T");
  sweep->add_option("--spin-s", sys_sweep.spin_s, "spin quantum number");
  sweep->add_option("--n-spins", sys_sweep.n_spins, "collective spin count");
  sweep->add_option("--distance-um", sys_sweep.distance_um, "film distance, um");

  auto* dyn = app.add_subcommand(
      "dynamics",
      "two-qubit delay dynamics trace, CSV (columns: t_us, p_a, p_b, concurrence, "
      "alpha_a_re, alpha_a_im, alpha_b_re, alpha_b_im)");
  add_common(dyn, o_dyn, /*with_material=*/false);
  dyn->add_option("--preset", dyn_preset, "fig7a..fig10c");
  dyn->add_option("--gamma0-mhz", g0_mhz, "decay rate /2pi, MHz");
  dyn->add_option("--delay-us", delay_us, "propagation delay, us");
  dyn->add_option("--theta-pi", theta_pi, "propagation phase in units of pi");
  dyn->add_option("--tmax-us", tmax_us, "trace length, us");
  dyn->add_option("--dt-ns", dt_ns, "step, ns");

  auto* mats = app.add_subcommand("materials", "list or show material records");
  add_common(mats, o_mat);
  mats->add_option("action", mat_action, "list|show")->required();
  mats->add_option("name", mat_name, "material name (for show)");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  add_common(verify, o_verify, /*with_material=*/false);
  verify->add_option("level", verify_level, "fast|full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << nlohmann::json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump()
              << "\n";
    std::cerr << app.help() << "\n";
    return 2;
  }

  try {
    if (mode->parsed()) return cmd_mode(o_mode, freq_ghz);
    if (profile->parsed()) return cmd_profile(o_profile, profile_freq, zmax_wl, samples);
    if (zp->parsed()) return cmd_zeropoint(o_zp, zp_freq, zp_width);
    if (zpm->parsed()) return cmd_zeropoint_map(o_zpm, freq_range, width_range);
    if (couple->parsed()) return cmd_couple(o_couple, sys_couple);
    if (sweep->parsed()) return cmd_sweep(o_sweep, sys_sweep, sweep_axis_name, sweep_range);
    if (dyn->parsed())
      return cmd_dynamics(o_dyn, dyn_preset, g0_mhz, delay_us, theta_pi, tmax_us, dt_ns);
    if (mats->parsed()) return cmd_materials(o_mat, mat_action, mat_name);
    if (verify->parsed()) return cmd_verify(o_verify, verify_level);
  } catch (const UsageError& e) {
    std::cerr << nlohmann::json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << nlohmann::json{{"error", {{"type", "parse"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << nlohmann::json{{"error", {{"type", "validation"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", {{"type", "numerical"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 1;
  }
  return 2;
}
