#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pmsaw/errors.hpp"

namespace pmsaw {

/// Constants of a cubic piezomagnetic medium, strict SI units.
struct MaterialParams {
  std::string name;
  double rho = 0.0;   ///< mass density, kg/m^3
  double c11 = 0.0;   ///< elastic stiffness, Pa
  double c12 = 0.0;   ///< elastic stiffness, Pa
  double c44 = 0.0;   ///< elastic stiffness, Pa
  double q31 = 0.0;   ///< piezomagnetic constant, N/(A m)
  double q33 = 0.0;   ///< piezomagnetic constant, N/(A m)
  double mu11 = 0.0;  ///< magnetic permeability, N/A^2

  /// Throws ValidationError naming the offending field.
  void validate() const {
    auto fail = [&](const std::string& what) {
      throw ValidationError("material '" + name + "': " + what);
    };
    if (!(rho > 0)) fail("rho must be positive");
    if (!(mu11 > 0)) fail("mu11 must be positive");
    if (!(c44 > 0)) fail("c44 must be positive");
    if (!(c11 - c12 > 0)) fail("elastic stability requires c11 - c12 > 0");
    if (!(c11 + 2.0 * c12 > 0)) fail("elastic stability requires c11 + 2*c12 > 0");
  }
};

/// Effective constants in the [110] propagation frame (45 deg rotation about z).
struct RotatedConstants {
  double rho = 0.0;
  double c11_prime = 0.0;  ///< effective longitudinal stiffness along [110], Pa
  double c11 = 0.0;
  double c12 = 0.0;
  double c44 = 0.0;
  double q31 = 0.0;
  double q33 = 0.0;
  double mu11 = 0.0;
};

/// The tabulated terfenol-D record, converted to SI.
inline MaterialParams builtin_terfenol_d() {
  MaterialParams m;
  m.name = "terfenol-D";
  m.rho = 9.06e3;
  m.c11 = 55e9;
  m.c12 = 43e9;
  m.c44 = 12e9;
  m.q31 = -45.0;
  m.q33 = 90.0;
  m.mu11 = 6.283e-6;
  return m;
}

/// 45-degree z-axis rotation of the cubic stiffness tensor. Only C11 picks up
/// a new value along [110]; the remaining constants entering the sagittal
/// problem are invariant under this rotation.
inline RotatedConstants rotate_to_110(const MaterialParams& m) {
  m.validate();
  RotatedConstants rc;
  rc.rho = m.rho;
  rc.c11_prime = (m.c11 + m.c12 + 2.0 * m.c44) / 2.0;
  rc.c11 = m.c11;
  rc.c12 = m.c12;
  rc.c44 = m.c44;
  rc.q31 = m.q31;
  rc.q33 = m.q33;
  rc.mu11 = m.mu11;
  return rc;
}

struct BulkVelocities {
  double v_shear = 0.0;  ///< sqrt(C44/rho), m/s
  double v_long = 0.0;   ///< sqrt(C11'/rho) in the [110] frame, m/s
};

inline BulkVelocities bulk_velocities(const MaterialParams& m) {
  const RotatedConstants rc = rotate_to_110(m);
  return {std::sqrt(rc.c44 / rc.rho), std::sqrt(rc.c11_prime / rc.rho)};
}

namespace detail {

struct FieldSpec {
  const char* key;
  double MaterialParams::*field;
  int exp10;  // SI value = file value * 10^exp10
};

inline const std::vector<FieldSpec>& field_specs() {
  static const std::vector<FieldSpec> specs = {
      {"rho_g_cm3", &MaterialParams::rho, 3},
      {"c11_gpa", &MaterialParams::c11, 9},
      {"c12_gpa", &MaterialParams::c12, 9},
      {"c44_gpa", &MaterialParams::c44, 9},
      {"q31_n_am", &MaterialParams::q31, 0},
      {"q33_n_am", &MaterialParams::q33, 0},
      {"mu11_un_a2", &MaterialParams::mu11, -6},
  };
  return specs;
}

/// Applies the decimal unit shift textually before the single binary
/// rounding, so every SI double is reachable from its file representation
/// (a float multiply by 10^k cannot hit all targets).
inline bool to_si(const FieldSpec& s, const std::string& text, double& out) {
  std::string t = text;
  const auto epos = t.find_first_of("eE");
  if (epos != std::string::npos) {
    char* end = nullptr;
    const long e = std::strtol(t.c_str() + epos + 1, &end, 10);
    if (end == t.c_str() + epos + 1 || *end != '\0') return false;
    t = t.substr(0, epos);
    t += "e" + std::to_string(e + s.exp10);
  } else {
    t += "e" + std::to_string(s.exp10);
  }
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end != t.c_str() && *end == '\0';
}

/// File-unit text whose load reproduces the SI double bit-exactly: the
/// shortest-round-trip decimal of the SI value with the unit power of ten
/// subtracted from its exponent.
inline std::string from_si_exact(const FieldSpec& s, double si) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17e", si);
  std::string t(buf);
  const auto epos = t.find_first_of("eE");
  const long e = std::strtol(t.c_str() + epos + 1, nullptr, 10);
  return t.substr(0, epos) + "e" + std::to_string(e - s.exp10);
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Parses a material file: one [name] table per material with the keys
/// rho_g_cm3, c11_gpa, c12_gpa, c44_gpa, q31_n_am, q33_n_am, mu11_un_a2.
/// Values use the tabulated units and are converted to SI on load.
inline std::vector<MaterialParams> load_materials(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open material file '" + path + "'", 0);

  std::vector<MaterialParams> out;
  std::vector<bool> seen;
  std::string line;
  int lineno = 0;

  auto finish_current = [&](int at_line) {
    if (out.empty()) return;
    for (size_t i = 0; i < detail::field_specs().size(); ++i) {
      if (!seen[i])
        throw ParseError("material '" + out.back().name + "' is missing key '" +
                             detail::field_specs()[i].key + "'",
                         at_line);
    }
    out.back().validate();
  };

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated table header", lineno);
      finish_current(lineno);
      MaterialParams m;
      m.name = detail::trim(line.substr(1, line.size() - 2));
      if (m.name.empty()) throw ParseError("empty material name", lineno);
      out.push_back(m);
      seen.assign(detail::field_specs().size(), false);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
    if (out.empty()) throw ParseError("key outside of a [material] table", lineno);
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));

    bool matched = false;
    for (size_t i = 0; i < detail::field_specs().size(); ++i) {
      const auto& spec = detail::field_specs()[i];
      if (key == spec.key) {
        double v = 0.0;
        if (!detail::to_si(spec, val, v))
          throw ParseError("cannot parse number '" + val + "' for key '" + key + "'", lineno);
        out.back().*spec.field = v;
        seen[i] = true;
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError("unknown key '" + key + "'", lineno);
  }
  finish_current(lineno);
  return out;
}

/// Writes materials in the file format; load(save(m)) reproduces every SI
/// field bit-exactly.
inline void save_materials(const std::string& path, const std::vector<MaterialParams>& mats) {
  std::ofstream outf(path);
  if (!outf) throw ParseError("cannot open '" + path + "' for writing", 0);
  for (const auto& m : mats) {
    outf << "[" << m.name << "]\n";
    for (const auto& spec : detail::field_specs())
      outf << spec.key << " = " << detail::from_si_exact(spec, m.*spec.field) << "\n";
    outf << "\n";
  }
}

/// Named material registry. The built-in terfenol-D record is always present;
/// records loaded later shadow earlier ones of the same name with a warning.
class MaterialDb {
public:
  using WarnFn = std::function<void(const std::string&)>;

  explicit MaterialDb(WarnFn warn = nullptr) : warn_(std::move(warn)) {
    add(builtin_terfenol_d(), /*warn_on_shadow=*/false);
  }

  void add(const MaterialParams& m, bool warn_on_shadow = true) {
    m.validate();
    auto it = index_.find(m.name);
    if (it != index_.end()) {
      if (warn_on_shadow && warn_)
        warn_("material '" + m.name + "' shadows an earlier definition");
      records_[it->second] = m;
      return;
    }
    index_[m.name] = records_.size();
    records_.push_back(m);
  }

  void add_file(const std::string& path) {
    for (const auto& m : load_materials(path)) add(m);
  }

  const MaterialParams& find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UsageError("unknown material '" + name + "'");
    return records_[it->second];
  }

  const std::vector<MaterialParams>& records() const { return records_; }

private:
  std::vector<MaterialParams> records_;
  std::map<std::string, size_t> index_;
  WarnFn warn_;
};

}  // namespace pmsaw
