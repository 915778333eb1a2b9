// End-to-end checks of the command-line tool: spawns the built binary and
// inspects stdout/exit codes.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(PMSAW_BIN) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  EXPECT_NE(p, nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == '\n') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

TEST(Cli, ModeReportsReferenceVelocity) {
  const auto r = run("mode --material terfenol-D --freq-ghz 3");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("\"v_m_s\": 1004.97"), std::string::npos);
  EXPECT_NE(r.out.find("\"q_alpha\": 0.4288"), std::string::npos);
}

TEST(Cli, DynamicsPresetEndsNearSteadyConcurrence) {
  const auto r = run("dynamics --preset fig10c");
  EXPECT_EQ(r.exit_code, 0);
  const auto rows = lines_of(r.out);
  ASSERT_GT(rows.size(), 10u);
  EXPECT_EQ(rows[0].rfind("# pmsaw", 0), 0u);
  EXPECT_EQ(rows[1], "t_us,p_a,p_b,concurrence,alpha_a_re,alpha_a_im,alpha_b_re,alpha_b_im");
  // concurrence is the fourth column of the last row
  const auto& last = rows.back();
  size_t pos = 0;
  for (int i = 0; i < 3; ++i) pos = last.find(',', pos) + 1;
  const double c = std::strtod(last.c_str() + pos, nullptr);
  EXPECT_NEAR(c, 0.19, 0.01);
}

TEST(Cli, UnknownSubcommandIsUsageError) {
  const auto r = run("frobnicate");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.out.find("\"type\":\"usage\""), std::string::npos);
}

TEST(Cli, MissingRequiredFlagIsUsageError) {
  EXPECT_EQ(run("mode").exit_code, 2);
  EXPECT_EQ(run("zeropoint --freq-ghz 3").exit_code, 2);
}

TEST(Cli, UnknownMaterialIsUsageError) {
  const auto r = run("mode --material unobtainium --freq-ghz 3");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.out.find("unobtainium"), std::string::npos);
}

TEST(Cli, MaterialsListAndShow) {
  const auto r = run("materials list");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("terfenol-D"), std::string::npos);
  const auto s = run("materials show terfenol-D");
  EXPECT_EQ(s.exit_code, 0);
  EXPECT_NE(s.out.find("\"c11_pa\": 55000000000.0"), std::string::npos);
}

TEST(Cli, MaterialFileAndEnvironmentRegistry) {
  const auto path =
      (std::filesystem::temp_directory_path() / "pmsaw_cli_mat.toml").string();
  {
    std::ofstream f(path);
    f << "[softer]\nrho_g_cm3 = 9.06\nc11_gpa = 55\nc12_gpa = 43\nc44_gpa = 12\n"
         "q31_n_am = -45\nq33_n_am = 90\nmu11_un_a2 = 6.283\n";
  }
  const auto r = run("materials list --material-file " + path);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("softer"), std::string::npos);

  setenv("PIEZOMAG_SAW_MATERIALS", path.c_str(), 1);
  const auto e = run("materials list");
  unsetenv("PIEZOMAG_SAW_MATERIALS");
  EXPECT_NE(e.out.find("softer"), std::string::npos);
  std::remove(path.c_str());
}

TEST(Cli, ZeropointMatchesReferenceAmplitude) {
  const auto r = run("zeropoint --freq-ghz 10 --width-um 1");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("\"u0k_m\": 8.71e-16"), std::string::npos);
  EXPECT_NE(r.out.find("normalization_convention"), std::string::npos);
}

TEST(Cli, ProfileShape) {
  const auto r = run("profile --freq-ghz 3 --zmax-wavelengths 2 --samples 21");
  EXPECT_EQ(r.exit_code, 0);
  const auto rows = lines_of(r.out);
  ASSERT_EQ(rows.size(), 23u);  // provenance + header + 21 samples
  EXPECT_EQ(rows[1], "z_over_lambda,u1_re,u1_im,u3_re,u3_im,psi_re,psi_im");
}

TEST(Cli, ZeropointMapGrid) {
  const auto r = run("zeropoint-map --freq-ghz-range 1:10:3 --width-um-range 1:100:3");
  EXPECT_EQ(r.exit_code, 0);
  const auto rows = lines_of(r.out);
  ASSERT_EQ(rows.size(), 11u);  // provenance + header + 9 grid points
  EXPECT_EQ(rows[1], "l_um,freq_ghz,b_xprime_zp_ut,b_z_zp_ut");
}

TEST(Cli, DeterministicOutput) {
  const auto a = run("mode --material terfenol-D --freq-ghz 7");
  const auto b = run("mode --material terfenol-D --freq-ghz 7");
  EXPECT_EQ(a.out, b.out);
  const auto c = run("dynamics --preset fig9b");
  const auto d = run("dynamics --preset fig9b");
  EXPECT_EQ(c.out, d.out);
}

TEST(Cli, AtomicOutputFile) {
  const auto path = (std::filesystem::temp_directory_path() / "pmsaw_out.json").string();
  const auto r = run("mode --material terfenol-D --freq-ghz 3 -o " + path);
  EXPECT_EQ(r.exit_code, 0);
  std::ifstream f(path);
  ASSERT_TRUE(f.good());
  std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  EXPECT_NE(content.find("\"v_m_s\""), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  std::remove(path.c_str());
}

TEST(Cli, HelpListsCsvColumns) {
  const struct {
    const char* sub;
    const char* columns;
  } cases[] = {
      {"profile", "z_over_lambda,u1_re,u1_im,u3_re,u3_im,psi_re,psi_im"},
      {"zeropoint-map", "l_um,freq_ghz,b_xprime_zp_ut,b_z_zp_ut"},
      {"sweep", "axis_value,g_abs_hz,qubit_freq_ghz"},
      {"dynamics", "t_us,p_a,p_b,concurrence,alpha_a_re,alpha_a_im,alpha_b_re,alpha_b_im"},
  };
  for (const auto& c : cases) {
    const auto r = run(std::string(c.sub) + " --help");
    std::string col;
    std::stringstream cols(c.columns);
    while (std::getline(cols, col, ','))
      EXPECT_NE(r.out.find(col), std::string::npos) << c.sub << " help misses " << col;
  }
}

TEST(Cli, VerifyFastReportsEveryCriterion) {
  const auto r = run("verify fast");
  for (int i = 1; i <= 13; ++i) {
    char id[8];
    std::snprintf(id, sizeof id, "C%02d ", i);
    EXPECT_NE(r.out.find(id), std::string::npos) << id;
  }
  const bool any_fail = r.out.find("[FAIL]") != std::string::npos;
  EXPECT_EQ(r.exit_code, any_fail ? 1 : 0);
}
