#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wfc/cli.hpp"
#include "wfc/fullfield.hpp"
#include "wfc/loading.hpp"
#include "wfc/materials.hpp"
#include "wfc/perturb.hpp"
#include "wfc/sif.hpp"

using namespace wfc;

namespace {

constexpr double kPi = 3.14159265358979323846;

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"wfcrack"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

// "name = value" report lines
std::map<std::string, double> kv_of(const std::string& text) {
  std::map<std::string, double> out;
  for (const auto& line : lines_of(text)) {
    const auto pos = line.find(" = ");
    if (pos == std::string::npos) continue;
    out[line.substr(0, pos)] = std::stod(line.substr(pos + 3));
  }
  return out;
}

std::vector<double> csv_row(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

const char* kMixedLoadsJson = R"({
  "materials": {"mu_plus": 1.0, "nu_plus": 0.2, "mu_minus": 3.0, "nu_minus": 0.3},
  "loads": [
    {"face": "upper", "kind": "point", "position": -1.0, "components": [0.0, -1.0, 0.0]},
    {"face": "lower", "kind": "point", "position": -0.4, "components": [0.0, -0.5, 0.0]},
    {"face": "lower", "kind": "point", "position": -1.6, "components": [0.0, -0.5, 0.0]},
    {"face": "upper", "kind": "point", "position": -0.7, "components": [0.4, 0.0, 0.0]},
    {"face": "upper", "kind": "point", "position": -1.3, "components": [-0.4, 0.0, 0.0]}
  ]
})";

LoadCase mixed_case() {
  LoadCase lc;
  lc.tractions.push_back({Face::Upper, PointLoad{-1.0, {0.0, -1.0, 0.0}}});
  lc.tractions.push_back({Face::Lower, PointLoad{-0.4, {0.0, -0.5, 0.0}}});
  lc.tractions.push_back({Face::Lower, PointLoad{-1.6, {0.0, -0.5, 0.0}}});
  lc.tractions.push_back({Face::Upper, PointLoad{-0.7, {0.4, 0.0, 0.0}}});
  lc.tractions.push_back({Face::Upper, PointLoad{-1.3, {-0.4, 0.0, 0.0}}});
  return lc;
}

}  // namespace

TEST_CASE("parameter report prints zero residuals for identical materials") {
  write_text("cli_params.json",
             R"({"materials": {"mu_plus": 2.0, "nu_plus": 0.3,
                                "mu_minus": 2.0, "nu_minus": 0.3}})");
  CHECK(run({"params", "--config", "cli_params.json", "--out",
             "cli_params.txt"}) == 0);
  const auto kv = kv_of(slurp("cli_params.txt"));
  CHECK(kv.at("epsilon") == 0.0);
  CHECK(kv.at("alpha") == 0.0);
  CHECK(kv.at("d_star") == 0.0);
  CHECK(kv.at("max_residual") <= 1e-14);
  int counted = 0;
  for (const auto& [name, value] : kv)
    if (name.rfind("residual[", 0) == 0) {
      CHECK(std::abs(value) <= 1e-14);
      ++counted;
    }
  CHECK(counted >= 3);
}

TEST_CASE("intensity report agrees across routes on the point pair") {
  write_text("cli_sif.json", R"({
    "materials": {"eta": 0.5, "nu_plus": 0.2, "nu_minus": 0.3},
    "loads": [
      {"face": "upper", "kind": "point", "position": -1.0, "components": [0.0, -1.0, 0.0]},
      {"face": "lower", "kind": "point", "position": -1.0, "components": [0.0, -1.0, 0.0]}
    ]
  })");
  CHECK(run({"sif", "--config", "cli_sif.json", "--out", "cli_sif.txt"}) == 0);
  const auto kv = kv_of(slurp("cli_sif.txt"));
  CHECK(kv.at("K_delta") < 1e-8);
  CHECK(kv.at("A_delta") < 1e-7);

  const auto p = derive_params({1.0, 0.2}, {3.0, 0.3});
  const auto ref = point_pair_reference(1.0, 0.0, 1.0, p);
  CHECK(std::abs(kv.at("K_closed_I") - ref.K.real()) <= 1e-13);
  CHECK(std::abs(kv.at("K_closed_II") - ref.K.imag()) <= 1e-13);
}

TEST_CASE("sweep emits deterministic eta blocks with the constant ratio") {
  write_text("cli_sweep.json",
             R"({"sweep": {"etas": [-0.5, 0.5], "grid": 5, "b_max": 0.8}})");
  setenv("WFCRACK_THREADS", "3", 1);
  CHECK(run({"sweep", "--config", "cli_sweep.json", "--out",
             "cli_sweep_a.csv"}) == 0);
  setenv("WFCRACK_THREADS", "1", 1);
  CHECK(run({"sweep", "--config", "cli_sweep.json", "--out",
             "cli_sweep_b.csv"}) == 0);
  unsetenv("WFCRACK_THREADS");

  const std::string text = slurp("cli_sweep_a.csv");
  CHECK(text == slurp("cli_sweep_b.csv"));

  const auto lines = lines_of(text);
  REQUIRE(lines.size() == 11);
  CHECK(lines[0] ==
        "eta,b_over_a,KS_I,KS_II,KA_I,KA_II,AS_I,AS_II,AA_I,AA_II,ratio_KI");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = csv_row(lines[i]);
    REQUIRE(row.size() == 11);
    const double eta = row[0], b = row[1];
    const auto p = derive_params({1.0, 0.2},
                                 {(1.0 + eta) / (1.0 - eta), 0.3});
    const auto ref = three_point_reference(1.0, 1.0, b, p);
    CHECK(std::abs(row[2] - ref.K_S.real()) <= 1e-13);
    CHECK(std::abs(row[5] - ref.K_A.imag()) <= 1e-13);
    CHECK(std::abs(row[10] - row[4] / row[2]) <= 1e-13);
    if (b == 0.0) {
      // skew columns vanish identically at b/a = 0
      for (int c : {4, 5, 8, 9, 10}) CHECK(row[c] == 0.0);
    } else {
      // sliding-component ratios: skew over symmetric is -alpha
      CHECK(std::abs(row[5] / row[3] + p.alpha) <= 1e-10);
      CHECK(std::abs(row[9] / row[7] + p.alpha) <= 1e-10);
    }
  }
}

TEST_CASE("perturbation ladder shows first-order agreement") {
  write_text("cli_perturb.json", kMixedLoadsJson);
  CHECK(run({"perturb", "--config", "cli_perturb.json", "--out",
             "cli_perturb.csv"}) == 0);
  const auto lines = lines_of(slurp("cli_perturb.csv"));
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "a,ReK_star,ImK_star,ReK_pred,ImK_pred,abs_err");

  const auto p = derive_params({1.0, 0.2}, {3.0, 0.3});
  const auto lc = mixed_case();
  std::vector<double> errs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = csv_row(lines[i]);
    REQUIRE(row.size() == 6);
    const auto adv = advance_sif(p, lc, row[0]);
    CHECK(std::abs(row[1] - adv.K_star.real()) <= 1e-14);
    CHECK(std::abs(row[2] - adv.K_star.imag()) <= 1e-14);
    CHECK(std::abs(row[5] - std::abs(adv.K_star - cplx(row[3], row[4]))) <=
          1e-14);
    errs.push_back(row[5]);
  }
  CHECK(errs[0] / errs[1] >= 50.0);
  CHECK(errs[1] / errs[2] >= 50.0);
}

TEST_CASE("field grid matches the series evaluator") {
  write_text("cli_field.json", R"({
    "materials": {"mu_plus": 1.0, "nu_plus": 0.2, "mu_minus": 3.0, "nu_minus": 0.3},
    "loads": [
      {"face": "upper", "kind": "bump", "r_lo": 0.5, "r_hi": 1.5, "k": 3, "components": [0.0, -1.0, 0.0]},
      {"face": "lower", "kind": "bump", "r_lo": 0.5, "r_hi": 1.5, "k": 3, "components": [0.0, -1.0, 0.0]}
    ],
    "field": {"r": [0.01, 0.1], "n_theta": 5, "terms": 3}
  })");
  CHECK(run({"field", "--config", "cli_field.json", "--out",
             "cli_field.csv"}) == 0);
  const auto lines = lines_of(slurp("cli_field.csv"));
  REQUIRE(lines.size() == 11);
  CHECK(lines[0] == "r,theta,srr,stt,srt,ur,ut");

  LoadCase lc;
  SmoothLoad sm;
  auto coeffs = bump_poly_coeffs(0.5, 1.5, 3);
  for (double& c : coeffs) c *= -1.0;
  sm.poly_r[1] = coeffs;
  sm.x_lo = -1.5;
  sm.x_hi = -0.5;
  lc.tractions.push_back({Face::Upper, sm});
  lc.tractions.push_back({Face::Lower, sm});
  const auto p = derive_params({1.0, 0.2}, {3.0, 0.3});
  const auto te = tip_expansion(p, lc, 1e-9);

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = csv_row(lines[i]);
    REQUIRE(row.size() == 7);
    const auto fv = field_asymptotics(row[0], row[1], 3, te);
    CHECK(std::abs(row[2] - fv.srr) <= 1e-14 * (1.0 + std::abs(fv.srr)));
    CHECK(std::abs(row[3] - fv.stt) <= 1e-14 * (1.0 + std::abs(fv.stt)));
    CHECK(std::abs(row[4] - fv.srt) <= 1e-14 * (1.0 + std::abs(fv.srt)));
    CHECK(std::abs(row[5] - fv.ur) <= 1e-14 * (1.0 + std::abs(fv.ur)));
    CHECK(std::abs(row[6] - fv.ut) <= 1e-14 * (1.0 + std::abs(fv.ut)));
  }
  // five angles spanning the faces
  CHECK(csv_row(lines[1])[1] == -kPi);
  CHECK(csv_row(lines[5])[1] == kPi);
}

TEST_CASE("inverse field evaluation works at an interior angle") {
  write_text("cli_inverse.json", R"({
    "materials": {"mu_plus": 1.0, "nu_plus": 0.2, "mu_minus": 3.0, "nu_minus": 0.3},
    "loads": [
      {"face": "upper", "kind": "bump", "r_lo": 0.5, "r_hi": 1.5, "k": 3, "components": [0.0, -1.0, 0.0]},
      {"face": "lower", "kind": "bump", "r_lo": 0.5, "r_hi": 1.5, "k": 3, "components": [0.0, -1.0, 0.0]}
    ],
    "field": {"r": [0.5], "theta": [0.7], "method": "inverse"}
  })");
  CHECK(run({"field", "--config", "cli_inverse.json", "--out",
             "cli_inverse.csv"}) == 0);
  const auto lines = lines_of(slurp("cli_inverse.csv"));
  REQUIRE(lines.size() == 2);
  const auto row = csv_row(lines[1]);

  LoadCase lc;
  SmoothLoad sm;
  auto coeffs = bump_poly_coeffs(0.5, 1.5, 3);
  for (double& c : coeffs) c *= -1.0;
  sm.poly_r[1] = coeffs;
  sm.x_lo = -1.5;
  sm.x_hi = -0.5;
  lc.tractions.push_back({Face::Upper, sm});
  lc.tractions.push_back({Face::Lower, sm});
  const auto p = derive_params({1.0, 0.2}, {3.0, 0.3});
  const auto fv = mellin_inverse(0.5, 0.7, p, lc, 0.25, 1e-9);
  CHECK(std::abs(row[2] - fv.srr) <= 1e-14 * (1.0 + std::abs(fv.srr)));
  CHECK(std::abs(row[6] - fv.ut) <= 1e-14 * (1.0 + std::abs(fv.ut)));
}

TEST_CASE("configuration errors exit with code 2") {
  CHECK(run({"sif"}) == 2);  // no config
  CHECK(run({"sif", "--config", "definitely_missing.json"}) == 2);

  write_text("cli_bad.json", "{ this is not json");
  CHECK(run({"params", "--config", "cli_bad.json"}) == 2);

  write_text("cli_both.json",
             R"({"materials": {"mu_plus": 1.0, "nu_plus": 0.2,
                                "mu_minus": 3.0, "nu_minus": 0.3,
                                "eta": 0.5}})");
  CHECK(run({"params", "--config", "cli_both.json"}) == 2);

  write_text("cli_ok_params.json",
             R"({"materials": {"eta": 0.5, "nu_plus": 0.2, "nu_minus": 0.3}})");
  CHECK(run({"bogus", "--config", "cli_ok_params.json"}) == 2);

  // eta outside (-1, 1)
  CHECK(run({"sweep", "--eta", "1.5", "--out", "cli_unused.csv"}) == 2);
  CHECK(run({"sweep", "--eta", "0.5;0.7", "--out", "cli_unused.csv"}) == 2);

  // unbalanced loads are rejected by validation
  write_text("cli_unbalanced.json", R"({
    "materials": {"eta": 0.5, "nu_plus": 0.2, "nu_minus": 0.3},
    "loads": [{"face": "upper", "kind": "point", "position": -1.0,
               "components": [0.0, -1.0, 0.0]}]
  })");
  CHECK(run({"sif", "--config", "cli_unbalanced.json"}) == 2);

  // mode3 command demands an antiplane config
  write_text("cli_plane.json", kMixedLoadsJson);
  CHECK(run({"mode3", "--config", "cli_plane.json"}) == 2);

  setenv("WFCRACK_THREADS", "0", 1);
  CHECK(run({"sweep", "--out", "cli_unused.csv"}) == 2);
  unsetenv("WFCRACK_THREADS");
}

TEST_CASE("numerical failures exit with code 3") {
  // Face-angle inversion of an algebraically decaying transform cannot reach
  // an overtight tolerance before the contour cap.
  write_text("cli_face_inverse.json", R"({
    "materials": {"mu_plus": 1.0, "nu_plus": 0.2, "mu_minus": 3.0, "nu_minus": 0.3},
    "loads": [
      {"face": "upper", "kind": "bump", "r_lo": 0.5, "r_hi": 1.5, "k": 3, "components": [0.0, -1.0, 0.0]},
      {"face": "lower", "kind": "bump", "r_lo": 0.5, "r_hi": 1.5, "k": 3, "components": [0.0, -1.0, 0.0]}
    ],
    "field": {"r": [1.0], "theta": [3.141592653589793], "method": "inverse"}
  })");
  CHECK(run({"field", "--config", "cli_face_inverse.json", "--tol", "1e-12",
             "--out", "cli_face_inverse.csv"}) == 3);
}

TEST_CASE("antiplane report matches the antiplane closed form") {
  write_text("cli_mode3.json", R"({
    "materials": {"mu_plus": 1.0, "nu_plus": 0.2, "mu_minus": 3.0, "nu_minus": 0.3},
    "mode": "mode3",
    "loads": [
      {"face": "upper", "kind": "point", "position": -1.0, "components": [0.0, 0.0, -1.0]},
      {"face": "lower", "kind": "point", "position": -1.0, "components": [0.0, 0.0, -1.0]}
    ]
  })");
  CHECK(run({"mode3", "--config", "cli_mode3.json", "--out",
             "cli_mode3.txt"}) == 0);
  const auto kv = kv_of(slurp("cli_mode3.txt"));
  CHECK(std::abs(kv.at("K_III_closed") - mode3_point_reference(1.0, 1.0)) <=
        1e-13);
  CHECK(kv.at("K_III_delta") < 1e-8);
}

// The cases exercise --config/--out round trips with relative paths, so run
// them all from a scratch directory instead of wherever ctest was invoked.
int main(int argc, char** argv) {
  const auto scratch =
      std::filesystem::temp_directory_path() / "wfcrack_cli_tests";
  std::filesystem::create_directories(scratch);
  std::filesystem::current_path(scratch);
  return doctest::Context(argc, argv).run();
}
