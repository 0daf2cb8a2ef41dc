#include "wfc/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wfc/errors.hpp"
#include "wfc/fullfield.hpp"
#include "wfc/loading.hpp"
#include "wfc/materials.hpp"
#include "wfc/perturb.hpp"
#include "wfc/sif.hpp"

namespace wfc {
namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

// All numeric output goes through one formatter: 17 significant digits,
// C-locale '.' decimal point, so files are bit-reproducible.
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void config_fail(const std::string& msg) {
  throw input_error(msg);
}

double need_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    config_fail(std::string("missing numeric field '") + key + "'");
  return j.at(key).get<double>();
}

BimaterialParams materials_from_eta(double eta, double nu_p, double nu_m) {
  if (!(std::abs(eta) < 1.0))
    config_fail("eta must satisfy |eta| < 1");
  // mu_plus = 1 normalization; eta = (mu_- - mu_+)/(mu_- + mu_+).
  return derive_params({1.0, nu_p}, {(1.0 + eta) / (1.0 - eta), nu_m});
}

BimaterialParams parse_materials(const json& cfg) {
  if (!cfg.contains("materials"))
    config_fail("config needs a 'materials' block");
  const json& m = cfg.at("materials");
  const bool direct = m.contains("mu_plus") || m.contains("mu_minus");
  const bool by_eta = m.contains("eta");
  if (direct == by_eta)
    config_fail(
        "materials: give exactly one parameterization, "
        "(mu_plus, nu_plus, mu_minus, nu_minus) or (eta, nu_plus, nu_minus)");
  const double nu_p = need_number(m, "nu_plus");
  const double nu_m = need_number(m, "nu_minus");
  if (by_eta) return materials_from_eta(need_number(m, "eta"), nu_p, nu_m);
  return derive_params({need_number(m, "mu_plus"), nu_p},
                       {need_number(m, "mu_minus"), nu_m});
}

Mode parse_mode(const json& cfg) {
  const std::string mode = cfg.value("mode", "plane_strain");
  if (mode == "plane_strain") return Mode::PlaneStrain;
  if (mode == "mode3" || mode == "antiplane") return Mode::ModeIII;
  config_fail("mode must be 'plane_strain' or 'mode3'");
}

LoadCase parse_loads(const json& cfg, Mode mode) {
  LoadCase lc;
  lc.mode = mode;
  lc.gap = cfg.value("gap", 0.0);
  lc.allow_unbalanced = cfg.value("allow_unbalanced", false);
  if (!cfg.contains("loads") || !cfg.at("loads").is_array() ||
      cfg.at("loads").empty())
    config_fail("config needs a non-empty 'loads' array");
  for (const json& e : cfg.at("loads")) {
    FaceTraction tr;
    const std::string face = e.value("face", "upper");
    if (face == "upper")
      tr.face = Face::Upper;
    else if (face == "lower")
      tr.face = Face::Lower;
    else
      config_fail("load face must be 'upper' or 'lower'");

    std::array<double, 3> comps{};
    if (e.contains("components")) {
      const json& c = e.at("components");
      if (!c.is_array() || c.size() != 3)
        config_fail("load components must be an array of three numbers");
      for (int i = 0; i < 3; ++i) comps[i] = c.at(i).get<double>();
    }

    const std::string kind = e.value("kind", "point");
    if (kind == "point") {
      PointLoad pt;
      pt.x1 = need_number(e, "position");
      pt.comps = comps;
      tr.load = pt;
    } else if (kind == "bump") {
      // [(r - r_lo)(r_hi - r)]^k scaled per component.
      SmoothLoad sm;
      const double r_lo = need_number(e, "r_lo");
      const double r_hi = need_number(e, "r_hi");
      const int k = e.value("k", 3);
      const auto base = bump_poly_coeffs(r_lo, r_hi, k);
      for (int c = 0; c < 3; ++c) {
        if (comps[c] == 0.0) continue;
        auto scaled = base;
        for (double& x : scaled) x *= comps[c];
        sm.poly_r[c] = std::move(scaled);
      }
      sm.x_lo = -r_hi;
      sm.x_hi = -r_lo;
      tr.load = sm;
    } else if (kind == "poly") {
      SmoothLoad sm;
      const double r_lo = need_number(e, "r_lo");
      const double r_hi = need_number(e, "r_hi");
      if (!e.contains("coeffs") || !e.at("coeffs").is_array() ||
          e.at("coeffs").size() != 3)
        config_fail("poly load needs 'coeffs' with three coefficient arrays");
      for (int c = 0; c < 3; ++c)
        for (const json& v : e.at("coeffs").at(c))
          sm.poly_r[c].push_back(v.get<double>());
      sm.x_lo = -r_hi;
      sm.x_hi = -r_lo;
      tr.load = sm;
    } else {
      config_fail("load kind must be 'point', 'bump', or 'poly'");
    }
    lc.tractions.push_back(std::move(tr));
  }
  return lc;
}

struct Numerics {
  double tol = 1e-9;
  double omega = 0.25;  // inversion contour abscissa
  int depth = 3;        // default series depth for field output
};

Numerics parse_numerics(const json& cfg) {
  Numerics n;
  if (cfg.contains("numerics")) {
    const json& x = cfg.at("numerics");
    n.tol = x.value("tol", n.tol);
    n.omega = x.value("omega", n.omega);
    n.depth = x.value("depth", n.depth);
  }
  if (!(n.tol > 0.0)) config_fail("numerics.tol must be positive");
  return n;
}

int thread_cap() {
  if (const char* env = std::getenv("WFCRACK_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      config_fail("WFCRACK_THREADS must be a positive integer");
    return static_cast<int>(std::min<long>(v, 256));
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// ---- commands --------------------------------------------------------------

void cmd_params(const json& cfg, std::ostream& os) {
  const auto p = parse_materials(cfg);
  os << "mu_plus = " << num(p.plus.mu) << "\n";
  os << "nu_plus = " << num(p.plus.nu) << "\n";
  os << "mu_minus = " << num(p.minus.mu) << "\n";
  os << "nu_minus = " << num(p.minus.nu) << "\n";
  os << "epsilon = " << num(p.epsilon) << "\n";
  os << "alpha = " << num(p.alpha) << "\n";
  os << "d_star = " << num(p.d_star) << "\n";
  os << "gamma = " << num(p.gamma) << "\n";
  os << "d = " << num(p.d) << "\n";
  os << "b = " << num(p.b) << "\n";
  os << "e = " << num(p.e) << "\n";
  os << "f = " << num(p.f) << "\n";
  os << "eta = " << num(p.eta) << "\n";
  os << "d0 = " << num(p.d0) << "\n";
  os << "e0 = " << num(p.e0) << "\n";
  os << "nu_equiv = " << num(p.nu_equiv) << "\n";
  const auto rep = verify_identities(p);
  for (const auto& [name, value] : rep.residuals)
    os << "residual[" << name << "] = " << num(value) << "\n";
  os << "max_residual = " << num(rep.max_residual) << "\n";
}

void print_mode3_report(const TipCoefficients& closed,
                        const TipCoefficients& quad, std::ostream& os) {
  os << "K_III_closed = " << num(closed.K3) << "\n";
  os << "K_III_quadrature = " << num(quad.K3) << "\n";
  os << "K_III_delta = " << num(std::abs(closed.K3 - quad.K3)) << "\n";
  os << "A_III_closed = " << num(closed.A3) << "\n";
  os << "A_III_quadrature = " << num(quad.A3) << "\n";
  os << "A_III_delta = " << num(std::abs(closed.A3 - quad.A3)) << "\n";
}

void cmd_sif(const json& cfg, const Numerics& nm, std::ostream& os) {
  const auto p = parse_materials(cfg);
  const auto lc = parse_loads(cfg, parse_mode(cfg));
  const auto closed = sif_closed_form(lc, p);
  const auto quad = sif_quadrature(lc, p, nm.tol);
  if (lc.mode == Mode::ModeIII) {
    print_mode3_report(closed, quad, os);
    return;
  }
  const auto put = [&os](const char* name, cplx v) {
    os << name << "_I = " << num(v.real()) << "\n";
    os << name << "_II = " << num(v.imag()) << "\n";
  };
  put("K_closed", closed.K);
  put("K_quadrature", quad.K);
  os << "K_delta = " << num(std::abs(closed.K - quad.K)) << "\n";
  put("A_closed", closed.A);
  put("A_quadrature", quad.A);
  os << "A_delta = " << num(std::abs(closed.A - quad.A)) << "\n";
  put("B_closed", closed.B);
  put("B_quadrature", quad.B);
  os << "B_delta = " << num(std::abs(closed.B - quad.B)) << "\n";
}

void cmd_mode3(const json& cfg, const Numerics& nm, std::ostream& os) {
  const auto p = parse_materials(cfg);
  const auto lc = parse_loads(cfg, parse_mode(cfg));
  if (lc.mode != Mode::ModeIII)
    config_fail("mode3 command needs \"mode\": \"mode3\" in the config");
  print_mode3_report(sif_closed_form(lc, p), sif_quadrature(lc, p, nm.tol),
                     os);
}

struct SweepSpec {
  std::vector<double> etas{-0.99, -0.5, 0.0, 0.5, 0.99};
  int grid = 20;
  double b_max = 0.95;
  double nu_p = 0.2, nu_m = 0.3;
};

SweepSpec parse_sweep(const json& cfg) {
  SweepSpec s;
  if (cfg.contains("sweep")) {
    const json& x = cfg.at("sweep");
    if (x.contains("etas")) {
      s.etas.clear();
      for (const json& v : x.at("etas")) s.etas.push_back(v.get<double>());
    }
    s.grid = x.value("grid", s.grid);
    s.b_max = x.value("b_max", s.b_max);
    s.nu_p = x.value("nu_plus", s.nu_p);
    s.nu_m = x.value("nu_minus", s.nu_m);
  }
  return s;
}

// Three-point family at F = 1, a = 1: one row per (eta, b/a) grid point.
// Rows are computed concurrently but emitted in grid order, so the file is
// identical for any thread count.
void cmd_sweep(const SweepSpec& s, std::ostream& os) {
  if (s.grid < 2) config_fail("sweep grid needs at least two points");
  if (!(s.b_max >= 0.0 && s.b_max < 1.0))
    config_fail("sweep b_max must lie in [0, 1)");
  if (s.etas.empty()) config_fail("sweep needs at least one eta value");

  std::vector<BimaterialParams> mats;
  mats.reserve(s.etas.size());
  for (double eta : s.etas)
    mats.push_back(materials_from_eta(eta, s.nu_p, s.nu_m));

  struct Point {
    double eta, b;
    const BimaterialParams* p;
  };
  std::vector<Point> grid;
  grid.reserve(s.etas.size() * s.grid);
  for (std::size_t ie = 0; ie < s.etas.size(); ++ie)
    for (int jb = 0; jb < s.grid; ++jb)
      grid.push_back(
          {s.etas[ie], s.b_max * jb / (s.grid - 1.0), &mats[ie]});

  std::vector<std::string> rows(grid.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr fail;
  std::mutex fail_mx;
  const auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < grid.size();) {
      try {
        const Point& pt = grid[i];
        const auto tp = three_point_reference(1.0, 1.0, pt.b, *pt.p);
        std::string line = num(pt.eta);
        for (double v :
             {pt.b, tp.K_S.real(), tp.K_S.imag(), tp.K_A.real(),
              tp.K_A.imag(), tp.A_S.real(), tp.A_S.imag(), tp.A_A.real(),
              tp.A_A.imag(), tp.K_A.real() / tp.K_S.real()}) {
          line += ',';
          line += num(v);
        }
        rows[i] = std::move(line);
      } catch (...) {
        const std::lock_guard<std::mutex> lk(fail_mx);
        if (!fail) fail = std::current_exception();
        next.store(grid.size());
      }
    }
  };

  const int nt = static_cast<int>(std::min<std::size_t>(
      static_cast<std::size_t>(thread_cap()), grid.size()));
  if (nt <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (fail) std::rethrow_exception(fail);

  os << "eta,b_over_a,KS_I,KS_II,KA_I,KA_II,AS_I,AS_II,AA_I,AA_II,ratio_KI\n";
  for (const auto& line : rows) os << line << "\n";
}

void cmd_perturb(const json& cfg, const Numerics& nm, std::ostream& os) {
  const auto p = parse_materials(cfg);
  const auto lc = parse_loads(cfg, parse_mode(cfg));
  std::vector<double> fractions{1e-2, 1e-3, 1e-4};
  if (cfg.contains("perturb")) {
    const json& x = cfg.at("perturb");
    if (x.contains("fractions")) {
      fractions.clear();
      for (const json& v : x.at("fractions"))
        fractions.push_back(v.get<double>());
    }
  }
  if (fractions.empty()) config_fail("perturb needs a non-empty ladder");

  const double gap = validate(lc);
  const auto rates = first_order(p, lc, nm.tol);
  os << "a,ReK_star,ImK_star,ReK_pred,ImK_pred,abs_err\n";
  for (double frac : fractions) {
    if (!(frac > 0.0 && frac < 1.0))
      config_fail("perturb fractions must lie in (0, 1)");
    const double a = frac * gap;
    const auto adv = advance_sif(p, lc, a, nm.tol);
    const cplx pred = adv.K0 + a * rates.first;
    os << num(a) << ',' << num(adv.K_star.real()) << ','
       << num(adv.K_star.imag()) << ',' << num(pred.real()) << ','
       << num(pred.imag()) << ',' << num(std::abs(adv.K_star - pred))
       << "\n";
  }
}

void cmd_field(const json& cfg, const Numerics& nm, int grid_override,
               std::ostream& os) {
  const auto p = parse_materials(cfg);
  const auto lc = parse_loads(cfg, parse_mode(cfg));

  std::vector<double> rs, thetas;
  std::string method = "series";
  int terms = nm.depth;
  int n_theta = 9;
  double r_min = 1e-3, r_max = 1.0;
  int n_r = 5;
  if (cfg.contains("field")) {
    const json& x = cfg.at("field");
    method = x.value("method", method);
    terms = x.value("terms", terms);
    n_theta = x.value("n_theta", n_theta);
    r_min = x.value("r_min", r_min);
    r_max = x.value("r_max", r_max);
    n_r = x.value("n_r", n_r);
    if (x.contains("r"))
      for (const json& v : x.at("r")) rs.push_back(v.get<double>());
    if (x.contains("theta"))
      for (const json& v : x.at("theta")) thetas.push_back(v.get<double>());
  }
  if (grid_override > 0) n_theta = grid_override;

  if (rs.empty()) {
    if (!(r_min > 0.0 && r_max > r_min && n_r >= 2))
      config_fail("field needs 0 < r_min < r_max and n_r >= 2");
    for (int i = 0; i < n_r; ++i)
      rs.push_back(r_min *
                   std::pow(r_max / r_min, i / static_cast<double>(n_r - 1)));
  }
  if (thetas.empty()) {
    if (n_theta < 2) config_fail("field n_theta must be at least 2");
    for (int i = 0; i < n_theta; ++i)
      thetas.push_back(-kPi + 2.0 * kPi * i / (n_theta - 1.0));
  }

  os << "r,theta,srr,stt,srt,ur,ut\n";
  const auto emit = [&os](double r, double th, const FieldValue& fv) {
    os << num(r) << ',' << num(th) << ',' << num(fv.srr) << ','
       << num(fv.stt) << ',' << num(fv.srt) << ',' << num(fv.ur) << ','
       << num(fv.ut) << "\n";
  };
  if (method == "series") {
    const auto te = tip_expansion(p, lc, nm.tol);
    for (double r : rs)
      for (double th : thetas) emit(r, th, field_asymptotics(r, th, terms, te));
  } else if (method == "inverse") {
    for (double r : rs)
      for (double th : thetas)
        emit(r, th, mellin_inverse(r, th, p, lc, nm.omega, nm.tol));
  } else {
    config_fail("field method must be 'series' or 'inverse'");
  }
}

// ---- driver -----------------------------------------------------------------

std::vector<double> parse_eta_csv(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      config_fail("--eta expects a comma-separated list of numbers");
    }
  }
  if (out.empty()) config_fail("--eta list is empty");
  return out;
}

int fail_line(const char* code, std::string msg, int status) {
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  std::cerr << code << " " << msg << std::endl;
  return status;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  std::string command, config_path, out_path, eta_csv;
  double tol_override = 0.0;
  int grid_override = 0;

  CLI::App app{"interfacial-crack intensity toolkit"};
  app.add_option("command", command,
                 "one of: params, sif, sweep, perturb, field, mode3")
      ->required();
  app.add_option("--config", config_path, "JSON run configuration file");
  app.add_option("--out", out_path, "write output here instead of stdout");
  app.add_option("--tol", tol_override, "override numerics.tol");
  app.add_option("--grid", grid_override,
                 "override the grid point count (sweep b/a points, field "
                 "angles)");
  app.add_option("--eta", eta_csv, "comma-separated eta list for sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail_line("E_CONFIG", e.what(), 2);
  }

  try {
    json cfg = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) config_fail("cannot read config file: " + config_path);
      cfg = json::parse(in);
    } else if (command != "sweep") {
      // sweep can run entirely from defaults and flags
      config_fail("--config is required for this command");
    }

    Numerics nm = parse_numerics(cfg);
    if (tol_override != 0.0) {
      if (!(tol_override > 0.0)) config_fail("--tol must be positive");
      nm.tol = tol_override;
    }

    std::ostringstream body;
    if (command == "params") {
      cmd_params(cfg, body);
    } else if (command == "sif") {
      cmd_sif(cfg, nm, body);
    } else if (command == "mode3") {
      cmd_mode3(cfg, nm, body);
    } else if (command == "sweep") {
      SweepSpec s = parse_sweep(cfg);
      if (!eta_csv.empty()) s.etas = parse_eta_csv(eta_csv);
      if (grid_override != 0) s.grid = grid_override;
      cmd_sweep(s, body);
    } else if (command == "perturb") {
      cmd_perturb(cfg, nm, body);
    } else if (command == "field") {
      cmd_field(cfg, nm, grid_override, body);
    } else {
      config_fail("unknown command: " + command);
    }

    if (out_path.empty()) {
      std::cout << body.str();
    } else {
      std::ofstream out(out_path);
      if (!out) config_fail("cannot write output file: " + out_path);
      out << body.str();
    }
    return 0;
  } catch (const numerical_error& e) {
    return fail_line("E_NUMERIC", e.what(), 3);
  } catch (const input_error& e) {
    return fail_line("E_CONFIG", e.what(), 2);
  } catch (const json::exception& e) {
    return fail_line("E_CONFIG", e.what(), 2);
  } catch (const std::exception& e) {
    return fail_line("E_INTERNAL", e.what(), 3);
  }
}

}  // namespace wfc
