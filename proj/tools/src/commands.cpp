#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "checks.hpp"
#include "conifold/barnes.hpp"
#include "conifold/disp.hpp"
#include "conifold/errors.hpp"
#include "conifold/gw.hpp"
#include "conifold/hirota.hpp"
#include "conifold/lattice.hpp"
#include "conifold/specfun.hpp"
#include "parse.hpp"
#include "report.hpp"

namespace conifold::cli {

namespace {

struct Output {
  std::string path = "-";
  std::string csv;
};

void add_output(CLI::App* app, Output& o, bool csv) {
  app->add_option("--out", o.path, "JSON report path, - for stdout");
  if (csv) app->add_option("--csv", o.csv, "CSV data path");
}

int emit(const Report& r, const Output& o, std::ostream& out) {
  std::string text = dump(r.to_json()) + "\n";
  if (o.path == "-") {
    out << text;
  } else {
    std::ofstream f(o.path);
    if (!f) throw DomainError("cannot write " + o.path);
    f << text;
  }
  return r.pass ? kPass : kCheckFailed;
}

void check(Report& r, const std::string& name, double residual, double tol) {
  r.residuals[name] = residual;
  r.tolerances[name] = tol;
  if (!(residual <= tol)) r.pass = false;
}

// ---- specfun ---------------------------------------------------------------

struct SpecfunEval {
  std::optional<int> bernoulli, polylog, gen_bernoulli;
  std::string z = "0", omega = "1";
  Output out;
};

Report specfun_eval(const SpecfunEval& a) {
  Report r;
  r.command = "specfun eval";
  if (a.bernoulli) {
    if (*a.bernoulli < 0) throw DomainError("--bernoulli needs k >= 0");
    r.params["bernoulli"] = *a.bernoulli;
    r.results["value"] = specfun::bernoulli_number(*a.bernoulli).str();
  } else if (a.polylog) {
    cplx z = parse_complex(a.z);
    r.params["s"] = *a.polylog;
    r.params["z"] = to_json(z);
    r.results["value"] = to_json(specfun::polylog(*a.polylog, z));
  } else if (a.gen_bernoulli) {
    cplx z = parse_complex(a.z);
    auto omega = parse_complex_list(a.omega);
    r.params["n"] = *a.gen_bernoulli;
    r.params["z"] = to_json(z);
    json w = json::array();
    for (auto x : omega) w.push_back(to_json(x));
    r.params["omega"] = w;
    r.results["value"] =
        to_json(specfun::gen_bernoulli<cplx>(*a.gen_bernoulli, z, std::span<const cplx>(omega)));
  } else {
    throw DomainError("specfun eval: give one of --bernoulli, --polylog, --gen-bernoulli");
  }
  return r;
}

// ---- barnes ----------------------------------------------------------------

struct BarnesEval {
  std::string function = "log-G";
  std::string z = "0.3+0.4i", omega = "1", s = "0";
  std::string precision = "double";
  Output out;
};

template <class C>
C parse_as(const std::string& s) {
  if constexpr (std::is_same_v<C, cplx>) return parse_complex(s);
  else return parse_complex_quad(s);
}

template <class C>
std::vector<C> parse_list_as(const std::string& text) {
  std::vector<C> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = text.find(',', start);
    out.push_back(parse_as<C>(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class C>
cplx barnes_value(const BarnesEval& a) {
  C z = parse_as<C>(a.z);
  auto omega = parse_list_as<C>(a.omega);
  const std::string& f = a.function;
  if (f == "zeta") return to_cplx(barnes::barnes_zeta(parse_as<C>(a.s), barnes::make_evaluation(z, omega)));
  if (f == "log-gamma") return to_cplx(barnes::log_multiple_gamma(barnes::make_evaluation(z, omega)).log_gamma);
  if (f == "log-sine") return to_cplx(barnes::log_multiple_sine(z, std::span<const C>(omega)));
  if (f == "log-H" || f == "log-G") {
    if (omega.size() != 2) throw DomainError("--omega needs two periods for " + f);
    return to_cplx(f == "log-H" ? barnes::log_H(z, omega[0], omega[1])
                                : barnes::log_G(z, omega[0], omega[1]));
  }
  throw DomainError("unknown --function " + f);
}

Report barnes_eval(const BarnesEval& a) {
  Report r;
  r.command = "barnes eval";
  r.params["function"] = a.function;
  r.params["z"] = a.z;
  r.params["omega"] = a.omega;
  if (a.function == "zeta") r.params["s"] = a.s;
  r.params["precision"] = a.precision;
  cplx v;
  if (a.precision == "double") v = barnes_value<cplx>(a);
  else if (a.precision == "quad") v = barnes_value<cquad>(a);
  else throw DomainError("--precision must be double or quad");
  r.results["value"] = to_json(v);
  return r;
}

// ---- gw --------------------------------------------------------------------

struct GwEval {
  std::string t = "0.3+0.4i";
  std::optional<int> genus;
  std::optional<std::string> lambda, x;
  std::string kappa = "1";
  int max_genus = 3;
  std::optional<std::string> constant_map;
  Output out;
};

Report gw_eval(const GwEval& a) {
  Report r;
  r.command = "gw eval";
  if (a.constant_map) {
    auto gc = parse_complex_list(*a.constant_map);
    if (gc.size() != 2) throw DomainError("--constant-map expects g,chi");
    int g = static_cast<int>(gc[0].real()), chi = static_cast<int>(gc[1].real());
    r.params["g"] = g;
    r.params["chi"] = chi;
    r.results["constant_map"] = gw::constant_map_contribution(g, chi).str();
    return r;
  }
  cplx t = parse_complex(a.t);
  r.params["t"] = to_json(t);
  r.results["q"] = to_json(gw::nome(t));
  if (a.genus) {
    r.params["genus"] = *a.genus;
    r.results["free_energy"] = to_json(gw::free_energy_genus(*a.genus, t));
  }
  if (a.lambda) {
    cplx l = parse_complex(*a.lambda);
    r.params["lambda_check"] = to_json(l);
    r.params["max_genus"] = a.max_genus;
    r.results["log_G"] = to_json(barnes::log_G(t, l, cplx(1.0)));
    r.results["genus_truncation"] = to_json(gw::genus_truncation(a.max_genus, l, t));
    if (a.x) {
      cplx x = parse_complex(*a.x), kappa = parse_complex(a.kappa);
      r.params["x"] = to_json(x);
      r.params["kappa"] = to_json(kappa);
      r.results["F_ad"] = to_json(gw::eval_F_ad(l, t, x, kappa));
    }
  }
  return r;
}

struct GwCheckDiff {
  std::string t = "0.3+0.4i", lambda = "0.1+0.1i";
  int grid = 0;
  unsigned long seed = 2024;
  double tol = 1e-8;
  Output out;
};

Report gw_check_diff(const GwCheckDiff& a) {
  Report r;
  r.command = "gw check-diff";
  std::vector<GridPoint> pts;
  if (a.grid > 0) {
    pts = difference_grid(a.grid, a.seed);
    r.params["grid"] = a.grid;
    r.params["seed"] = a.seed;
  } else {
    pts.push_back({parse_complex(a.t), parse_complex(a.lambda)});
    r.params["t"] = to_json(pts[0].t);
    r.params["lambda_check"] = to_json(pts[0].lambda_check);
  }
  auto res = difference_residuals(pts);
  if (pts.size() == 1) {
    auto d = gw::check_difference_equation(pts[0].lambda_check, pts[0].t);
    r.results["second_difference"] = to_json(d.second_difference);
    r.results["rhs"] = to_json(d.rhs);
    r.results["folds"] = d.folds;
  }
  check(r, "diff", res.diff, a.tol);
  check(r, "H_diff", res.h_diff, a.tol);
  check(r, "G_first_diff", res.g_first_diff, a.tol);
  return r;
}

struct GwScan {
  std::string t = "0.25+0.1104i", theta = "π/4";
  double eps_min = 1e-2, eps_max = 1e-1;
  int count = 9, genus = 2;
  double tol = 0.2;
  Output out;
};

Report gw_scan(const GwScan& a) {
  Report r;
  r.command = "gw scan-asymptotics";
  cplx t = parse_complex(a.t);
  double theta = parse_real(a.theta);
  if (std::abs(gw::nome(t)) > 0.5) throw DomainError("scan needs |q| <= 0.5");
  if (!(a.eps_min > 0 && a.eps_max > a.eps_min) || a.count < 2)
    throw DomainError("need 0 < eps-min < eps-max and count >= 2");
  auto eps = gw::log_spaced(a.eps_min, a.eps_max, a.count);
  auto scan = gw::asymptotic_remainder_scan(t, theta, eps, a.genus);
  r.params["t"] = to_json(t);
  r.params["theta"] = theta;
  r.params["eps"] = scan.eps;
  r.params["genus"] = a.genus;
  r.results["log_remainder"] = scan.log_remainder;
  r.results["slope"] = scan.slope;
  r.results["expected_slope"] = 2 * a.genus;
  check(r, "slope", std::abs(scan.slope - 2 * a.genus), a.tol);
  return r;
}

// ---- hirota ----------------------------------------------------------------

struct HirotaCheck {
  std::string data = "random";
  int half_width = 4;
  std::string A = "0.3", B = "0.2";
  double amplitude = 0.3;
  unsigned long seed = 7;
  int time_vars = 3, zeta_cap = 5, degree_cap = 5;
  double tol = 1e-12;
  Output out;
};

Report hirota_check(const HirotaCheck& a) {
  Report r;
  r.command = "hirota check";
  hirota::SeriesLayout layout{a.time_vars, a.zeta_cap, a.degree_cap};
  layout.validate();
  r.params["data"] = a.data;
  r.params["half_width"] = a.half_width;
  r.params["layout"] = {{"time_vars", a.time_vars}, {"zeta_cap", a.zeta_cap}, {"degree_cap", a.degree_cap}};
  if (a.half_width < 2) throw DomainError("--half-width must be >= 2");

  std::vector<cplx> la, lb;
  hirota::TauTriple base;
  if (a.data == "vacuum") {
    base = hirota::vacuum_triple(a.half_width, layout);
    double worst = 0;
    for (auto eq : kAllEquations)
      worst = std::max(worst, hirota::max_residual(hirota::hirota_residual(base, eq, a.zeta_cap), 1 << 20));
    check(r, "vacuum_all_orders", worst, 0.0);
  } else if (a.data == "background") {
    cplx A = parse_complex(a.A), B = parse_complex(a.B);
    r.params["A"] = to_json(A);
    r.params["B"] = to_json(B);
    base = hirota::constant_background_triple(a.half_width, A, B, layout);
    double res = hirota::max_residual(hirota::hirota_residual(base, hirota::HirotaEquation::a, 0), 0);
    check(r, "background_a_order0", res, a.tol);
  } else if (a.data == "random") {
    r.params["amplitude"] = a.amplitude;
    r.params["seed"] = a.seed;
    auto s = lattice::random_state(static_cast<std::size_t>(2 * a.half_width + 1), a.amplitude, a.seed);
    la = s.a;
    lb = s.b;
    base = hirota::triple_from_lattice(la, lb, layout);
  } else {
    throw DomainError("--data must be vacuum, background or random");
  }

  auto d = hirota::extract_time_derivatives(base);
  auto first = hirota::first_order_triple(base, d);
  json per_eq = json::object();
  double worst = 0;
  for (auto eq : kAllEquations) {
    double v = hirota::max_residual(hirota::hirota_residual(first, eq, 1), 1);
    per_eq[hirota::equation_name(eq)] = v;
    worst = std::max(worst, v);
  }
  r.results["first_order_residuals"] = per_eq;
  check(r, "first_order", worst, a.tol);

  if (!la.empty()) check(r, "flow_vs_al", flow_vs_lattice(base, d, la, lb), a.tol);
  return r;
}

// ---- al --------------------------------------------------------------------

struct AlRun {
  std::size_t N = 64;
  double dt = 1e-3;
  long steps = 10000;
  long sample_every = 1000;
  std::optional<std::string> planewave, random;
  double tol_error = 1e-6, tol_drift = 1e-9;
  Output out;
};

Report al_run(const AlRun& a) {
  Report r;
  r.command = "al run";
  if (a.N < 2 || !(a.dt > 0) || a.steps < 0) throw DomainError("need N >= 2, dt > 0, steps >= 0");
  r.params["N"] = a.N;
  r.params["dt"] = a.dt;
  r.params["steps"] = a.steps;
  r.params["sample_every"] = a.sample_every;

  std::optional<lattice::PlaneWave> wave;
  lattice::LatticeState init;
  if (a.planewave) {
    auto kv = parse_assignments(*a.planewave);
    for (const char* key : {"A", "B", "k"})
      if (!kv.count(key)) throw DomainError(std::string("--planewave needs ") + key);
    wave = lattice::PlaneWave{kv["A"], kv["B"], kv["k"].real()};
    double kc = lattice::commensurate_wavenumber(wave->k, a.N);
    if (std::abs(kc - wave->k) > 1e-9)
      throw DomainError("k is not a multiple of 2*pi/N; nearest is " + std::to_string(kc));
    r.params["planewave"] = {{"A", to_json(wave->A)}, {"B", to_json(wave->B)}, {"k", wave->k}};
    init = wave->state(a.N, 0.0);
  } else {
    auto kv = parse_assignments(a.random.value_or("amp=0.1,seed=1"));
    double amp = kv.count("amp") ? kv["amp"].real() : 0.1;
    auto seed = static_cast<unsigned long>(kv.count("seed") ? kv["seed"].real() : 1);
    r.params["random"] = {{"amp", amp}, {"seed", seed}};
    init = lattice::random_state(a.N, amp, seed);
  }

  lattice::IntegrateOptions opt;
  opt.dt = a.dt;
  opt.steps = a.steps;
  opt.sample_every = a.sample_every;
  auto traj = lattice::integrate(init, opt);

  double drift = 0, err = 0;
  json c0 = json::array();
  const cplx c00 = traj.samples.front().c0;
  for (const auto& s : traj.samples) {
    drift = std::max(drift, std::abs(s.c0 - c00));
    c0.push_back({{"step", s.step}, {"time", s.time}, {"c0", to_json(s.c0)}});
    if (wave) {
      auto exact = wave->state(a.N, s.time);
      for (std::size_t n = 0; n < a.N; ++n)
        err = std::max({err, std::abs(s.state.a[n] - exact.a[n]), std::abs(s.state.b[n] - exact.b[n])});
    }
  }
  r.results["final_time"] = traj.final_state.time;
  r.results["c0"] = to_json(c00);
  check(r, "c0_drift", drift, a.tol_drift);
  if (wave) {
    r.results["frequency"] = to_json(wave->frequency());
    check(r, "max_error_vs_analytic", err, a.tol_error);
  }

  if (!a.out.csv.empty()) {
    std::ofstream f(a.out.csv);
    if (!f) throw DomainError("cannot write " + a.out.csv);
    write_lattice_csv(f, traj);
    json side;
    side["schema"] = 1;
    side["params"] = r.params;
    side["c0_series"] = c0;
    std::ofstream g(a.out.csv + ".json");
    g << dump(side) << "\n";
    r.results["csv"] = a.out.csv;
  }
  return r;
}

// ---- disp ------------------------------------------------------------------

struct DispRun {
  std::size_t N = 64;
  std::string L = "2π";
  int j = 1;
  std::string direction = "z", convention = "published";
  std::string u0 = "1", v0 = "0", amp = "0.05", v_slope = "0";
  int mode = 1;
  double horizon = 0.1, dt = 1e-3, catastrophe = 10;
  long sample_every = 0;
  Output out;
};

disp::Direction parse_direction(const std::string& s) {
  if (s == "z") return disp::Direction::z;
  if (s == "ztilde") return disp::Direction::ztilde;
  throw DomainError("--direction must be z or ztilde");
}

disp::FlowConvention parse_convention(const std::string& s) {
  if (s == "published") return disp::FlowConvention::published;
  if (s == "lattice-limit") return disp::FlowConvention::lattice_limit;
  throw DomainError("--convention must be published or lattice-limit");
}

Report disp_run(const DispRun& a, const std::string& csv_prefix) {
  Report r;
  r.command = "disp run";
  const double L = parse_real(a.L);
  if (a.N < 4 || !(L > 0) || a.j < 1) throw DomainError("need N >= 4, L > 0, j >= 1");
  cplx u0 = parse_complex(a.u0), v0 = parse_complex(a.v0), amp = parse_complex(a.amp),
       slope = parse_complex(a.v_slope);
  r.params["N"] = a.N;
  r.params["L"] = L;
  r.params["j"] = a.j;
  r.params["direction"] = a.direction;
  r.params["convention"] = a.convention;
  r.params["u0"] = to_json(u0);
  r.params["v0"] = to_json(v0);
  r.params["amp"] = to_json(amp);
  r.params["mode"] = a.mode;
  r.params["v_slope"] = to_json(slope);
  r.params["horizon"] = a.horizon;
  r.params["dt"] = a.dt;

  disp::Fields f = profile_fields(a.N, L, u0, v0, amp, a.mode, slope);
  disp::EvolveOptions opt;
  opt.horizon = a.horizon;
  opt.dt = a.dt;
  opt.catastrophe_factor = a.catastrophe;
  opt.sample_every = a.sample_every;
  opt.convention = parse_convention(a.convention);
  try {
    auto res = disp::evolve_dispersionless(f, a.j, parse_direction(a.direction), opt);
    r.results["time"] = res.time;
    r.results["steps"] = res.steps;
    r.results["initial_gradient"] = res.initial_gradient;
    r.results["final_gradient"] = res.final_gradient;
    if (!csv_prefix.empty()) {
      if (res.samples.empty()) res.samples.push_back({res.time, res.fields});
      json files = json::array();
      for (std::size_t k = 0; k < res.samples.size(); ++k) {
        std::string path = csv_prefix + "_" + std::to_string(k) + ".csv";
        std::ofstream out(path);
        if (!out) throw DomainError("cannot write " + path);
        write_disp_csv(out, res.samples[k].fields);
        files.push_back({{"time", res.samples[k].time}, {"file", path}});
      }
      json meta;
      meta["schema"] = 1;
      meta["params"] = r.params;
      meta["samples"] = files;
      std::ofstream g(csv_prefix + ".json");
      g << dump(meta) << "\n";
      r.results["samples"] = files;
    }
  } catch (const CatastropheError& e) {
    r.results["catastrophe_time"] = e.time();
    r.results["message"] = e.what();
    r.pass = false;
  }
  return r;
}

struct DispCheck {
  std::string which = "all";
  unsigned long seed = 11;
  int samples = 20;
  std::string zeta = "0.05+0.03i";
  std::string t = "0.3+0.4i", x = "0.7", kappa = "1", lambda = "0.1+0.05i";
  double tol_flows = 1e-12, tol_density = 1e-6, tol_hamiltonian = 1e-6, tol_xdif = 1e-12,
         tol_identification = 1e-12;
  Output out;
};

Report disp_check(const DispCheck& a) {
  Report r;
  r.command = "disp check";
  r.params["which"] = a.which;
  const bool all = a.which == "all";
  bool any = false;
  if (all || a.which == "flows") {
    any = true;
    auto v = first_flow_closed_form_error();
    r.results["first_flow"] = {{"z", v.z}, {"ztilde", v.ztilde}};
    check(r, "first_flow_closed_form", std::max(v.z, v.ztilde), a.tol_flows);
    check(r, "mirror_symmetry", mirror_symmetry_error(), a.tol_flows);
  }
  if (all || a.which == "density") {
    any = true;
    r.params["seed"] = a.seed;
    r.params["samples"] = a.samples;
    auto pts = disp::random_density_samples(a.samples, a.seed);
    for (auto which : {disp::Density::h, disp::Density::htilde}) {
      auto rep = disp::check_density_constraint(which, pts);
      std::string name = which == disp::Density::h ? "h" : "htilde";
      r.results["density_" + name] = {{"max_relative", rep.max_relative},
                                      {"max_relative_flipped_sign", rep.max_relative_flipped},
                                      {"fd_error_estimate", rep.max_fd_error},
                                      {"ratio_guu_over_gvv_real", rep.ratio_real}};
      check(r, "density_constraint_" + name, rep.max_relative, a.tol_density);
    }
  }
  if (all || a.which == "hamiltonian") {
    any = true;
    cplx zeta = parse_complex(a.zeta);
    r.params["zeta"] = to_json(zeta);
    auto h = hamiltonian_consistency(zeta);
    r.results["hamiltonian"] = {{"vs_closed_form", h.vs_closed_form},
                                {"vs_lattice_limit_flows", h.vs_lattice_limit},
                                {"vs_published_flows", h.vs_published}};
    check(r, "hamiltonian_form", std::max(h.vs_closed_form, h.vs_lattice_limit), a.tol_hamiltonian);
  }
  if (all || a.which == "xdif") {
    any = true;
    cplx t = parse_complex(a.t), l = parse_complex(a.lambda);
    r.params["t"] = to_json(t);
    r.params["lambda_check"] = to_json(l);
    auto x = xdif_chain(t, l);
    r.results["u_lambda"] = to_json(x.u_lambda);
    r.results["expected_u_lambda"] = to_json(cplx(0, -2.0 * pi_v<double>()) * t);
    check(r, "xdif", x.residual, a.tol_xdif);
    check(r, "u_lambda", std::abs(x.u_lambda - cplx(0, -2.0 * pi_v<double>()) * t), a.tol_xdif);
  }
  if (all || a.which == "identification") {
    any = true;
    cplx t = parse_complex(a.t), x = parse_complex(a.x), kappa = parse_complex(a.kappa);
    r.params["t"] = to_json(t);
    r.params["x"] = to_json(x);
    r.params["kappa"] = to_json(kappa);
    auto id = disp::check_principal_identification(t, x, kappa);
    auto id0 = disp::check_principal_identification(t, 0.0, kappa);
    r.results["identification"] = {{"u", to_json(id.u)},
                                   {"v", to_json(id.v)},
                                   {"lhs", to_json(id.lhs)},
                                   {"rhs_published", to_json(id.rhs_published)},
                                   {"rhs_flipped", to_json(id.rhs_flipped)},
                                   {"difference_published", to_json(id.difference_published)},
                                   {"difference_flipped", to_json(id.difference_flipped)}};
    r.results["identification_x0"] = {{"lhs", to_json(id0.lhs)},
                                      {"rhs_published", to_json(id0.rhs_published)},
                                      {"li3", to_json(gw::free_energy_genus(0, t))}};
    check(r, "identification_x0", std::max(std::abs(id0.difference_published), std::abs(id0.difference_flipped)),
          a.tol_identification);
  }
  if (!any) throw DomainError("--which must be all, flows, density, hamiltonian, xdif or identification");
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conifold / Ablowitz-Ladik numerics and checks", "conifold-flows"};
  app.require_subcommand(1);

  SpecfunEval sf;
  auto* specfun = app.add_subcommand("specfun", "Bernoulli numbers and polylogarithms");
  specfun->require_subcommand(1);
  auto* sf_eval = specfun->add_subcommand("eval", "Evaluate one special value");
  sf_eval->add_option("--bernoulli", sf.bernoulli, "exact B_k");
  sf_eval->add_option("--polylog", sf.polylog, "Li_s(z) for integer s");
  sf_eval->add_option("--gen-bernoulli", sf.gen_bernoulli, "B_{r,n}(z|omega) for this n");
  sf_eval->add_option("--z", sf.z);
  sf_eval->add_option("--omega", sf.omega, "comma-separated periods");
  add_output(sf_eval, sf.out, false);

  BarnesEval be;
  auto* barnes = app.add_subcommand("barnes", "Barnes multiple zeta, gamma and sine");
  barnes->require_subcommand(1);
  auto* be_eval = barnes->add_subcommand("eval", "Evaluate a Barnes function");
  be_eval->add_option("--function", be.function, "zeta, log-gamma, log-sine, log-H, log-G");
  be_eval->add_option("--z", be.z);
  be_eval->add_option("--omega", be.omega, "comma-separated periods");
  be_eval->add_option("--s", be.s, "zeta argument");
  be_eval->add_option("--precision", be.precision, "double or quad");
  add_output(be_eval, be.out, false);

  GwEval ge;
  GwCheckDiff gd;
  GwScan gs;
  auto* gwc = app.add_subcommand("gw", "Free energies and difference equations");
  gwc->require_subcommand(1);
  auto* ge_cmd = gwc->add_subcommand("eval", "Evaluate free energies and potentials");
  ge_cmd->add_option("--t", ge.t);
  ge_cmd->add_option("--genus", ge.genus);
  ge_cmd->add_option("--lambda", ge.lambda, "lambda_check");
  ge_cmd->add_option("--max-genus", ge.max_genus);
  ge_cmd->add_option("--x", ge.x);
  ge_cmd->add_option("--kappa", ge.kappa);
  ge_cmd->add_option("--constant-map", ge.constant_map, "g,chi");
  add_output(ge_cmd, ge.out, false);
  auto* gd_cmd = gwc->add_subcommand("check-diff", "Difference equations for G and H");
  gd_cmd->add_option("--t", gd.t);
  gd_cmd->add_option("--lambda", gd.lambda, "lambda_check");
  gd_cmd->add_option("--grid", gd.grid, "random grid size instead of one point");
  gd_cmd->add_option("--seed", gd.seed);
  gd_cmd->add_option("--tol", gd.tol);
  add_output(gd_cmd, gd.out, false);
  auto* gs_cmd = gwc->add_subcommand("scan-asymptotics", "Remainder slopes of the genus expansion");
  gs_cmd->add_option("--t", gs.t);
  gs_cmd->add_option("--theta", gs.theta);
  gs_cmd->add_option("--eps-min", gs.eps_min);
  gs_cmd->add_option("--eps-max", gs.eps_max);
  gs_cmd->add_option("--count", gs.count);
  gs_cmd->add_option("--genus", gs.genus);
  gs_cmd->add_option("--tol", gs.tol);
  add_output(gs_cmd, gs.out, false);

  HirotaCheck hc;
  auto* hir = app.add_subcommand("hirota", "Hirota bilinear residuals");
  hir->require_subcommand(1);
  auto* hc_cmd = hir->add_subcommand("check", "Residuals and flow extraction");
  hc_cmd->add_option("--data", hc.data, "vacuum, background or random");
  hc_cmd->add_option("--half-width", hc.half_width);
  hc_cmd->add_option("--A", hc.A);
  hc_cmd->add_option("--B", hc.B);
  hc_cmd->add_option("--amplitude", hc.amplitude);
  hc_cmd->add_option("--seed", hc.seed);
  hc_cmd->add_option("--time-vars", hc.time_vars);
  hc_cmd->add_option("--zeta-cap", hc.zeta_cap);
  hc_cmd->add_option("--degree-cap", hc.degree_cap);
  hc_cmd->add_option("--tol", hc.tol);
  add_output(hc_cmd, hc.out, false);

  AlRun ar;
  auto* al = app.add_subcommand("al", "Ablowitz-Ladik lattice");
  al->require_subcommand(1);
  auto* ar_cmd = al->add_subcommand("run", "RK4 integration");
  ar_cmd->add_option("--N", ar.N);
  ar_cmd->add_option("--dt", ar.dt);
  ar_cmd->add_option("--steps", ar.steps);
  ar_cmd->add_option("--sample-every", ar.sample_every);
  auto* pw = ar_cmd->add_option("--planewave", ar.planewave, "A=..,B=..,k=..");
  ar_cmd->add_option("--random", ar.random, "amp=..,seed=..")->excludes(pw);
  ar_cmd->add_option("--tol-error", ar.tol_error);
  ar_cmd->add_option("--tol-drift", ar.tol_drift);
  add_output(ar_cmd, ar.out, true);

  DispRun dr;
  DispCheck dc;
  auto* dsp = app.add_subcommand("disp", "Dispersionless flows");
  dsp->require_subcommand(1);
  auto* dr_cmd = dsp->add_subcommand("run", "Evolve u, v along one flow");
  dr_cmd->add_option("--N", dr.N);
  dr_cmd->add_option("--L", dr.L);
  dr_cmd->add_option("--j", dr.j);
  dr_cmd->add_option("--direction", dr.direction, "z or ztilde");
  dr_cmd->add_option("--convention", dr.convention, "published or lattice-limit");
  dr_cmd->add_option("--u0", dr.u0);
  dr_cmd->add_option("--v0", dr.v0);
  dr_cmd->add_option("--amp", dr.amp);
  dr_cmd->add_option("--mode", dr.mode);
  dr_cmd->add_option("--v-slope", dr.v_slope);
  dr_cmd->add_option("--horizon", dr.horizon);
  dr_cmd->add_option("--dt", dr.dt);
  dr_cmd->add_option("--catastrophe", dr.catastrophe, "gradient growth factor");
  dr_cmd->add_option("--sample-every", dr.sample_every);
  add_output(dr_cmd, dr.out, true);
  auto* dc_cmd = dsp->add_subcommand("check", "Flow, Hamiltonian and identification checks");
  dc_cmd->add_option("--which", dc.which, "all, flows, density, hamiltonian, xdif, identification");
  dc_cmd->add_option("--seed", dc.seed);
  dc_cmd->add_option("--samples", dc.samples);
  dc_cmd->add_option("--zeta", dc.zeta);
  dc_cmd->add_option("--t", dc.t);
  dc_cmd->add_option("--x", dc.x);
  dc_cmd->add_option("--kappa", dc.kappa);
  dc_cmd->add_option("--lambda", dc.lambda, "lambda_check");
  dc_cmd->add_option("--tol-flows", dc.tol_flows);
  dc_cmd->add_option("--tol-density", dc.tol_density);
  dc_cmd->add_option("--tol-hamiltonian", dc.tol_hamiltonian);
  dc_cmd->add_option("--tol-xdif", dc.tol_xdif);
  dc_cmd->add_option("--tol-identification", dc.tol_identification);
  add_output(dc_cmd, dc.out, false);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }

  try {
    if (*sf_eval) return emit(specfun_eval(sf), sf.out, out);
    if (*be_eval) return emit(barnes_eval(be), be.out, out);
    if (*ge_cmd) return emit(gw_eval(ge), ge.out, out);
    if (*gd_cmd) return emit(gw_check_diff(gd), gd.out, out);
    if (*gs_cmd) return emit(gw_scan(gs), gs.out, out);
    if (*hc_cmd) return emit(hirota_check(hc), hc.out, out);
    if (*ar_cmd) return emit(al_run(ar), ar.out, out);
    if (*dr_cmd) return emit(disp_run(dr, dr.out.csv), dr.out, out);
    if (*dc_cmd) return emit(disp_check(dc), dc.out, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const TruncationOrderError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const SingularStateError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  err << "error: no command\n";
  return kUsageError;
}

}  // namespace conifold::cli
