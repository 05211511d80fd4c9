#include "checks.hpp"

#include <algorithm>
#include <ostream>
#include <random>

#include "conifold/gw.hpp"
#include "conifold/parallel.hpp"

namespace conifold::cli {

namespace {

const cplx I(0, 1);

double max_abs(const disp::GridFunction& g) {
  double m = 0;
  for (std::size_t k = 0; k < g.size(); ++k) m = std::max(m, std::abs(g.value(k)));
  return m;
}

double max_diff(const disp::GridFunction& a, const disp::GridFunction& b) {
  double m = 0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.value(k) - b.value(k)));
  return m;
}

double relative(const disp::FlowRhs& got, const disp::FlowRhs& ref) {
  double scale = std::max({max_abs(ref.du), max_abs(ref.dv), 1e-300});
  return std::max(max_diff(got.du, ref.du), max_diff(got.dv, ref.dv)) / scale;
}

disp::GridFunction negated(const disp::GridFunction& g) {
  auto p = g.periodic();
  for (auto& x : p) x = -x;
  return disp::GridFunction(g.length(), std::move(p), -g.mean_slope());
}

}  // namespace

std::vector<GridPoint> difference_grid(int count, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.25, 0.95), mod(0.05, 0.3), arg(-1.2, 1.2);
  std::vector<GridPoint> pts;
  for (int i = 0; i < count; ++i) {
    cplx t(re(rng), im(rng));
    pts.push_back({t, std::polar(mod(rng), arg(rng))});
  }
  return pts;
}

DifferenceResiduals difference_residuals(const std::vector<GridPoint>& pts) {
  std::vector<DifferenceResiduals> per(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const auto& p = pts[i];
    per[i].diff = std::abs(gw::check_difference_equation(p.lambda_check, p.t).residual);
    per[i].h_diff = std::abs(gw::check_H_difference(p.t, p.lambda_check, cplx(1.0)).residual);
    per[i].g_first_diff = std::abs(gw::check_G_first_difference(p.lambda_check, p.t).residual);
  });
  DifferenceResiduals out;
  for (const auto& r : per) {
    out.diff = std::max(out.diff, r.diff);
    out.h_diff = std::max(out.h_diff, r.h_diff);
    out.g_first_diff = std::max(out.g_first_diff, r.g_first_diff);
  }
  return out;
}

double flow_vs_lattice(const hirota::TauTriple& base, const hirota::TimeDerivatives& d,
                       const std::vector<cplx>& a, const std::vector<cplx>& b) {
  lattice::LatticeState s{a, b, 0.0};
  auto rhs = lattice::al_rhs(s);
  double worst = 0;
  for (int n = d.lo; n <= d.hi; ++n) {
    auto fl = hirota::flows_at(base, d, n);
    std::size_t k = base.index(n);
    worst = std::max({worst, std::abs(fl.a_z + fl.a_zt - rhs.da[k]), std::abs(fl.b_z + fl.b_zt - rhs.db[k])});
  }
  return worst;
}

void write_lattice_csv(std::ostream& out, const lattice::Trajectory& traj) {
  out << "step,time,site,re_a,im_a,re_b,im_b\n";
  char buf[256];
  for (const auto& s : traj.samples) {
    for (std::size_t n = 0; n < s.state.size(); ++n) {
      std::snprintf(buf, sizeof buf, "%ld,%.17g,%zu,%.17g,%.17g,%.17g,%.17g\n", s.step, s.time, n,
                    s.state.a[n].real(), s.state.a[n].imag(), s.state.b[n].real(), s.state.b[n].imag());
      out << buf;
    }
  }
}

void write_disp_csv(std::ostream& out, const disp::Fields& f) {
  out << "x,re_u,im_u,re_v,im_v\n";
  char buf[256];
  for (std::size_t k = 0; k < f.u.size(); ++k) {
    cplx u = f.u.value(k), v = f.v.value(k);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", f.u.x(k), u.real(), u.imag(),
                  v.real(), v.imag());
    out << buf;
  }
}

disp::Fields profile_fields(std::size_t n, double length, cplx u0, cplx v0, cplx amp, int mode,
                            cplx v_slope) {
  const double k = 2.0 * pi_v<double>() * mode / length;
  return {disp::GridFunction::from_function(n, length, [=](double x) { return u0 + amp * std::cos(k * x); }),
          disp::GridFunction::from_function(n, length, [=](double x) { return v0 + amp * std::sin(k * x); },
                                            v_slope)};
}

disp::Fields reference_fields() {
  const double L = 2.0 * pi_v<double>();
  return {disp::GridFunction::from_function(
              64, L, [](double x) { return cplx(1.0 + 0.2 * std::cos(x), 0.1 * std::sin(2 * x)); }),
          disp::GridFunction::from_function(
              64, L, [](double x) { return cplx(0.1 * std::sin(x), 0.05 * std::cos(x)); })};
}

FirstFlowError first_flow_closed_form_error() {
  auto f = reference_fields();
  FirstFlowError out;
  for (auto dir : {disp::Direction::z, disp::Direction::ztilde}) {
    const double s = dir == disp::Direction::z ? 1.0 : -1.0;
    auto r = disp::flow_rhs(f, 1, dir);
    std::vector<cplx> ev(f.u.size()), eu(f.u.size());
    for (std::size_t k = 0; k < f.u.size(); ++k) {
      cplx u = f.u.value(k), v = f.v.value(k);
      ev[k] = std::exp(s * v - u);
      eu[k] = std::exp(s * v) * (1.0 - std::exp(-u));
    }
    disp::GridFunction dv(f.u.length(), disp::spectral_derivative(ev, f.u.length()));
    disp::GridFunction du(f.u.length(), disp::spectral_derivative(eu, f.u.length()));
    double e = 0;
    for (std::size_t k = 0; k < f.u.size(); ++k)
      e = std::max({e, std::abs(r.dv.value(k) + I * dv.value(k)), std::abs(r.du.value(k) - s * I * du.value(k))});
    (dir == disp::Direction::z ? out.z : out.ztilde) = e;
  }
  return out;
}

double mirror_symmetry_error() {
  auto f = reference_fields();
  disp::Fields m{f.u, negated(f.v)};
  double worst = 0;
  for (int j = 1; j <= 4; ++j) {
    auto rz = disp::flow_rhs(f, j, disp::Direction::z);
    auto rt = disp::flow_rhs(m, j, disp::Direction::ztilde);
    worst = std::max({worst, max_diff(rt.du, negated(rz.du)), max_diff(rt.dv, rz.dv)});
  }
  return worst;
}

HamiltonianConsistency hamiltonian_consistency(cplx zeta) {
  auto f = reference_fields();
  HamiltonianConsistency out;
  for (auto dir : {disp::Direction::z, disp::Direction::ztilde}) {
    auto which = dir == disp::Direction::z ? disp::Density::h : disp::Density::htilde;
    auto ham = disp::hamiltonian_flow(zeta, f, which);
    auto closed = disp::delta_flow_closed_form(zeta, f, dir);
    auto ll = disp::generating_flow(f, zeta, dir, disp::FlowConvention::lattice_limit, 40);
    auto pub = disp::generating_flow(f, zeta, dir, disp::FlowConvention::published, 40);
    out.vs_closed_form = std::max(out.vs_closed_form, relative(ham, closed));
    out.vs_lattice_limit = std::max(out.vs_lattice_limit, relative(ham, ll));
    out.vs_published = std::max(out.vs_published, relative(ham, pub));
  }
  return out;
}

XdifChain xdif_chain(cplx t, cplx lambda_check) {
  auto varpi = disp::classical_varpi(t, 1.0);
  XdifChain out;
  out.u_lambda = -disp::second_difference(varpi, 0.37, lambda_check);
  cplx r = disp::r_from_u(cplx(0, -2.0 * pi_v<double>()) * t);
  auto grid = disp::GridFunction::constant(16, 1.0, r);
  out.residual = disp::check_xdif(varpi, grid, lambda_check).max_residual;
  return out;
}

}  // namespace conifold::cli
