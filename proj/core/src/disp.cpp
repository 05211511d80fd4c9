#include "conifold/disp.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>

#include "conifold/errors.hpp"
#include "conifold/gw.hpp"
#include "conifold/parallel.hpp"

namespace conifold::disp {

namespace {

const cplx I(0, 1);

Jet operator+(const Jet& a, const Jet& b) { return {a.value + b.value, a.du + b.du, a.dv + b.dv}; }
Jet operator-(const Jet& a, const Jet& b) { return {a.value - b.value, a.du - b.du, a.dv - b.dv}; }
Jet operator*(const Jet& a, const Jet& b) {
  return {a.value * b.value, a.du * b.value + a.value * b.du, a.dv * b.value + a.value * b.dv};
}
Jet operator*(cplx c, const Jet& a) { return {c * a.value, c * a.du, c * a.dv}; }

using JetSeries = std::vector<Jet>;

// sqrt of a series with constant term exactly 1
JetSeries sqrt1(const JetSeries& d) {
  JetSeries s(d.size());
  s[0] = {1.0, 0.0, 0.0};
  for (std::size_t n = 1; n < d.size(); ++n) {
    Jet acc = d[n];
    for (std::size_t k = 1; k < n; ++k) acc = acc - s[k] * s[n - k];
    s[n] = 0.5 * acc;
  }
  return s;
}

// log of a series with constant term exactly 1
JetSeries log1(const JetSeries& a) {
  JetSeries l(a.size());
  for (std::size_t n = 1; n < a.size(); ++n) {
    Jet acc = static_cast<double>(n) * a[n];
    for (std::size_t k = 1; k < n; ++k) acc = acc - static_cast<double>(k) * (l[k] * a[n - k]);
    l[n] = (1.0 / static_cast<double>(n)) * acc;
  }
  return l;
}

void require_fields(const Fields& f) {
  if (f.u.size() == 0 || f.u.size() != f.v.size() || f.u.length() != f.v.length())
    throw DomainError("disp: u and v must share a nonempty grid");
}

void guard_point(cplx u, std::size_t k) {
  cplx y = std::exp(-u);
  if (std::abs(y) < 1e-300 || std::abs(1.0 - y) < 1e-12) {
    std::ostringstream os;
    os << "disp: branch guard e^{-u} in {0, 1} violated at grid point " << k;
    throw BranchError(os.str());
  }
}

double sign_u(Direction dir, FlowConvention conv) {
  double s = dir == Direction::z ? 1.0 : -1.0;
  return conv == FlowConvention::published ? s : -s;
}

struct Plan {
  fftw_plan forward, backward;
};

std::mutex g_plan_mutex;

const Plan& plan_for(std::size_t n) {
  static std::map<std::size_t, std::unique_ptr<Plan>> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& slot = cache[n];
  if (!slot) {
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    slot = std::make_unique<Plan>();
    int ni = static_cast<int>(n);
    slot->forward = fftw_plan_dft_1d(ni, buf, out, FFTW_FORWARD, FFTW_ESTIMATE);
    slot->backward = fftw_plan_dft_1d(ni, buf, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(buf);
    fftw_free(out);
  }
  return *slot;
}

// d/dx F(u(x), v(x)) = F_u u_x + F_v v_x
GridFunction chain(const std::vector<Jet>& F, const std::vector<cplx>& ux,
                   const std::vector<cplx>& vx, double length, cplx factor) {
  std::vector<cplx> out(F.size());
  for (std::size_t k = 0; k < F.size(); ++k) out[k] = factor * (F[k].du * ux[k] + F[k].dv * vx[k]);
  return GridFunction(length, std::move(out));
}

GridFunction spectral_of(const std::vector<cplx>& vals, double length, cplx factor) {
  auto d = spectral_derivative(vals, length);
  for (auto& x : d) x *= factor;
  return GridFunction(length, std::move(d));
}

struct Discriminant {
  cplx E, S;
};

Discriminant discriminant(cplx zeta, cplx u, cplx v, bool tilde) {
  cplx E = std::exp(tilde ? -v : v);
  cplx p = zeta * E;
  cplx S = std::sqrt((1.0 + p) * (1.0 + p) - 4.0 * p * std::exp(-u));
  if (std::abs(S) < 1e-12) throw BranchError("disp: square-root argument vanishes");
  return {E, S};
}

}  // namespace

GridFunction::GridFunction(double length, std::vector<cplx> periodic, cplx mean_slope)
    : length_(length), slope_(mean_slope), periodic_(std::move(periodic)) {
  if (!(length > 0)) throw DomainError("GridFunction: period must be positive");
}

GridFunction GridFunction::from_function(std::size_t n, double length,
                                         const std::function<cplx(double)>& periodic,
                                         cplx mean_slope) {
  std::vector<cplx> p(n);
  for (std::size_t k = 0; k < n; ++k)
    p[k] = periodic(length * static_cast<double>(k) / static_cast<double>(n));
  return GridFunction(length, std::move(p), mean_slope);
}

GridFunction GridFunction::constant(std::size_t n, double length, cplx c) {
  return GridFunction(length, std::vector<cplx>(n, c));
}

std::vector<cplx> GridFunction::values() const {
  std::vector<cplx> out(size());
  for (std::size_t k = 0; k < size(); ++k) out[k] = value(k);
  return out;
}

GridFunction GridFunction::derivative() const {
  auto d = spectral_derivative(periodic_, length_);
  for (auto& x : d) x += slope_;
  return GridFunction(length_, std::move(d));
}

std::vector<cplx> spectral_derivative(const std::vector<cplx>& p, double length) {
  const std::size_t n = p.size();
  if (n == 0) return {};
  const Plan& plan = plan_for(n);
  auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  for (std::size_t k = 0; k < n; ++k) {
    in[k][0] = p[k].real();
    in[k][1] = p[k].imag();
  }
  fftw_execute_dft(plan.forward, in, out);
  const double base = 2.0 * pi_v<double>() / length;
  const long ln = static_cast<long>(n);
  for (long m = 0; m < ln; ++m) {
    long freq = m <= ln / 2 ? m : m - ln;
    if (ln % 2 == 0 && m == ln / 2) freq = 0;  // Nyquist mode has no odd derivative
    cplx c(out[m][0], out[m][1]);
    c *= I * (base * static_cast<double>(freq)) / static_cast<double>(n);
    in[m][0] = c.real();
    in[m][1] = c.imag();
  }
  fftw_execute_dft(plan.backward, in, out);
  std::vector<cplx> d(n);
  for (std::size_t k = 0; k < n; ++k) d[k] = cplx(out[k][0], out[k][1]);
  fftw_free(in);
  fftw_free(out);
  return d;
}

PointCoefficients generating_coefficients(cplx u, cplx v, Direction dir, int order) {
  if (order < 0) throw TruncationOrderError("generating_coefficients: negative order");
  const std::size_t n = static_cast<std::size_t>(order) + 1;
  const bool tilde = dir == Direction::ztilde;
  const cplx ev = std::exp(tilde ? -v : v);
  const cplx y = std::exp(-u);
  const Jet E{ev, 0.0, tilde ? -ev : ev};
  const Jet Y{y, -y, 0.0};
  const Jet one{1.0, 0.0, 0.0};

  // (1 + zeta E)^2 - 4 zeta E Y = 1 + zeta (2E - 4EY) + zeta^2 E^2
  JetSeries disc(std::max<std::size_t>(n, 3));
  disc[0] = one;
  disc[1] = 2.0 * E - 4.0 * (E * Y);
  disc[2] = E * E;
  disc.resize(std::max<std::size_t>(n, 1));
  JetSeries S = sqrt1(disc);

  JetSeries pa(n), pb(n);
  pa[0] = one;
  pb[0] = one;
  for (std::size_t k = 1; k < n; ++k) {
    pa[k] = 0.5 * S[k];
    pb[k] = 0.5 * S[k];
  }
  if (n > 1) {
    pa[1] = 0.5 * (S[1] - E);
    pb[1] = 0.5 * (S[1] + E);
  }
  return {log1(pa), log1(pb)};
}

FlowRhs flow_rhs(const Fields& f, int j, Direction dir, FlowConvention conv) {
  require_fields(f);
  if (j < 1) throw TruncationOrderError("flow_rhs: flow index must be >= 1");
  const std::size_t n = f.u.size();
  auto u = f.u.values();
  auto v = f.v.values();
  auto ux = f.u.derivative().values();
  auto vx = f.v.derivative().values();
  std::vector<Jet> ca(n), cb(n);
  for (std::size_t k = 0; k < n; ++k) {
    guard_point(u[k], k);
    auto c = generating_coefficients(u[k], v[k], dir, j);
    ca[k] = c.log_pa[j];
    cb[k] = c.log_pb[j];
  }
  const double jd = static_cast<double>(j);
  FlowRhs out;
  out.dv = chain(ca, ux, vx, f.u.length(), I * jd);
  out.du = chain(cb, ux, vx, f.u.length(), sign_u(dir, conv) * I * jd);
  return out;
}

FlowRhs generating_flow(const Fields& f, cplx zeta0, Direction dir, FlowConvention conv,
                        int order) {
  require_fields(f);
  const std::size_t n = f.u.size();
  auto u = f.u.values();
  auto v = f.v.values();
  auto ux = f.u.derivative().values();
  auto vx = f.v.derivative().values();
  std::vector<Jet> ga(n), gb(n);
  for (std::size_t k = 0; k < n; ++k) {
    guard_point(u[k], k);
    auto c = generating_coefficients(u[k], v[k], dir, order);
    cplx p = 1.0;
    for (int j = 1; j <= order; ++j) {
      p *= zeta0;
      ga[k] = ga[k] + (static_cast<double>(j) * p) * c.log_pa[j];
      gb[k] = gb[k] + (static_cast<double>(j) * p) * c.log_pb[j];
    }
  }
  FlowRhs out;
  out.dv = chain(ga, ux, vx, f.u.length(), I);
  out.du = chain(gb, ux, vx, f.u.length(), sign_u(dir, conv) * I);
  return out;
}

GridFunction potential_gradient_rhs(const Fields& f, int j, Direction dir) {
  require_fields(f);
  if (j < 1) throw TruncationOrderError("potential_gradient_rhs: flow index must be >= 1");
  const std::size_t n = f.u.size();
  auto u = f.u.values();
  auto v = f.v.values();
  // u = -d_x w with w = d_x varpi, and d_z u = -i d_x log P_b (zt: +i d_x log P_d)
  const double s = dir == Direction::z ? 1.0 : -1.0;
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    guard_point(u[k], k);
    auto c = generating_coefficients(u[k], v[k], dir, j);
    out[k] = s * I * static_cast<double>(j) * c.log_pb[j].value;
  }
  return GridFunction(f.u.length(), std::move(out));
}

cplx hamiltonian_density(cplx zeta0, cplx u, cplx v, Density which) {
  auto d = discriminant(zeta0, u, v, which == Density::htilde);
  cplx w = (1.0 + zeta0 * d.E) / d.S;
  if (std::abs(1.0 - w * w) < 1e-12) throw BranchError("hamiltonian_density: atanh argument is +-1");
  return -I * 0.5 * std::log((1.0 + w) / (1.0 - w));
}

GridFunction hamiltonian_density(cplx zeta0, const Fields& f, Density which) {
  require_fields(f);
  auto u = f.u.values();
  auto v = f.v.values();
  std::vector<cplx> out(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = hamiltonian_density(zeta0, u[k], v[k], which);
  return GridFunction(f.u.length(), std::move(out));
}

FlowRhs delta_flow_closed_form(cplx zeta0, const Fields& f, Direction dir) {
  require_fields(f);
  const bool tilde = dir == Direction::ztilde;
  auto u = f.u.values();
  auto v = f.v.values();
  std::vector<cplx> pv(u.size()), pu(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    auto d = discriminant(zeta0, u[k], v[k], tilde);
    pv[k] = (1.0 + zeta0 * d.E) / (2.0 * d.S);
    pu[k] = (1.0 - zeta0 * d.E) / (2.0 * d.S);
  }
  FlowRhs out;
  out.dv = spectral_of(pv, f.u.length(), -I);
  out.du = spectral_of(pu, f.u.length(), tilde ? -I : I);
  return out;
}

FlowRhs hamiltonian_flow(cplx zeta0, const Fields& f, Density which, double fd_step,
                         const PoissonMatrix& eta) {
  require_fields(f);
  auto u = f.u.values();
  auto v = f.v.values();
  const std::size_t n = u.size();
  const double h = fd_step;
  auto d5 = [&](const std::function<cplx(double)>& g) {
    return (g(-2 * h) - 8.0 * g(-h) + 8.0 * g(h) - g(2 * h)) / (12.0 * h);
  };
  std::vector<cplx> hv(n), hu(n);  // dh/dv, dh/du
  for (std::size_t k = 0; k < n; ++k) {
    hv[k] = d5([&](double e) { return hamiltonian_density(zeta0, u[k], v[k] + e, which); });
    hu[k] = d5([&](double e) { return hamiltonian_density(zeta0, u[k] + e, v[k], which); });
  }
  auto dhv = spectral_derivative(hv, f.u.length());
  auto dhu = spectral_derivative(hu, f.u.length());
  // (w^1, w^2) = (v, u)
  std::vector<cplx> dv(n), du(n);
  for (std::size_t k = 0; k < n; ++k) {
    dv[k] = eta[0][0] * dhv[k] + eta[0][1] * dhu[k];
    du[k] = eta[1][0] * dhv[k] + eta[1][1] * dhu[k];
  }
  return {GridFunction(f.u.length(), std::move(du)), GridFunction(f.u.length(), std::move(dv))};
}

std::vector<DensitySample> random_density_samples(int count, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ure(0.5, 2.0), uim(-0.5, 0.5), vre(-0.5, 0.5),
      vim(-1.0, 1.0), zr(0.05, 0.3), ph(-pi_v<double>(), pi_v<double>());
  std::vector<DensitySample> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    cplx u(ure(rng), uim(rng));
    cplx v(vre(rng), vim(rng));
    cplx zeta = std::polar(zr(rng), ph(rng));
    out.push_back({u, v, zeta});
  }
  return out;
}

SecondDerivatives density_second_derivatives(const DensitySample& s, Density which, double step) {
  auto d2 = [&](const std::function<cplx(double)>& g, double h) {
    return (-g(2 * h) + 16.0 * g(h) - 30.0 * g(0) + 16.0 * g(-h) - g(-2 * h)) / (12.0 * h * h);
  };
  auto gu = [&](double e) { return hamiltonian_density(s.zeta, s.u + e, s.v, which); };
  auto gv = [&](double e) { return hamiltonian_density(s.zeta, s.u, s.v + e, which); };
  cplx uu1 = d2(gu, step), uu2 = d2(gu, step / 2);
  cplx vv1 = d2(gv, step), vv2 = d2(gv, step / 2);
  // both rules are O(h^4): Richardson with factor 16
  cplx uu = uu2 + (uu2 - uu1) / 15.0;
  cplx vv = vv2 + (vv2 - vv1) / 15.0;
  double err = std::max(std::abs(uu2 - uu1), std::abs(vv2 - vv1)) / 15.0;
  return {uu, vv, err};
}

DensityConstraintReport check_density_constraint(Density which,
                                                 std::span<const DensitySample> samples,
                                                 const std::function<cplx(cplx)>& fppp,
                                                 double step) {
  DensityConstraintReport rep;
  rep.relative.resize(samples.size());
  rep.ratio_real.resize(samples.size());
  std::vector<double> flipped(samples.size()), fd(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const auto& s = samples[i];
    auto d = density_second_derivatives(s, which, step);
    cplx f3 = fppp(s.u);
    double scale = std::max({std::abs(d.guu), std::abs(f3 * d.gvv), 1e-300});
    rep.relative[i] = std::abs(d.guu - f3 * d.gvv) / scale;
    flipped[i] = std::abs(d.guu + f3 * d.gvv) / scale;
    rep.ratio_real[i] = (d.guu / d.gvv).real();
    fd[i] = d.error_estimate / scale;
  });
  for (std::size_t i = 0; i < samples.size(); ++i) {
    rep.max_relative = std::max(rep.max_relative, rep.relative[i]);
    rep.max_relative_flipped = std::max(rep.max_relative_flipped, flipped[i]);
    rep.max_fd_error = std::max(rep.max_fd_error, fd[i]);
  }
  return rep;
}

namespace {

double max_abs(const std::vector<cplx>& v) {
  double m = 0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

Fields add_scaled(const Fields& f, double h, const FlowRhs& r) {
  Fields out = f;
  for (std::size_t k = 0; k < f.u.size(); ++k) {
    out.u.periodic()[k] += h * r.du.periodic()[k];
    out.v.periodic()[k] += h * r.dv.periodic()[k];
  }
  return out;
}

}  // namespace

EvolveResult evolve_dispersionless(const Fields& f, int j, Direction dir, const EvolveOptions& opt) {
  require_fields(f);
  if (!(opt.dt > 0) || opt.horizon < 0) throw DomainError("evolve: need dt > 0 and horizon >= 0");
  EvolveResult res;
  res.fields = f;
  res.initial_gradient = max_abs(f.u.derivative().values());
  res.final_gradient = res.initial_gradient;
  auto rhs = [&](const Fields& s) { return flow_rhs(s, j, dir, opt.convention); };
  const long steps = static_cast<long>(std::ceil(opt.horizon / opt.dt - 1e-9));
  const double dt = steps > 0 ? opt.horizon / static_cast<double>(steps) : 0.0;
  if (opt.sample_every > 0) res.samples.push_back({0.0, res.fields});
  for (long step = 1; step <= steps; ++step) {
    const Fields& s = res.fields;
    FlowRhs k1 = rhs(s);
    FlowRhs k2 = rhs(add_scaled(s, dt / 2, k1));
    FlowRhs k3 = rhs(add_scaled(s, dt / 2, k2));
    FlowRhs k4 = rhs(add_scaled(s, dt, k3));
    Fields next = s;
    for (std::size_t k = 0; k < s.u.size(); ++k) {
      next.u.periodic()[k] += dt / 6 * (k1.du.periodic()[k] + 2.0 * k2.du.periodic()[k] +
                                        2.0 * k3.du.periodic()[k] + k4.du.periodic()[k]);
      next.v.periodic()[k] += dt / 6 * (k1.dv.periodic()[k] + 2.0 * k2.dv.periodic()[k] +
                                        2.0 * k3.dv.periodic()[k] + k4.dv.periodic()[k]);
    }
    res.fields = std::move(next);
    res.time = dt * static_cast<double>(step);
    res.steps = step;
    res.final_gradient = max_abs(res.fields.u.derivative().values());
    if (res.initial_gradient > 0 &&
        res.final_gradient > opt.catastrophe_factor * res.initial_gradient) {
      std::ostringstream os;
      os << "gradient catastrophe: max|u_x| grew from " << res.initial_gradient << " to "
         << res.final_gradient << " at t = " << res.time;
      throw CatastropheError(os.str(), res.time);
    }
    if (opt.sample_every > 0 && (step % opt.sample_every == 0 || step == steps))
      res.samples.push_back({res.time, res.fields});
  }
  return res;
}

std::array<std::array<cplx, 2>, 2> linearized_matrix(cplx u0, cplx v0, Direction dir,
                                                     FlowConvention conv) {
  // z: v_t = -i d_x e^{v-u},  u_t = s i d_x (e^v (1 - e^{-u}))
  // zt: v_t = -i d_x e^{-v-u}, u_t = s' i d_x (e^{-v} (1 - e^{-u}))
  const double sv = dir == Direction::z ? 1.0 : -1.0;
  const cplx E = std::exp(sv * v0);
  const cplx alpha = E * std::exp(-u0);
  const cplx beta = E * (1.0 - std::exp(-u0));
  const double su = sign_u(dir, conv);
  // rows (dv, du), columns (d_x dv, d_x du)
  return {{{-I * sv * alpha, I * alpha}, {su * I * sv * beta, su * I * alpha}}};
}

cplx second_difference(const Potential& varpi, cplx x, cplx lambda_check) {
  return (varpi(x + lambda_check) - 2.0 * varpi(x) + varpi(x - lambda_check)) /
         (lambda_check * lambda_check);
}

XdifReport check_xdif(const Potential& varpi, const GridFunction& r_lambda, cplx lambda_check) {
  XdifReport rep;
  auto r = r_lambda.values();
  rep.lhs.resize(r.size());
  rep.rhs.resize(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    rep.lhs[k] = conifold::log1p(cplx(-std::exp(2.0 * r[k])));
    rep.rhs[k] = second_difference(varpi, cplx(r_lambda.x(k)), lambda_check);
    rep.max_residual = std::max(rep.max_residual, std::abs(rep.lhs[k] - rep.rhs[k]));
  }
  return rep;
}

Potential classical_varpi(cplx t, cplx kappa) {
  if (kappa == cplx(0)) throw DomainError("classical_varpi: kappa must be nonzero");
  const double two_pi = 2.0 * pi_v<double>();
  return [=](cplx x) { return two_pi * I * x * x * t / (2.0 * kappa * kappa); };
}

cplx r_from_u(cplx u) { return 0.5 * conifold::log1p(cplx(-std::exp(-u))); }

IdentificationReport check_principal_identification(cplx t, cplx x, cplx kappa) {
  if (kappa == cplx(0)) throw DomainError("check_principal_identification: kappa must be nonzero");
  const double two_pi = 2.0 * pi_v<double>();
  IdentificationReport rep;
  cplx F0 = gw::free_energy_genus(0, t);
  rep.u = -two_pi * I * t;
  rep.v = two_pi * I * x / kappa;
  rep.lhs = std::pow(two_pi, 3) * I * x * x * t / (2.0 * kappa * kappa) + F0;
  cplx quad_term = rep.u * rep.v * rep.v / 2.0;
  rep.rhs_published = -quad_term + F0;
  rep.rhs_flipped = quad_term + F0;
  rep.difference_published = rep.lhs - rep.rhs_published;
  rep.difference_flipped = rep.lhs - rep.rhs_flipped;
  return rep;
}

}  // namespace conifold::disp
