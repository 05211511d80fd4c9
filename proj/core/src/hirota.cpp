#include "conifold/hirota.hpp"

#include <cmath>
#include <sstream>

#include "conifold/errors.hpp"
#include "conifold/parallel.hpp"

namespace conifold::hirota {

namespace {

TauTriple blank(int half_width, const SeriesLayout& layout) {
  if (half_width < 1) throw TruncationOrderError("tau triple: window must have W >= 1");
  layout.validate();
  TauTriple t;
  t.half_width = half_width;
  t.layout = layout;
  std::size_t n = static_cast<std::size_t>(2 * half_width + 1);
  t.sigma.assign(n, TruncatedSeries(layout));
  t.rho.assign(n, TruncatedSeries(layout));
  t.tau.assign(n, TruncatedSeries(layout));
  return t;
}

cplx value(const std::vector<TruncatedSeries>& v, const TauTriple& t, int n) {
  return v[t.index(n)].constant_term();
}

void require_tau(cplx tau, int n) {
  if (tau == cplx(0)) {
    std::ostringstream os;
    os << "tau has a vanishing constant term at site " << n;
    throw SingularStateError(os.str());
  }
}

}  // namespace

TauTriple vacuum_triple(int half_width, const SeriesLayout& layout) {
  TauTriple t = blank(half_width, layout);
  for (auto& s : t.tau) s = TruncatedSeries::constant(layout, 1.0);
  return t;
}

TauTriple constant_background_triple(int half_width, cplx A, cplx B, const SeriesLayout& layout) {
  TauTriple t = blank(half_width, layout);
  cplx c = 1.0 - A * B;
  if (c == cplx(0)) throw SingularStateError("constant background: 1 - AB = 0");
  cplx logc = std::log(c);
  for (int n = t.lo(); n <= t.hi(); ++n) {
    cplx tau = std::exp(0.5 * static_cast<double>(n) * static_cast<double>(n) * logc);
    t.tau[t.index(n)] = TruncatedSeries::constant(layout, tau);
    t.sigma[t.index(n)] = TruncatedSeries::constant(layout, A * tau);
    t.rho[t.index(n)] = TruncatedSeries::constant(layout, B * tau);
  }
  return t;
}

TauTriple triple_from_lattice(std::span<const cplx> a, std::span<const cplx> b,
                              const SeriesLayout& layout) {
  if (a.size() != b.size() || a.size() % 2 == 0 || a.size() < 3)
    throw TruncationOrderError("triple_from_lattice: need an odd number >= 3 of sites");
  int W = static_cast<int>(a.size() / 2);
  TauTriple t = blank(W, layout);
  std::vector<cplx> tau(a.size());
  tau[0] = 1.0;
  tau[1] = 1.0;
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    cplx g = 1.0 - a[i] * b[i];
    if (g == cplx(0)) throw SingularStateError("triple_from_lattice: 1 - ab = 0");
    tau[i + 1] = tau[i] * tau[i] * g / tau[i - 1];
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    t.tau[i] = TruncatedSeries::constant(layout, tau[i]);
    t.sigma[i] = TruncatedSeries::constant(layout, a[i] * tau[i]);
    t.rho[i] = TruncatedSeries::constant(layout, b[i] * tau[i]);
  }
  return t;
}

TimeDerivatives extract_time_derivatives(const TauTriple& base, cplx scale) {
  if (base.half_width < 2) throw TruncationOrderError("extract_time_derivatives: need W >= 2");
  const int lo = base.lo() + 1;
  const int hi = base.hi() - 1;
  auto sig = [&](int n) { return value(base.sigma, base, n); };
  auto rho = [&](int n) { return value(base.rho, base, n); };
  auto tau = [&](int n) { return value(base.tau, base, n); };
  for (int n = base.lo(); n <= base.hi(); ++n) require_tau(tau(n), n);
  auto a = [&](int n) { return sig(n) / tau(n); };
  auto b = [&](int n) { return rho(n) / tau(n); };

  TimeDerivatives d;
  d.lo = lo;
  d.hi = hi;
  d.scale = scale;
  d.dz.resize(hi - lo + 1);
  d.dzt.resize(hi - lo + 1);

  // theta = tau_z / tau:      theta(n+1) = theta(n) - b(n) a(n+1) / s
  // theta~ = tau_zt / tau:    theta~(n-1) = theta~(n) - b(n) a(n-1) / s
  std::vector<cplx> theta(hi - lo + 1), theta_t(hi - lo + 1);
  theta[0] = 0.0;
  for (int n = lo; n < hi; ++n) theta[n + 1 - lo] = theta[n - lo] - b(n) * a(n + 1) / scale;
  theta_t[hi - lo] = 0.0;
  for (int n = hi; n > lo; --n) theta_t[n - 1 - lo] = theta_t[n - lo] - b(n) * a(n - 1) / scale;

  for (int n = lo; n <= hi; ++n) {
    const cplx th = theta[n - lo];
    const cplx tt = theta_t[n - lo];
    SiteDerivatives z;
    z.tau = th * tau(n);
    z.sigma = sig(n) * th + tau(n - 1) * sig(n + 1) / (scale * tau(n));
    z.rho = rho(n) * th - rho(n - 1) * tau(n + 1) / (scale * tau(n));
    SiteDerivatives zt;
    zt.tau = tt * tau(n);
    zt.sigma = sig(n) * tt + tau(n + 1) * sig(n - 1) / (scale * tau(n));
    zt.rho = rho(n) * tt - rho(n + 1) * tau(n - 1) / (scale * tau(n));
    d.dz[n - lo] = z;
    d.dzt[n - lo] = zt;
  }
  return d;
}

FlowValues flows_at(const TauTriple& base, const TimeDerivatives& d, int n) {
  const cplx s = base.sigma_at(n).constant_term();
  const cplx r = base.rho_at(n).constant_term();
  const cplx t = base.tau_at(n).constant_term();
  const auto& z = d.z_at(n);
  const auto& zt = d.zt_at(n);
  const cplx t2 = t * t;
  return {(z.sigma * t - s * z.tau) / t2, (z.rho * t - r * z.tau) / t2,
          (zt.sigma * t - s * zt.tau) / t2, (zt.rho * t - r * zt.tau) / t2};
}

TauTriple first_order_triple(const TauTriple& base, const TimeDerivatives& d) {
  const int W = (d.hi - d.lo) / 2;
  if (d.lo != -W || d.hi != W) throw TruncationOrderError("first_order_triple: asymmetric range");
  TauTriple t = blank(W, base.layout);
  const auto& L = base.layout;
  auto z1 = TruncatedSeries::variable(L, L.z(1));
  auto zt1 = TruncatedSeries::variable(L, L.zt(1));
  for (int n = -W; n <= W; ++n) {
    const auto& dz = d.z_at(n);
    const auto& dzt = d.zt_at(n);
    t.sigma[t.index(n)] = base.sigma_at(n) + z1 * dz.sigma + zt1 * dzt.sigma;
    t.rho[t.index(n)] = base.rho_at(n) + z1 * dz.rho + zt1 * dzt.rho;
    t.tau[t.index(n)] = base.tau_at(n) + z1 * dz.tau + zt1 * dzt.tau;
  }
  return t;
}

TauTriple advance_z1(const TauTriple& base, const TimeDerivatives& d, cplx h) {
  const int W = (d.hi - d.lo) / 2;
  TauTriple t = blank(W, base.layout);
  const auto& L = base.layout;
  for (int n = -W; n <= W; ++n) {
    const auto& dz = d.z_at(n);
    t.sigma[t.index(n)] = TruncatedSeries::constant(L, base.sigma_at(n).constant_term() + h * dz.sigma);
    t.rho[t.index(n)] = TruncatedSeries::constant(L, base.rho_at(n).constant_term() + h * dz.rho);
    t.tau[t.index(n)] = TruncatedSeries::constant(L, base.tau_at(n).constant_term() + h * dz.tau);
  }
  return t;
}

std::vector<SiteResidual> hirota_residual(const TauTriple& triple, HirotaEquation eq,
                                          int zeta_order, cplx scale) {
  if (triple.half_width < 1)
    throw TruncationOrderError("hirota_residual: window too small for the shift operator");
  SeriesLayout L = triple.layout;
  if (zeta_order > L.zeta_cap)
    throw TruncationOrderError("hirota_residual: zeta order exceeds the zeta cap");
  const bool tilde = eq == HirotaEquation::d || eq == HirotaEquation::e || eq == HirotaEquation::f;
  const Direction dir = tilde ? Direction::ztilde : Direction::z;
  const int lo = triple.lo() + 1;
  const int hi = triple.hi() - 1;
  const auto zeta = TruncatedSeries::variable(L, SeriesLayout::zeta());

  std::vector<SiteResidual> out(hi >= lo ? hi - lo + 1 : 0);
  parallel_for(out.size(), [&](std::size_t i) {
    const int n = lo + static_cast<int>(i);
    auto S = [&](const TruncatedSeries& f) { return miwa_shift(f, dir, scale); };
    const auto& tau = triple.tau_at(n);
    const auto& sig = triple.sigma_at(n);
    const auto& rho = triple.rho_at(n);
    const int fwd = tilde ? n - 1 : n + 1;  // the shifted neighbour
    const int back = tilde ? n + 1 : n - 1;
    TruncatedSeries res(L);
    switch (eq) {
      case HirotaEquation::a:
      case HirotaEquation::d:
        res = tau * S(tau) - rho * S(sig) - triple.tau_at(back) * S(triple.tau_at(fwd));
        break;
      case HirotaEquation::b:
      case HirotaEquation::e:
        res = tau * S(sig) - sig * S(tau) - zeta * triple.tau_at(back) * S(triple.sigma_at(fwd));
        break;
      case HirotaEquation::c:
      case HirotaEquation::f:
        res = rho * S(tau) - tau * S(rho) - zeta * triple.rho_at(back) * S(triple.tau_at(fwd));
        break;
    }
    TruncatedSeries kept(L);
    for (const auto& [e, c] : res.terms())
      if (e[0] <= zeta_order) kept.add_term(e, c);
    out[i] = {n, std::move(kept)};
  });
  return out;
}

double max_residual(const std::vector<SiteResidual>& r, int max_weight) {
  double m = 0;
  for (const auto& s : r) m = std::max(m, s.value.max_abs(max_weight));
  return m;
}

const char* equation_name(HirotaEquation eq) {
  switch (eq) {
    case HirotaEquation::a: return "a";
    case HirotaEquation::b: return "b";
    case HirotaEquation::c: return "c";
    case HirotaEquation::d: return "d";
    case HirotaEquation::e: return "e";
    case HirotaEquation::f: return "f";
  }
  return "?";
}

}  // namespace conifold::hirota
