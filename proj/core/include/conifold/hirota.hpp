#pragma once

#include <span>
#include <vector>

#include "conifold/series.hpp"

namespace conifold::hirota {

enum class HirotaEquation { a, b, c, d, e, f };

// Per-site (sigma, rho, tau) on sites n = -W..W; Lambda is n -> n+1.
struct TauTriple {
  int half_width = 0;
  SeriesLayout layout;
  std::vector<TruncatedSeries> sigma, rho, tau;

  int lo() const { return -half_width; }
  int hi() const { return half_width; }
  std::size_t index(int n) const { return static_cast<std::size_t>(n + half_width); }
  const TruncatedSeries& sigma_at(int n) const { return sigma[index(n)]; }
  const TruncatedSeries& rho_at(int n) const { return rho[index(n)]; }
  const TruncatedSeries& tau_at(int n) const { return tau[index(n)]; }
};

TauTriple vacuum_triple(int half_width, const SeriesLayout& layout);

// tau(n) = c^{n^2/2}, sigma = A tau, rho = B tau with c = 1 - AB.
TauTriple constant_background_triple(int half_width, cplx A, cplx B, const SeriesLayout& layout);

// Numeric lattice data on 2W+1 sites. tau is fixed by tau(-W) = tau(-W+1) = 1 and
// tau(n+1) tau(n-1) = tau(n)^2 (1 - a_n b_n).
TauTriple triple_from_lattice(std::span<const cplx> a, std::span<const cplx> b,
                              const SeriesLayout& layout);

struct SiteDerivatives {
  cplx sigma, rho, tau;
};

// d/dz_1 and d/dzt_1 of the constant terms, valid on sites lo..hi.
struct TimeDerivatives {
  int lo = 0, hi = -1;
  cplx scale;
  std::vector<SiteDerivatives> dz, dzt;
  const SiteDerivatives& z_at(int n) const { return dz[n - lo]; }
  const SiteDerivatives& zt_at(int n) const { return dzt[n - lo]; }
};

// Solves the zeta^1 coefficients of the six equations for the first
// derivatives. Gauges: tau_z/tau vanishes at the left edge, tau_zt/tau at the right.
TimeDerivatives extract_time_derivatives(const TauTriple& base, cplx scale = cplx(0, 1));

// d/dz_1 a, d/dz_1 b (and zt) at site n from the extracted data.
struct FlowValues {
  cplx a_z, b_z, a_zt, b_zt;
};
FlowValues flows_at(const TauTriple& base, const TimeDerivatives& d, int n);

// Linear Taylor model sigma + sigma_z z_1 + sigma_zt zt_1 on the derivative range.
TauTriple first_order_triple(const TauTriple& base, const TimeDerivatives& d);

// Constant-term triple moved by h along z_1 with the first-order Taylor step.
TauTriple advance_z1(const TauTriple& base, const TimeDerivatives& d, cplx h);

struct SiteResidual {
  int site;
  TruncatedSeries value;
};

// LHS - RHS of the chosen equation, interior sites only, zeta order <= zeta_order.
std::vector<SiteResidual> hirota_residual(const TauTriple& triple, HirotaEquation eq,
                                          int zeta_order, cplx scale = cplx(0, 1));

// Largest coefficient over sites, restricted to weight <= max_weight.
double max_residual(const std::vector<SiteResidual>& r, int max_weight);

const char* equation_name(HirotaEquation eq);

}  // namespace conifold::hirota
