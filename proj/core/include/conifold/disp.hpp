#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "conifold/numeric.hpp"

namespace conifold::disp {

enum class Direction { z, ztilde };

// published: the u-equations exactly as printed, D_z u = +i d_x log P_b and
//   D_zt u = -i d_x log P_d.
// lattice_limit: the opposite sign on both u-equations. This is the sign the
//   lattice AL flows produce in the small-spacing limit, and the one for which
//   the Hamiltonian densities h, h~ generate the flows.
// The v-equations agree in both.
enum class FlowConvention { published, lattice_limit };

enum class Density { h, htilde };

// Samples of slope*x + p(x) at x_k = k L / N, with p periodic on [0, L).
class GridFunction {
public:
  GridFunction() = default;
  GridFunction(double length, std::vector<cplx> periodic, cplx mean_slope = 0.0);

  static GridFunction from_function(std::size_t n, double length,
                                    const std::function<cplx(double)>& periodic,
                                    cplx mean_slope = 0.0);
  static GridFunction constant(std::size_t n, double length, cplx c);

  std::size_t size() const { return periodic_.size(); }
  double length() const { return length_; }
  double x(std::size_t k) const { return length_ * static_cast<double>(k) / static_cast<double>(size()); }
  cplx mean_slope() const { return slope_; }
  const std::vector<cplx>& periodic() const { return periodic_; }
  std::vector<cplx>& periodic() { return periodic_; }
  cplx value(std::size_t k) const { return slope_ * x(k) + periodic_[k]; }
  std::vector<cplx> values() const;

  // Pseudo-spectral on the periodic part; the slope becomes a constant.
  GridFunction derivative() const;

private:
  double length_ = 1.0;
  cplx slope_ = 0.0;
  std::vector<cplx> periodic_;
};

// Spectral derivative of periodic samples on [0, L).
std::vector<cplx> spectral_derivative(const std::vector<cplx>& p, double length);

struct Fields {
  GridFunction u, v;
};

struct FlowRhs {
  GridFunction du, dv;
};

// A value with its first partials in (u, v).
struct Jet {
  cplx value{}, du{}, dv{};
};

// zeta-coefficients 0..order of log P_a and log P_b at one point, where
// P_{a,b} = (1 -+ zeta E + S)/2, S = sqrt((1 + zeta E)^2 - 4 zeta E e^{-u}),
// E = e^{v} for z and e^{-v} for zt.
struct PointCoefficients {
  std::vector<Jet> log_pa, log_pb;
};
PointCoefficients generating_coefficients(cplx u, cplx v, Direction dir, int order);

// d/dz_j (u, v) on the grid, j >= 1.
FlowRhs flow_rhs(const Fields& f, int j, Direction dir,
                 FlowConvention conv = FlowConvention::published);

// sum_{j=1}^{order} zeta0^j d/dz_j
FlowRhs generating_flow(const Fields& f, cplx zeta0, Direction dir, FlowConvention conv, int order);

// d/dz_j of d_x(varpi) consistent with u = -d_x^2 varpi (lattice_limit signs).
GridFunction potential_gradient_rhs(const Fields& f, int j, Direction dir);

// -i atanh((1 + zeta E)/S), principal branch.
cplx hamiltonian_density(cplx zeta0, cplx u, cplx v, Density which);
GridFunction hamiltonian_density(cplx zeta0, const Fields& f, Density which);

// The Delta-form right sides as closed expressions:
//   z:  Delta v = -i d_x((1 + zeta E)/(2S)),  Delta u = +i d_x((1 - zeta E)/(2S))
//   zt: Delta v = -i d_x((1 + zeta E)/(2S)),  Delta u = -i d_x((1 - zeta E)/(2S))
FlowRhs delta_flow_closed_form(cplx zeta0, const Fields& f, Direction dir);

// Poisson bracket {w^mu(x), w^nu(y)} = eta^{mu nu} delta'(x - y) in (v, u) order.
using PoissonMatrix = std::array<std::array<cplx, 2>, 2>;
inline constexpr PoissonMatrix kAlPoisson{{{0.0, 1.0}, {1.0, 0.0}}};

// Flow of the density generating function through the bracket:
// d_t w^mu = eta^{mu nu} d_x (dh/dw^nu), gradients by 5-point differences.
FlowRhs hamiltonian_flow(cplx zeta0, const Fields& f, Density which, double fd_step = 1e-3,
                         const PoissonMatrix& eta = kAlPoisson);

struct DensitySample {
  cplx u, v, zeta;
};

std::vector<DensitySample> random_density_samples(int count, unsigned long seed);

struct SecondDerivatives {
  cplx guu, gvv;
  double error_estimate;
};

// 5-point second differences with one Richardson step (h and h/2).
SecondDerivatives density_second_derivatives(const DensitySample& s, Density which, double step);

inline cplx fppp_published(cplx u) { return 1.0 / (std::exp(u) - 1.0); }

struct DensityConstraintReport {
  double max_relative = 0;          // |g_uu - f''' g_vv| / max(|g_uu|, |f''' g_vv|)
  double max_relative_flipped = 0;  // same with -f'''
  double max_fd_error = 0;
  std::vector<double> relative;
  std::vector<double> ratio_real;   // Re(g_uu / g_vv) per sample
};

DensityConstraintReport check_density_constraint(
    Density which, std::span<const DensitySample> samples,
    const std::function<cplx(cplx)>& fppp = fppp_published, double step = 1e-2);

struct EvolveOptions {
  double horizon = 0.1;
  double dt = 1e-3;
  double catastrophe_factor = 10.0;
  long sample_every = 0;
  FlowConvention convention = FlowConvention::published;
};

struct EvolveSample {
  double time;
  Fields fields;
};

struct EvolveResult {
  Fields fields;
  double time = 0;
  long steps = 0;
  double initial_gradient = 0;
  double final_gradient = 0;
  std::vector<EvolveSample> samples;
};

// RK4 in flow time; slopes stay fixed, the periodic parts evolve.
// Throws CatastropheError once max|u_x| exceeds catastrophe_factor times its initial value.
EvolveResult evolve_dispersionless(const Fields& f, int j, Direction dir, const EvolveOptions& opt);

// Coefficient matrix A of the j = 1 flow linearized about constants:
// d/dt (dv, du) = A d_x (dv, du).
std::array<std::array<cplx, 2>, 2> linearized_matrix(cplx u0, cplx v0, Direction dir,
                                                     FlowConvention conv);

using Potential = std::function<cplx(cplx)>;

// (varpi(x + l) - 2 varpi(x) + varpi(x - l)) / l^2
cplx second_difference(const Potential& varpi, cplx x, cplx lambda_check);

struct XdifReport {
  double max_residual = 0;
  std::vector<cplx> lhs, rhs;
};

// log(1 - exp(2 r)) against the second x-difference of varpi on r's grid.
XdifReport check_xdif(const Potential& varpi, const GridFunction& r_lambda, cplx lambda_check);

// 2 pi i x^2 t / (2 kappa^2), the classical term divided by (2 pi)^2.
Potential classical_varpi(cplx t, cplx kappa);

// r with log(1 - e^{2r}) = -u, i.e. e^{2r} = 1 - e^{-u}.
cplx r_from_u(cplx u);

struct IdentificationReport {
  cplx u, v;
  cplx lhs;                 // (2 pi)^2 varpi at the origin of flow times
  cplx rhs_published;       // -u v^2 / 2 + F^0
  cplx rhs_flipped;         // +u v^2 / 2 + F^0
  cplx difference_published;
  cplx difference_flipped;
};

IdentificationReport check_principal_identification(cplx t, cplx x, cplx kappa);

}  // namespace conifold::disp
