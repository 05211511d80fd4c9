#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "conifold/disp.hpp"
#include "conifold/hirota.hpp"
#include "conifold/lattice.hpp"

namespace conifold::cli {

inline constexpr std::array<hirota::HirotaEquation, 6> kAllEquations{
    hirota::HirotaEquation::a, hirota::HirotaEquation::b, hirota::HirotaEquation::c,
    hirota::HirotaEquation::d, hirota::HirotaEquation::e, hirota::HirotaEquation::f};

struct GridPoint {
  cplx t, lambda_check;
};

// Re t in [-0.5, 0.5], Im t in [0.25, 0.95], |lambda_check| in [0.05, 0.3],
// arg lambda_check in [-1.2, 1.2].
std::vector<GridPoint> difference_grid(int count, unsigned long seed);

struct DifferenceResiduals {
  double diff = 0, h_diff = 0, g_first_diff = 0;
};
// Max folded residuals; H is checked at periods (lambda_check, 1).
DifferenceResiduals difference_residuals(const std::vector<GridPoint>& pts);

// Max over sites of |d/dz_1 + d/dzt_1 of (a, b) - AL right side| on the
// derivative range of the window.
double flow_vs_lattice(const hirota::TauTriple& base, const hirota::TimeDerivatives& d,
                       const std::vector<cplx>& a, const std::vector<cplx>& b);

void write_lattice_csv(std::ostream& out, const lattice::Trajectory& traj);
void write_disp_csv(std::ostream& out, const disp::Fields& f);

// u = u0 + amp cos(2 pi m x / L), v = slope x + v0 + amp sin(2 pi m x / L)
disp::Fields profile_fields(std::size_t n, double length, cplx u0, cplx v0, cplx amp, int mode,
                            cplx v_slope = 0.0);
// The default test profile: N = 64, L = 2 pi, two-mode u and v.
disp::Fields reference_fields();

struct FirstFlowError {
  double z = 0, ztilde = 0;
};
FirstFlowError first_flow_closed_form_error();

// max over j <= 4 of |flow_zt(u, -v) - (-du_z, dv_z)|
double mirror_symmetry_error();

struct HamiltonianConsistency {
  double vs_closed_form = 0, vs_lattice_limit = 0, vs_published = 0;
};
HamiltonianConsistency hamiltonian_consistency(cplx zeta);

struct XdifChain {
  double residual = 0;
  cplx u_lambda;
};
XdifChain xdif_chain(cplx t, cplx lambda_check);

}  // namespace conifold::cli
