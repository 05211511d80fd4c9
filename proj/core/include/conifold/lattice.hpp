#pragma once

#include <functional>
#include <vector>

#include "conifold/numeric.hpp"

namespace conifold::lattice {

struct LatticeState {
  std::vector<cplx> a, b;  // periodic, indices mod N
  double time = 0;

  std::size_t size() const { return a.size(); }
};

struct Derivative {
  std::vector<cplx> da, db;
};

// i a' = (a_{n+1} + a_{n-1})(1 - a_n b_n),  i b' = -(b_{n+1} + b_{n-1})(1 - a_n b_n)
Derivative al_rhs(const LatticeState& s);

// The z_1 and zt_1 pieces: i a_z = a_{n+1}(1-ab), i a_zt = a_{n-1}(1-ab), and
// -i b_z = b_{n-1}(1-ab), -i b_zt = b_{n+1}(1-ab).
Derivative al_rhs_z(const LatticeState& s);
Derivative al_rhs_ztilde(const LatticeState& s);

// C_0 = sum log(1 - a_n b_n)
cplx conserved_quantities(const LatticeState& s);

struct PlaneWave {
  cplx A, B;
  double k;

  cplx frequency() const { return 2.0 * std::cos(k) * (1.0 - A * B); }
  LatticeState state(std::size_t N, double t) const;
};

// 2 pi m / N closest to k.
double commensurate_wavenumber(double k, std::size_t N);

struct Sample {
  long step;
  double time;
  LatticeState state;
  cplx c0;
};

struct Trajectory {
  std::vector<Sample> samples;
  LatticeState final_state;
};

struct IntegrateOptions {
  double dt = 1e-3;
  long steps = 1000;
  long sample_every = 0;  // 0: only the initial and final states
  bool keep_states = true;
};

// Classical RK4. Throws SingularStateError with a diagnostic if 1 - ab hits zero.
Trajectory integrate(const LatticeState& initial, const IntegrateOptions& opt);

// Single RK4 step.
LatticeState rk4_step(const LatticeState& s, double dt);

LatticeState random_state(std::size_t N, double amplitude, unsigned long seed);

}  // namespace conifold::lattice
