#include "conifold/lattice.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "conifold/errors.hpp"

namespace conifold::lattice {

namespace {

const cplx I(0, 1);

void guard(const LatticeState& s) {
  if (s.a.size() != s.b.size() || s.a.empty())
    throw SingularStateError("lattice: a and b must have the same nonzero length");
  for (std::size_t n = 0; n < s.a.size(); ++n) {
    if (std::abs(1.0 - s.a[n] * s.b[n]) < 1e-14) {
      std::ostringstream os;
      os << "lattice: 1 - a b vanishes at site " << n << " (t = " << s.time << ")";
      throw SingularStateError(os.str());
    }
  }
}

LatticeState axpy(const LatticeState& s, double h, const Derivative& d) {
  LatticeState out = s;
  for (std::size_t n = 0; n < s.size(); ++n) {
    out.a[n] += h * d.da[n];
    out.b[n] += h * d.db[n];
  }
  return out;
}

}  // namespace

Derivative al_rhs(const LatticeState& s) {
  guard(s);
  const std::size_t N = s.size();
  Derivative d{std::vector<cplx>(N), std::vector<cplx>(N)};
  for (std::size_t n = 0; n < N; ++n) {
    const std::size_t up = (n + 1) % N, dn = (n + N - 1) % N;
    const cplx g = 1.0 - s.a[n] * s.b[n];
    d.da[n] = -I * (s.a[up] + s.a[dn]) * g;
    d.db[n] = I * (s.b[up] + s.b[dn]) * g;
  }
  return d;
}

Derivative al_rhs_z(const LatticeState& s) {
  guard(s);
  const std::size_t N = s.size();
  Derivative d{std::vector<cplx>(N), std::vector<cplx>(N)};
  for (std::size_t n = 0; n < N; ++n) {
    const std::size_t up = (n + 1) % N, dn = (n + N - 1) % N;
    const cplx g = 1.0 - s.a[n] * s.b[n];
    d.da[n] = -I * s.a[up] * g;
    d.db[n] = I * s.b[dn] * g;
  }
  return d;
}

Derivative al_rhs_ztilde(const LatticeState& s) {
  guard(s);
  const std::size_t N = s.size();
  Derivative d{std::vector<cplx>(N), std::vector<cplx>(N)};
  for (std::size_t n = 0; n < N; ++n) {
    const std::size_t up = (n + 1) % N, dn = (n + N - 1) % N;
    const cplx g = 1.0 - s.a[n] * s.b[n];
    d.da[n] = -I * s.a[dn] * g;
    d.db[n] = I * s.b[up] * g;
  }
  return d;
}

cplx conserved_quantities(const LatticeState& s) {
  guard(s);
  cplx c0 = 0;
  for (std::size_t n = 0; n < s.size(); ++n) c0 += conifold::log1p(cplx(-s.a[n] * s.b[n]));
  return c0;
}

LatticeState PlaneWave::state(std::size_t N, double t) const {
  LatticeState s;
  s.a.resize(N);
  s.b.resize(N);
  s.time = t;
  const cplx w = frequency();
  for (std::size_t n = 0; n < N; ++n) {
    cplx phase = I * (k * static_cast<double>(n) - w * t);
    s.a[n] = A * std::exp(phase);
    s.b[n] = B * std::exp(-phase);
  }
  return s;
}

double commensurate_wavenumber(double k, std::size_t N) {
  const double unit = 2.0 * pi_v<double>() / static_cast<double>(N);
  return std::round(k / unit) * unit;
}

LatticeState rk4_step(const LatticeState& s, double dt) {
  Derivative k1 = al_rhs(s);
  Derivative k2 = al_rhs(axpy(s, dt / 2, k1));
  Derivative k3 = al_rhs(axpy(s, dt / 2, k2));
  Derivative k4 = al_rhs(axpy(s, dt, k3));
  LatticeState out = s;
  for (std::size_t n = 0; n < s.size(); ++n) {
    out.a[n] += dt / 6 * (k1.da[n] + 2.0 * k2.da[n] + 2.0 * k3.da[n] + k4.da[n]);
    out.b[n] += dt / 6 * (k1.db[n] + 2.0 * k2.db[n] + 2.0 * k3.db[n] + k4.db[n]);
  }
  out.time = s.time + dt;
  return out;
}

Trajectory integrate(const LatticeState& initial, const IntegrateOptions& opt) {
  guard(initial);
  Trajectory tr;
  LatticeState s = initial;
  auto record = [&](long step) {
    Sample smp{step, s.time, opt.keep_states ? s : LatticeState{}, conserved_quantities(s)};
    tr.samples.push_back(std::move(smp));
  };
  record(0);
  for (long step = 1; step <= opt.steps; ++step) {
    try {
      s = rk4_step(s, opt.dt);
    } catch (const SingularStateError& e) {
      std::ostringstream os;
      os << e.what() << " during step " << step;
      throw SingularStateError(os.str());
    }
    bool last = step == opt.steps;
    if (last || (opt.sample_every > 0 && step % opt.sample_every == 0)) record(step);
  }
  tr.final_state = s;
  return tr;
}

LatticeState random_state(std::size_t N, double amplitude, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LatticeState s;
  s.a.resize(N);
  s.b.resize(N);
  for (std::size_t n = 0; n < N; ++n) {
    s.a[n] = amplitude * cplx(u(rng), u(rng));
    s.b[n] = amplitude * cplx(u(rng), u(rng));
  }
  return s;
}

}  // namespace conifold::lattice
