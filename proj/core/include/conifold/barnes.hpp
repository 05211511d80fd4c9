#pragma once

#include <span>
#include <vector>

#include "conifold/numeric.hpp"

namespace conifold::barnes {

template <class C>
struct BarnesEvaluation {
  int r = 1;
  std::vector<C> omega;  // Re > 0
  C z{};                 // Re z <= min_real_z is shifted into range exactly
  int head_order = 24;
  real_t<C> quad_tol = default_quad_tol();

  static real_t<C> default_quad_tol() {
    return std::is_same_v<C, cplx> ? real_t<C>(1e-13) : real_t<C>(1e-32);
  }
};

template <class C>
BarnesEvaluation<C> make_evaluation(const C& z, std::vector<C> omega) {
  BarnesEvaluation<C> ev;
  ev.r = static_cast<int>(omega.size());
  ev.omega = std::move(omega);
  ev.z = z;
  return ev;
}

template <class C>
struct MultipleGamma {
  C log_gamma;     // d/ds zeta_r(s, z|omega) at s = 0
  C zeta_at_zero;  // (-1)^r B_{r,r}(z|omega) / r!
};

// Reciprocal of Euler's gamma function, entire.
template <class C>
C rgamma(const C& s);

// zeta_r(s, z|omega) = sum_{n >= 0} (z + n.omega)^{-s}, continued to all s.
template <class C>
C barnes_zeta(const C& s, const BarnesEvaluation<C>& ev);

template <class C>
MultipleGamma<C> log_multiple_gamma(const BarnesEvaluation<C>& ev);

// log sin_r(z|omega) = -log Gamma_r(z) + (-1)^r log Gamma_r(|omega| - z).
template <class C>
C log_multiple_sine(const C& z, std::span<const C> omega);

// -(pi i/2) B_{2,2}(t|w1,w2) + log sin_2(t|w1,w2)
template <class C>
C log_H(const C& t, const C& w1, const C& w2);

// (pi i/6) B_{3,3}(t+w1|w1,w1,w2) + log sin_3(t+w1|w1,w1,w2)
template <class C>
C log_G(const C& t, const C& w1, const C& w2);

// F_np(lambda, t) = log G(t | lambda_check, 1), lambda_check = lambda / (2 pi).
inline cplx np_potential(const cplx& lambda_check, const cplx& t);

#define CONIFOLD_BARNES_EXTERN(C)                                                   \
  extern template C rgamma<C>(const C&);                                            \
  extern template C barnes_zeta<C>(const C&, const BarnesEvaluation<C>&);           \
  extern template MultipleGamma<C> log_multiple_gamma<C>(const BarnesEvaluation<C>&); \
  extern template C log_multiple_sine<C>(const C&, std::span<const C>);             \
  extern template C log_H<C>(const C&, const C&, const C&);                         \
  extern template C log_G<C>(const C&, const C&, const C&);
CONIFOLD_BARNES_EXTERN(cplx)
CONIFOLD_BARNES_EXTERN(cquad)
#undef CONIFOLD_BARNES_EXTERN

inline cplx np_potential(const cplx& lambda_check, const cplx& t) {
  return log_G(t, lambda_check, cplx(1.0));
}

}  // namespace conifold::barnes
