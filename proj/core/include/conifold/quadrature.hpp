#pragma once

#include <cmath>
#include <vector>

#include "conifold/numeric.hpp"

namespace conifold::quadrature {

// Nodes and weights on [-1, 1], computed once per (R, n) by Newton iteration.
template <class R>
struct GaussLegendre {
  std::vector<R> nodes;
  std::vector<R> weights;
  static const GaussLegendre& rule(int n);
};

extern template struct GaussLegendre<double>;
extern template struct GaussLegendre<quad>;

template <class R>
inline int default_points() {
  return std::is_same_v<R, double> ? 20 : 40;
}

namespace detail {

template <class C, class R, class F>
C panel(const F& f, R a, R b, const GaussLegendre<R>& gl) {
  R half = (b - a) / 2;
  R mid = (a + b) / 2;
  C acc = C(0);
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) acc += gl.weights[i] * f(mid + half * gl.nodes[i]);
  return acc * half;
}

template <class C, class R, class F>
C refine(const F& f, R a, R b, const C& whole, R tol, R rel, int depth,
         const GaussLegendre<R>& gl) {
  using std::abs;
  R m = (a + b) / 2;
  C left = panel<C>(f, a, m, gl);
  C right = panel<C>(f, m, b, gl);
  C both = left + right;
  if (abs(both - whole) <= tol + rel * abs(both) || depth <= 0) return both;
  return refine(f, a, m, left, tol / 2, rel, depth - 1, gl) +
         refine(f, m, b, right, tol / 2, rel, depth - 1, gl);
}

}  // namespace detail

// Adaptive bisection with a Gauss-Legendre rule on [a, b]. A panel is accepted
// when halving changes it by less than tol + rel*|value|.
template <class C, class R, class F>
C integrate(const F& f, R a, R b, R tol, R rel = R(0), int max_depth = 30) {
  const auto& gl = GaussLegendre<R>::rule(default_points<R>());
  C whole = detail::panel<C>(f, a, b, gl);
  return detail::refine(f, a, b, whole, tol, rel, max_depth, gl);
}

}  // namespace conifold::quadrature
