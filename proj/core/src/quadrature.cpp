#include "conifold/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace conifold::quadrature {

namespace {

template <class R>
GaussLegendre<R> build(int n) {
  using std::abs;
  using std::cos;
  GaussLegendre<R> gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  const R pi = pi_v<R>();
  for (int i = 0; i < (n + 1) / 2; ++i) {
    R x = cos(pi * (R(i) + R(0.75)) / (R(n) + R(0.5)));
    R dp = 0;
    for (int it = 0; it < 100; ++it) {
      R p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        R p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      R dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= 4 * eps_v<R>()) break;
    }
    {
      R p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        R p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
    }
    R w = 2 / ((1 - x * x) * dp * dp);
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  return gl;
}

}  // namespace

template <class R>
const GaussLegendre<R>& GaussLegendre<R>::rule(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussLegendre<R>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendre<R>>(build<R>(n));
  return *slot;
}

template struct GaussLegendre<double>;
template struct GaussLegendre<quad>;

}  // namespace conifold::quadrature
