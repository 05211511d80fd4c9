#pragma once
// Reference computations for the tests. Each one takes a different route
// from the library code it checks.

#include <cmath>
#include <complex>
#include <vector>

#include "conifold/numeric.hpp"

namespace oracle {

using conifold::BigInt;
using conifold::cplx;
using conifold::Rational;

// Akiyama-Tanigawa, gives B_1 = +1/2; flipped to -1/2.
inline Rational bernoulli(int n) {
  std::vector<Rational> a(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (int j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
  }
  return n == 1 ? -a[0] : a[0];
}

// Eulerian numbers A(n, k): Li_{-n}(z) = sum_k A(n, k) z^{k+1} / (1 - z)^{n+1}, n >= 1.
inline std::vector<BigInt> eulerian_row(int n) {
  std::vector<BigInt> row{1};
  for (int m = 2; m <= n; ++m) {
    std::vector<BigInt> next(static_cast<std::size_t>(m), 0);
    for (int k = 0; k < m; ++k) {
      BigInt v = 0;
      if (k < m - 1) v += (k + 1) * row[k];
      if (k >= 1) v += (m - k) * row[k - 1];
      next[k] = v;
    }
    row = next;
  }
  return row;
}

// sum_{n >= 1} z^n / n^s, |z| <= 0.6
inline cplx polylog_series(int s, cplx z) {
  cplx sum = 0, p = 1;
  for (int n = 1; n < 400; ++n) {
    p *= z;
    sum += p / std::pow(static_cast<double>(n), s);
  }
  return sum;
}

// Hurwitz zeta by Euler-Maclaurin: N direct terms, integral tail and
// 12 Bernoulli corrections.
inline cplx hurwitz(cplx s, cplx a) {
  const int N = 40;
  cplx sum = 0;
  for (int k = 0; k < N; ++k) sum += std::pow(a + double(k), -s);
  cplx x = a + double(N);
  sum += std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  cplx rising = s;  // s (s+1) ... (s+2j-2)
  double fact = 2;  // (2j)!
  for (int j = 1; j <= 12; ++j) {
    double b = static_cast<double>(bernoulli(2 * j));
    sum += b / fact * rising * std::pow(x, -s - double(2 * j - 1));
    rising *= (s + double(2 * j - 1)) * (s + double(2 * j));
    fact *= (2 * j + 1) * (2 * j + 2);
  }
  return sum;
}

// Least-squares slope of y against x.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace oracle
