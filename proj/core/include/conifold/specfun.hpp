#pragma once

#include <span>
#include <vector>

#include "conifold/numeric.hpp"

namespace conifold::specfun {

struct BernoulliTable {
  int max_index = 0;
  std::vector<Rational> values;  // B_0 .. B_max, convention B_1 = -1/2
};

// Memoized; safe to call concurrently.
Rational bernoulli_number(int k);
BernoulliTable bernoulli_table(int max_index);

// n! [x^n] x^r e^{zx} / prod_i (e^{w_i x} - 1), exact.
Rational gen_bernoulli(int r, int n, const Rational& z, std::span<const Rational> omega);

// Floating version; r is omega.size().
template <class C>
C gen_bernoulli(int n, const C& z, std::span<const C> omega);

// c_n = B_{r,n}(z|omega)/n! for n = 0..order, in one pass.
template <class C>
std::vector<C> gen_bernoulli_series(int order, const C& z, std::span<const C> omega);

// Integer coefficients of N_n with Li_{-n}(z) = N_n(z)/(1-z)^{n+1}; index = power of z.
const std::vector<BigInt>& polylog_numerator(int n);

// Li_s(z). s >= 2 needs |z| < 1; s <= 1 needs z != 1 (principal log for s = 1).
template <class C>
C polylog(int s, const C& z);

template <class C>
C polylog(int s, const C& z, real_t<C> tol);

extern template cplx gen_bernoulli<cplx>(int, const cplx&, std::span<const cplx>);
extern template cquad gen_bernoulli<cquad>(int, const cquad&, std::span<const cquad>);
extern template std::vector<cplx> gen_bernoulli_series<cplx>(int, const cplx&, std::span<const cplx>);
extern template std::vector<cquad> gen_bernoulli_series<cquad>(int, const cquad&, std::span<const cquad>);
extern template cplx polylog<cplx>(int, const cplx&);
extern template cquad polylog<cquad>(int, const cquad&);
extern template cplx polylog<cplx>(int, const cplx&, double);
extern template cquad polylog<cquad>(int, const cquad&, quad);

}  // namespace conifold::specfun
