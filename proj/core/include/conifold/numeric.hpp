#pragma once

// Scalar plumbing shared by the double and quad engines.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/float128.hpp>

#include <cmath>
#include <complex>
#include <limits>

namespace conifold {

using cplx = std::complex<double>;
using quad = boost::multiprecision::float128;
using cquad = boost::multiprecision::complex128;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

template <class C>
struct complex_traits;

template <>
struct complex_traits<cplx> {
  using real = double;
};

template <>
struct complex_traits<cquad> {
  using real = quad;
};

template <class C>
using real_t = typename complex_traits<C>::real;

template <class R>
inline R pi_v() {
  return boost::math::constants::pi<R>();
}

template <class R>
inline R euler_gamma_v() {
  return boost::math::constants::euler<R>();
}

template <class R>
inline R eps_v() {
  return std::numeric_limits<R>::epsilon();
}

template <class C>
inline C imag_unit() {
  return C(0, 1);
}

template <class R>
inline R rational_to(const Rational& q) {
  if constexpr (std::is_same_v<R, double>) {
    return static_cast<double>(q);
  } else {
    return static_cast<R>(boost::multiprecision::numerator(q)) /
           static_cast<R>(boost::multiprecision::denominator(q));
  }
}

template <class C>
inline C to_complex(const cplx& z) {
  using R = real_t<C>;
  return C(R(z.real()), R(z.imag()));
}

inline cplx to_cplx(const cplx& z) { return z; }
inline cplx to_cplx(const cquad& z) {
  return cplx(static_cast<double>(z.real()), static_cast<double>(z.imag()));
}

// exp(w) - 1 without cancellation for small |w|.
template <class C>
C expm1(const C& w) {
  using std::abs;
  using std::exp;
  using R = real_t<C>;
  if (abs(w) > R(0.5)) return exp(w) - C(1);
  C term = w;
  C sum = w;
  for (int k = 2; k < 200; ++k) {
    term *= w / R(k);
    sum += term;
    if (abs(term) <= eps_v<R>() * abs(sum)) break;
  }
  return sum;
}

// log(1 + w), principal branch.
template <class C>
C log1p(const C& w) {
  using std::abs;
  using std::log;
  using R = real_t<C>;
  if (abs(w) > R(0.25)) return log(C(1) + w);
  // atanh series in y = w/(2+w)
  C y = w / (C(2) + w);
  C y2 = y * y;
  C term = y;
  C sum = y;
  for (int k = 3; k < 400; k += 2) {
    term *= y2;
    C add = term / R(k);
    sum += add;
    if (abs(add) <= eps_v<R>() * abs(sum)) break;
  }
  return R(2) * sum;
}

struct Folded {
  cplx value;
  int folds = 0;
};

// Subtracts the nearest multiple of 2*pi*i.
inline Folded fold_two_pi_i(cplx w) {
  const double two_pi = 2.0 * pi_v<double>();
  double n = std::round(w.imag() / two_pi);
  return {cplx(w.real(), w.imag() - n * two_pi), static_cast<int>(n)};
}

}  // namespace conifold
