#include "conifold/gw.hpp"

#include <cmath>

#include "conifold/barnes.hpp"
#include "conifold/errors.hpp"
#include "conifold/parallel.hpp"
#include "conifold/specfun.hpp"

namespace conifold::gw {

namespace {

template <class C>
void require_upper_half_plane(const C& t) {
  using R = real_t<C>;
  if (!(t.imag() > R(0))) throw DomainError("gw: need Im t > 0 so that |q| < 1");
}

Rational factorial(int n) {
  Rational f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

Rational genus_coefficient(int g) {
  Rational c = specfun::bernoulli_number(2 * g) / (Rational(2 * g) * factorial(2 * g - 2));
  return (g % 2 == 1) ? c : Rational(-c);
}

}  // namespace

template <class C>
C nome(const C& t) {
  using R = real_t<C>;
  using std::exp;
  return exp(R(2) * pi_v<R>() * imag_unit<C>() * t);
}

template <class C>
C free_energy_genus(int g, const C& t) {
  using R = real_t<C>;
  if (g < 0) throw DomainError("free_energy_genus: negative genus");
  require_upper_half_plane(t);
  C q = nome(t);
  if (g == 0) return specfun::polylog(3, q);
  return rational_to<R>(genus_coefficient(g)) * specfun::polylog(3 - 2 * g, q);
}

Rational constant_map_contribution(int g, int chi) {
  if (g < 2) throw DomainError("constant_map_contribution: only g >= 2 is t-independent");
  Rational v = Rational(chi) * specfun::bernoulli_number(2 * g) *
               specfun::bernoulli_number(2 * g - 2) /
               (Rational(4 * g) * Rational(2 * g - 2) * factorial(2 * g - 2));
  return (g % 2 == 1) ? v : Rational(-v);
}

template <class C>
C genus_truncation(int max_genus, const C& lambda_check, const C& t) {
  using R = real_t<C>;
  C lambda = R(2) * pi_v<R>() * lambda_check;
  C l2 = lambda * lambda;
  C power = C(1) / l2;
  C sum = C(0);
  for (int g = 0; g <= max_genus; ++g) {
    sum += power * free_energy_genus(g, t);
    power *= l2;
  }
  return sum;
}

cplx eval_F_ad(const cplx& lambda_check, const cplx& t, const cplx& x, const cplx& kappa) {
  if (kappa == 0.0) throw DomainError("eval_F_ad: kappa must be nonzero");
  require_upper_half_plane(t);
  const double two_pi = 2.0 * pi_v<double>();
  cplx classical = std::pow(two_pi, 3) * cplx(0, 1) * x * x * t /
                   (2.0 * kappa * kappa * lambda_check * lambda_check);
  return classical + barnes::np_potential(lambda_check, t);
}

DifferenceCheck check_difference_equation(const cplx& lambda_check, const cplx& t) {
  require_upper_half_plane(t);
  DifferenceCheck out;
  out.second_difference = barnes::np_potential(lambda_check, t + lambda_check) -
                          2.0 * barnes::np_potential(lambda_check, t) +
                          barnes::np_potential(lambda_check, t - lambda_check);
  out.rhs = conifold::log1p(cplx(-nome(t)));
  auto f = fold_two_pi_i(out.second_difference - out.rhs);
  out.residual = f.value;
  out.folds = f.folds;
  return out;
}

DifferenceCheck check_truncated_difference(int max_genus, const cplx& lambda_check,
                                           const cplx& t) {
  DifferenceCheck out;
  out.second_difference = genus_truncation(max_genus, lambda_check, cplx(t + lambda_check)) -
                          2.0 * genus_truncation(max_genus, lambda_check, t) +
                          genus_truncation(max_genus, lambda_check, cplx(t - lambda_check));
  out.rhs = conifold::log1p(cplx(-nome(t)));
  auto f = fold_two_pi_i(out.second_difference - out.rhs);
  out.residual = f.value;
  out.folds = f.folds;
  return out;
}

HDifferenceCheck check_H_difference(const cplx& t, const cplx& w1, const cplx& w2) {
  const double two_pi = 2.0 * pi_v<double>();
  cplx x2 = std::exp(two_pi * cplx(0, 1) * t / w2);
  cplx r = barnes::log_H(cplx(t + w1), w1, w2) - barnes::log_H(t, w1, w2) +
           conifold::log1p(cplx(-x2));
  auto f = fold_two_pi_i(r);
  return {f.value, f.folds};
}

GFirstDifferenceCheck check_G_first_difference(const cplx& lambda_check, const cplx& t) {
  cplx r = barnes::np_potential(lambda_check, t + lambda_check) -
           barnes::np_potential(lambda_check, t) +
           barnes::log_H(cplx(t + lambda_check), lambda_check, cplx(1.0));
  auto f = fold_two_pi_i(r);
  return {f.value, f.folds};
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    out[i] = std::exp(std::log(hi) + f * (std::log(lo) - std::log(hi)));
  }
  return out;
}

AsymptoticScan asymptotic_remainder_scan(const cplx& t, double theta, std::span<const double> eps,
                                         int max_genus) {
  if (eps.size() < 3) throw DomainError("asymptotic_remainder_scan: need at least 3 points");
  if (max_genus < 0) throw DomainError("asymptotic_remainder_scan: negative genus");
  require_upper_half_plane(t);
  AsymptoticScan out;
  out.eps.assign(eps.begin(), eps.end());
  out.log_eps.resize(eps.size());
  out.log_remainder.resize(eps.size());
  const cquad tq = to_complex<cquad>(t);
  parallel_for(eps.size(), [&](std::size_t i) {
    using std::cos;
    using std::sin;
    quad e = quad(eps[i]);
    cquad lc(e * cos(quad(theta)), e * sin(quad(theta)));
    cquad remainder = barnes::log_G(tq, lc, cquad(1)) - genus_truncation(max_genus, lc, tq);
    out.log_eps[i] = std::log(eps[i]);
    out.log_remainder[i] = static_cast<double>(log(abs(remainder)));
  });
  double n = static_cast<double>(eps.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    sx += out.log_eps[i];
    sy += out.log_remainder[i];
    sxx += out.log_eps[i] * out.log_eps[i];
    sxy += out.log_eps[i] * out.log_remainder[i];
  }
  out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

template cplx nome<cplx>(const cplx&);
template cquad nome<cquad>(const cquad&);
template cplx free_energy_genus<cplx>(int, const cplx&);
template cquad free_energy_genus<cquad>(int, const cquad&);
template cplx genus_truncation<cplx>(int, const cplx&, const cplx&);
template cquad genus_truncation<cquad>(int, const cquad&, const cquad&);

}  // namespace conifold::gw
