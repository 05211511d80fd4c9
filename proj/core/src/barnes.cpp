#include "conifold/barnes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conifold/errors.hpp"
#include "conifold/quadrature.hpp"
#include "conifold/specfun.hpp"

namespace conifold::barnes {

namespace {

template <class R>
struct Precision;

template <>
struct Precision<double> {
  static constexpr int stirling_shift = 15;
  static constexpr int stirling_terms = 10;
  static double tail_cut() { return 1e-18; }
  static double rel() { return 1e-15; }
  static double min_real_z() { return 0.05; }
};

template <>
struct Precision<quad> {
  static constexpr int stirling_shift = 30;
  static constexpr int stirling_terms = 20;
  static quad tail_cut() { return quad(1e-36); }
  static quad rel() { return quad(1e-33); }
  static quad min_real_z() { return quad(0.05); }
};

template <class C>
bool is_nonpositive_integer(const C& s, int* k) {
  using R = real_t<C>;
  if (s.imag() != R(0)) return false;
  R re = s.real();
  if (re > R(0)) return false;
  R rounded = round(re);
  if (re != rounded) return false;
  *k = static_cast<int>(-rounded);
  return true;
}

template <class C>
bool is_positive_integer(const C& s, int* k) {
  using R = real_t<C>;
  if (s.imag() != R(0)) return false;
  R re = s.real();
  if (re <= R(0) || re != round(re)) return false;
  *k = static_cast<int>(re);
  return true;
}

// log Gamma(s) for Re s >= shift region; branch is irrelevant for callers.
template <class C>
C log_gamma_stirling(C s) {
  using R = real_t<C>;
  using std::log;
  constexpr int shift = Precision<R>::stirling_shift;
  C prod = C(1);
  while (s.real() < R(shift)) {
    prod *= s;
    s += R(1);
  }
  C inv = C(1) / s;
  C inv2 = inv * inv;
  C series = C(0);
  C p = inv;
  for (int k = 1; k <= Precision<R>::stirling_terms; ++k) {
    R b = rational_to<R>(specfun::bernoulli_number(2 * k));
    series += p * (b / R((2 * k) * (2 * k - 1)));
    p *= inv2;
  }
  const R half_log_2pi = log(R(2) * pi_v<R>()) / R(2);
  return (s - R(0.5)) * log(s) - s + half_log_2pi + series - log(prod);
}

template <class C>
struct Expansion {
  real_t<C> cut;
  std::vector<C> a;  // t^r f(t) = sum a_n t^n on [0, cut]
};

template <class C>
Expansion<C> expand(const C& z, std::span<const C> omega, int min_terms) {
  using R = real_t<C>;
  using std::abs;
  R wmax = 0;
  for (const auto& w : omega) wmax = std::max<R>(wmax, abs(w));
  R cut = std::min<R>(R(1), pi_v<R>() / wmax);
  R az = abs(z);
  if (az * cut > R(2)) cut = R(2) / az;

  int order = std::max(min_terms, std::is_same_v<R, double> ? 48 : 96);
  for (;;) {
    auto c = specfun::gen_bernoulli_series(order, z, omega);
    std::vector<C> a(c.size());
    R peak = 0;
    for (std::size_t n = 0; n < c.size(); ++n) {
      a[n] = (n % 2 == 0) ? c[n] : -c[n];
      peak = std::max<R>(peak, abs(a[n]) * pow(cut, R(static_cast<int>(n))));
    }
    R last = 0;
    for (int n = order - 3; n <= order; ++n)
      last = std::max<R>(last, abs(a[n]) * pow(cut, R(n)));
    if (last <= eps_v<R>() * peak * R(1e-3) || order > 2000) return {cut, std::move(a)};
    order *= 2;
  }
}

template <class C>
C integrand(const real_t<C>& t, const C& sm1, const C& z, std::span<const C> omega) {
  using std::exp;
  using std::log;
  C num = exp(sm1 * log(t) - z * t);
  C den = C(1);
  for (const auto& w : omega) den *= -conifold::expm1(C(-w * t));
  return num / den;
}

template <class C>
real_t<C> integrand_bound(const real_t<C>& t, const C& s, const C& z, std::span<const C> omega) {
  using R = real_t<C>;
  using std::exp;
  using std::pow;
  R v = pow(t, s.real() - R(1)) * exp(-z.real() * t);
  for (const auto& w : omega) v /= (R(1) - exp(-w.real() * t));
  return v;
}

// int_cut^inf t^{s-1} e^{-zt} / prod(1 - e^{-w t}) dt
template <class C>
C tail_integral(const C& s, const C& z, std::span<const C> omega, real_t<C> cut,
                real_t<C> quad_tol) {
  using R = real_t<C>;
  using std::abs;
  const C sm1 = s - R(1);
  const R scale = std::max<R>(R(1), abs(integrand(cut, sm1, z, omega)) * cut);
  const R tiny = Precision<R>::tail_cut();

  R end = cut + R(1);
  while (integrand_bound(end, s, z, omega) / z.real() > tiny * scale) end *= R(1.25);

  R freq = abs(z.imag());
  R wmax = freq > R(0) ? pi_v<R>() / freq : R(4);
  wmax = std::clamp<R>(wmax, R(0.5), R(4));

  auto f = [&](const R& t) { return integrand(t, sm1, z, omega); };
  int panels_est = static_cast<int>(static_cast<double>((end - cut) / wmax)) + 8;
  R panel_tol = quad_tol * scale / R(panels_est);

  C total = C(0);
  R a = cut;
  R width = cut;
  while (a < end) {
    R b = std::min<R>(a + width, end);
    total += quadrature::integrate<C>(f, a, b, panel_tol, Precision<R>::rel());
    a = b;
    width = std::min<R>(width * R(2), wmax);
  }
  return total;
}

template <class C>
void validate(const BarnesEvaluation<C>& ev) {
  using R = real_t<C>;
  if (ev.r < 0 || static_cast<int>(ev.omega.size()) != ev.r)
    throw DomainError("barnes: omega must have r entries");
  for (const auto& w : ev.omega)
    if (!(w.real() > R(0))) throw DomainError("barnes: periods need positive real part");
  if (ev.head_order < ev.r + 2) throw DomainError("barnes: head order must be >= r + 2");
}

template <class C>
std::size_t shift_index(std::span<const C> omega) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < omega.size(); ++i)
    if (omega[i].real() > omega[k].real()) k = i;
  return k;
}

template <class C>
std::vector<C> drop(std::span<const C> omega, std::size_t k) {
  std::vector<C> out;
  for (std::size_t i = 0; i < omega.size(); ++i)
    if (i != k) out.push_back(omega[i]);
  return out;
}

template <class C>
int shifts_needed(const C& z, const C& w) {
  using R = real_t<C>;
  R gap = Precision<R>::min_real_z() - z.real();
  if (gap < R(0)) return 0;
  return static_cast<int>(static_cast<double>(gap / w.real())) + 1;
}

// Integral representation, Re z > 0.
template <class C>
C zeta_direct(const C& s, const C& z, std::span<const C> omega, int head_order, real_t<C> tol) {
  using R = real_t<C>;
  using std::exp;
  using std::log;
  const int r = static_cast<int>(omega.size());
  auto ex = expand(z, omega, head_order);
  int k = 0;
  if (is_nonpositive_integer(s, &k)) {
    if (r + k >= static_cast<int>(ex.a.size())) throw DomainError("barnes: expansion too short");
    R fact = 1;
    for (int j = 2; j <= k; ++j) fact *= R(j);
    C v = ex.a[r + k] * fact;
    return (k % 2 == 0) ? v : -v;
  }
  int m = 0;
  if (is_positive_integer(s, &m) && m <= r) {
    std::ostringstream os;
    os << "barnes_zeta: pole at s = " << m;
    throw PoleError(os.str());
  }
  const R logc = log(ex.cut);
  C head = C(0);
  for (std::size_t n = 0; n < ex.a.size(); ++n) {
    C e = s + R(static_cast<int>(n) - r);
    head += ex.a[n] * exp(e * logc) / e;
  }
  C tail = tail_integral(s, z, omega, ex.cut, tol);
  return (head + tail) * rgamma(s);
}

template <class C>
C zeta_extended(const C& s, const C& z, std::span<const C> omega, int head_order,
                real_t<C> tol) {
  using std::exp;
  using std::log;
  if (omega.empty()) {
    if (z == C(0)) throw PoleError("barnes: z on the lattice");
    return exp(-s * log(z));
  }
  std::size_t k = shift_index(omega);
  int m = shifts_needed(z, omega[k]);
  if (m == 0) return zeta_direct(s, z, omega, head_order, tol);
  auto rest = drop(omega, k);
  C acc = zeta_direct(s, C(z + real_t<C>(m) * omega[k]), omega, head_order, tol);
  for (int j = 0; j < m; ++j)
    acc += zeta_extended(s, C(z + real_t<C>(j) * omega[k]), std::span<const C>(rest), head_order,
                         tol);
  return acc;
}

template <class C>
MultipleGamma<C> gamma_direct(const C& z, std::span<const C> omega, int head_order,
                              real_t<C> tol) {
  using R = real_t<C>;
  using std::log;
  const int r = static_cast<int>(omega.size());
  auto ex = expand(z, omega, head_order);
  const R logc = log(ex.cut);
  C sum = ex.a[r] * (euler_gamma_v<R>() + logc);
  for (std::size_t n = 0; n < ex.a.size(); ++n) {
    int e = static_cast<int>(n) - r;
    if (e == 0) continue;
    sum += ex.a[n] * pow(ex.cut, R(e)) / R(e);
  }
  sum += tail_integral(C(0), z, omega, ex.cut, tol);
  return {sum, ex.a[r]};
}

template <class C>
MultipleGamma<C> gamma_extended(const C& z, std::span<const C> omega, int head_order,
                                real_t<C> tol) {
  using R = real_t<C>;
  using std::log;
  if (omega.empty()) {
    if (z == C(0)) throw PoleError("barnes: z on the lattice");
    return {-log(z), C(1)};
  }
  std::size_t k = shift_index(omega);
  int m = shifts_needed(z, omega[k]);
  if (m == 0) return gamma_direct(z, omega, head_order, tol);
  auto rest = drop(omega, k);
  auto shifted = gamma_direct(C(z + R(m) * omega[k]), omega, head_order, tol);
  for (int j = 0; j < m; ++j) {
    auto lower = gamma_extended(C(z + R(j) * omega[k]), std::span<const C>(rest), head_order, tol);
    shifted.log_gamma += lower.log_gamma;
    shifted.zeta_at_zero += lower.zeta_at_zero;
  }
  return shifted;
}

}  // namespace

template <class C>
C rgamma(const C& s) {
  using R = real_t<C>;
  using std::exp;
  using std::sin;
  int k = 0;
  if (is_nonpositive_integer(s, &k)) return C(0);
  if (s.real() < R(0.5)) {
    // 1/Gamma(s) = sin(pi s) Gamma(1 - s) / pi
    return sin(pi_v<R>() * s) * exp(log_gamma_stirling(C(R(1) - s))) / pi_v<R>();
  }
  return exp(-log_gamma_stirling(s));
}

template <class C>
C barnes_zeta(const C& s, const BarnesEvaluation<C>& ev) {
  validate(ev);
  return zeta_extended(s, ev.z, std::span<const C>(ev.omega), ev.head_order, ev.quad_tol);
}

template <class C>
MultipleGamma<C> log_multiple_gamma(const BarnesEvaluation<C>& ev) {
  validate(ev);
  return gamma_extended(ev.z, std::span<const C>(ev.omega), ev.head_order, ev.quad_tol);
}

template <class C>
C log_multiple_sine(const C& z, std::span<const C> omega) {
  C total = C(0);
  for (const auto& w : omega) total += w;
  std::vector<C> om(omega.begin(), omega.end());
  auto lhs = log_multiple_gamma(make_evaluation(z, om));
  auto rhs = log_multiple_gamma(make_evaluation(C(total - z), om));
  return (om.size() % 2 == 0) ? C(rhs.log_gamma - lhs.log_gamma)
                              : C(-rhs.log_gamma - lhs.log_gamma);
}

template <class C>
C log_H(const C& t, const C& w1, const C& w2) {
  using R = real_t<C>;
  const C om[2] = {w1, w2};
  std::span<const C> omega(om, 2);
  C b22 = specfun::gen_bernoulli(2, t, omega);
  return -imag_unit<C>() * (pi_v<R>() / R(2)) * b22 + log_multiple_sine(t, omega);
}

template <class C>
C log_G(const C& t, const C& w1, const C& w2) {
  using R = real_t<C>;
  const C om[3] = {w1, w1, w2};
  std::span<const C> omega(om, 3);
  C z = t + w1;
  C b33 = specfun::gen_bernoulli(3, z, omega);
  return imag_unit<C>() * (pi_v<R>() / R(6)) * b33 + log_multiple_sine(z, omega);
}

#define CONIFOLD_BARNES_INSTANTIATE(C)                                       \
  template C rgamma<C>(const C&);                                            \
  template C barnes_zeta<C>(const C&, const BarnesEvaluation<C>&);           \
  template MultipleGamma<C> log_multiple_gamma<C>(const BarnesEvaluation<C>&); \
  template C log_multiple_sine<C>(const C&, std::span<const C>);             \
  template C log_H<C>(const C&, const C&, const C&);                         \
  template C log_G<C>(const C&, const C&, const C&);
CONIFOLD_BARNES_INSTANTIATE(cplx)
CONIFOLD_BARNES_INSTANTIATE(cquad)

}  // namespace conifold::barnes
