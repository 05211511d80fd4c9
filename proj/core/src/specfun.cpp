#include "conifold/specfun.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "conifold/errors.hpp"

namespace conifold::specfun {

namespace {

std::mutex g_bernoulli_mutex;
std::vector<Rational> g_bernoulli{Rational(1)};

std::mutex g_numerator_mutex;
std::map<int, std::vector<BigInt>> g_numerators;

BigInt binomial(int n, int k) {
  BigInt c = 1;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

void extend_bernoulli(int k) {
  // sum_{j=0}^{m} C(m+1, j) B_j = 0
  for (int m = static_cast<int>(g_bernoulli.size()); m <= k; ++m) {
    if (m > 1 && m % 2 == 1) {
      g_bernoulli.emplace_back(0);
      continue;
    }
    Rational acc = 0;
    for (int j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * g_bernoulli[j];
    g_bernoulli.push_back(-acc / Rational(m + 1));
  }
}

// Coefficients of the truncated power series (e^{w x} - 1)/x, i.e. w^{k+1}/(k+1)!.
template <class F>
std::vector<F> expm1_over_x(const F& w, int order) {
  std::vector<F> c(order + 1);
  F p = w;
  F fact = 1;
  for (int k = 0; k <= order; ++k) {
    fact *= F(k + 1);
    c[k] = p / fact;
    p *= w;
  }
  return c;
}

template <class F>
std::vector<F> series_mul(const std::vector<F>& a, const std::vector<F>& b, int order) {
  std::vector<F> c(order + 1, F(0));
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j) c[i + j] += a[i] * b[j];
  return c;
}

template <class F>
std::vector<F> series_div(const std::vector<F>& num, const std::vector<F>& den, int order) {
  std::vector<F> q(order + 1, F(0));
  for (int n = 0; n <= order; ++n) {
    F acc = num[n];
    for (int k = 1; k <= n; ++k) acc -= den[k] * q[n - k];
    q[n] = acc / den[0];
  }
  return q;
}

void check_domain_polylog(int s, bool at_one, bool outside_disk) {
  if (s <= 1 && at_one) {
    std::ostringstream os;
    os << "polylog: Li_" << s << " has a pole at z = 1";
    throw DomainError(os.str());
  }
  if (s >= 2 && outside_disk) {
    std::ostringstream os;
    os << "polylog: series branch of Li_" << s
       << " requires |z| < 1 (no continuation across the cut [1, inf))";
    throw DomainError(os.str());
  }
}

}  // namespace

Rational bernoulli_number(int k) {
  if (k < 0) throw DomainError("bernoulli_number: negative index");
  std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
  if (k >= static_cast<int>(g_bernoulli.size())) extend_bernoulli(k);
  return g_bernoulli[k];
}

BernoulliTable bernoulli_table(int max_index) {
  bernoulli_number(max_index);
  std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
  BernoulliTable t;
  t.max_index = max_index;
  t.values.assign(g_bernoulli.begin(), g_bernoulli.begin() + max_index + 1);
  return t;
}

Rational gen_bernoulli(int r, int n, const Rational& z, std::span<const Rational> omega) {
  if (r < 1 || static_cast<int>(omega.size()) != r)
    throw DomainError("gen_bernoulli: need r >= 1 periods");
  if (n < 0) throw DomainError("gen_bernoulli: negative order");
  for (const auto& w : omega)
    if (w == 0) throw DomainError("gen_bernoulli: zero period");

  std::vector<Rational> den{Rational(1)};
  den.resize(n + 1, Rational(0));
  for (const auto& w : omega) den = series_mul(den, expm1_over_x(w, n), n);
  std::vector<Rational> ez(n + 1);
  Rational p = 1, fact = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) fact *= k;
    ez[k] = p / fact;
    p *= z;
  }
  auto q = series_div(ez, den, n);
  Rational nfact = 1;
  for (int k = 2; k <= n; ++k) nfact *= k;
  return q[n] * nfact;
}

template <class C>
std::vector<C> gen_bernoulli_series(int order, const C& z, std::span<const C> omega) {
  using R = real_t<C>;
  if (omega.empty()) throw DomainError("gen_bernoulli: need r >= 1 periods");
  for (const auto& w : omega)
    if (w == C(0)) throw DomainError("gen_bernoulli: zero period");
  if (order < 0) return {};

  // x/(e^{wx}-1) = (1/w) sum_k B_k (w x)^k / k!, multiplied over periods.
  std::vector<R> bk(order + 1);
  R fact = 1;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) fact *= R(k);
    bk[k] = rational_to<R>(bernoulli_number(k)) / fact;
  }
  std::vector<C> acc(order + 1, C(0));
  acc[0] = C(1);
  for (const auto& w : omega) {
    std::vector<C> f(order + 1);
    C p = C(1) / w;
    for (int k = 0; k <= order; ++k) {
      f[k] = bk[k] * p;
      p *= w;
    }
    acc = series_mul(acc, f, order);
  }
  std::vector<C> ez(order + 1);
  C p = C(1);
  R fk = 1;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) fk *= R(k);
    ez[k] = p / fk;
    p *= z;
  }
  return series_mul(acc, ez, order);
}

template <class C>
C gen_bernoulli(int n, const C& z, std::span<const C> omega) {
  using R = real_t<C>;
  if (n < 0) throw DomainError("gen_bernoulli: negative order");
  auto c = gen_bernoulli_series(n, z, omega);
  R fact = 1;
  for (int k = 2; k <= n; ++k) fact *= R(k);
  return c[n] * fact;
}

const std::vector<BigInt>& polylog_numerator(int n) {
  if (n < 0) throw DomainError("polylog_numerator: negative index");
  std::lock_guard<std::mutex> lock(g_numerator_mutex);
  if (g_numerators.empty()) g_numerators[0] = {BigInt(0), BigInt(1)};
  int have = g_numerators.rbegin()->first;
  for (int m = have; m < n; ++m) {
    // N_{m+1} = z [ N_m' (1 - z) + (m+1) N_m ]
    const auto& p = g_numerators[m];
    std::vector<BigInt> inner(p.size() + 1, BigInt(0));
    for (std::size_t k = 1; k < p.size(); ++k) {
      BigInt d = p[k] * static_cast<int>(k);
      inner[k - 1] += d;
      inner[k] -= d;
    }
    for (std::size_t k = 0; k < p.size(); ++k) inner[k] += p[k] * (m + 1);
    std::vector<BigInt> next(inner.size() + 1, BigInt(0));
    for (std::size_t k = 0; k < inner.size(); ++k) next[k + 1] = inner[k];
    while (next.size() > 1 && next.back() == 0) next.pop_back();
    g_numerators[m + 1] = std::move(next);
  }
  return g_numerators.at(n);
}

template <class C>
C polylog(int s, const C& z, real_t<C> tol) {
  using R = real_t<C>;
  using std::abs;
  using std::pow;
  const R az = abs(z);
  check_domain_polylog(s, z == C(1), !(az < R(1)));

  if (s == 1) return -conifold::log1p(C(-z));
  if (s <= 0) {
    const auto& num = polylog_numerator(-s);
    C acc = C(0);
    for (std::size_t k = num.size(); k-- > 0;) acc = acc * z + C(static_cast<R>(num[k]));
    C one_minus = C(1) - z;
    C den = C(1);
    for (int k = 0; k <= -s; ++k) den *= one_minus;
    return acc / den;
  }

  // Tail after N terms is at most |z|^{N+1} / ((N+1)^s (1-|z|)).
  C term = z;
  C sum = C(0);
  R zn = az;
  for (long n = 1;; ++n) {
    sum += term / pow(R(n), s);
    R bound = zn * az / (pow(R(n + 1), s) * (R(1) - az));
    if (bound <= tol * std::max(R(1), R(abs(sum))) || az == R(0)) break;
    term *= z;
    zn *= az;
    if (n > 100000000L) throw DomainError("polylog: series failed to converge");
  }
  return sum;
}

template <class C>
C polylog(int s, const C& z) {
  return polylog(s, z, eps_v<real_t<C>>());
}

template cplx gen_bernoulli<cplx>(int, const cplx&, std::span<const cplx>);
template cquad gen_bernoulli<cquad>(int, const cquad&, std::span<const cquad>);
template std::vector<cplx> gen_bernoulli_series<cplx>(int, const cplx&, std::span<const cplx>);
template std::vector<cquad> gen_bernoulli_series<cquad>(int, const cquad&, std::span<const cquad>);
template cplx polylog<cplx>(int, const cplx&);
template cquad polylog<cquad>(int, const cquad&);
template cplx polylog<cplx>(int, const cplx&, double);
template cquad polylog<cquad>(int, const cquad&, quad);

}  // namespace conifold::specfun
