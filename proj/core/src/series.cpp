#include "conifold/series.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "conifold/errors.hpp"

namespace conifold::hirota {

int SeriesLayout::weight(const Exponents& e) const {
  int w = 0;
  for (int v = 0; v < num_vars(); ++v) w += e[v] * weight_of(v);
  return w;
}

bool SeriesLayout::admits(const Exponents& e) const {
  if (e[0] > zeta_cap) return false;
  return weight(e) <= degree_cap;
}

void SeriesLayout::validate() const {
  if (time_vars < 1 || num_vars() > kMaxVars) {
    std::ostringstream os;
    os << "series: time variable count must be in [1, " << (kMaxVars - 1) / 2 << "]";
    throw TruncationOrderError(os.str());
  }
  if (zeta_cap < 0 || degree_cap < 0 || degree_cap > 120)
    throw TruncationOrderError("series: caps must lie in [0, 120]");
}

TruncatedSeries::TruncatedSeries(const SeriesLayout& layout) : layout_(layout) {
  layout_.validate();
}

TruncatedSeries TruncatedSeries::constant(const SeriesLayout& layout, cplx c) {
  TruncatedSeries s(layout);
  s.add_term(Exponents{}, c);
  return s;
}

TruncatedSeries TruncatedSeries::variable(const SeriesLayout& layout, int var) {
  if (var < 0 || var >= layout.num_vars()) throw TruncationOrderError("series: no such variable");
  Exponents e{};
  e[var] = 1;
  return monomial(layout, e, 1.0);
}

TruncatedSeries TruncatedSeries::monomial(const SeriesLayout& layout, const Exponents& e, cplx c) {
  TruncatedSeries s(layout);
  s.add_term(e, c);
  return s;
}

cplx TruncatedSeries::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? cplx(0) : it->second;
}

void TruncatedSeries::add_term(const Exponents& e, cplx c) {
  if (c == cplx(0) || !layout_.admits(e)) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx(0)) terms_.erase(it);
  }
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  if (!(layout_ == o.layout_)) throw TruncationOrderError("series: layout mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  if (!(layout_ == o.layout_)) throw TruncationOrderError("series: layout mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(cplx c) {
  if (c == cplx(0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (!(a.layout_ == b.layout_)) throw TruncationOrderError("series: layout mismatch");
  const SeriesLayout& L = a.layout_;
  const int nv = L.num_vars();
  TruncatedSeries out(L);
  for (const auto& [ea, ca] : a.terms_) {
    const int wa = L.weight(ea);
    for (const auto& [eb, cb] : b.terms_) {
      if (wa + L.weight(eb) > L.degree_cap) continue;
      Exponents e{};
      for (int v = 0; v < nv; ++v) e[v] = static_cast<std::uint8_t>(ea[v] + eb[v]);
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

TruncatedSeries TruncatedSeries::truncated(int max_weight) const {
  TruncatedSeries out(layout_);
  for (const auto& [e, c] : terms_)
    if (layout_.weight(e) <= max_weight) out.terms_.emplace(e, c);
  return out;
}

TruncatedSeries TruncatedSeries::inverse() const {
  cplx c0 = constant_term();
  if (c0 == cplx(0)) throw SingularStateError("series: constant term is not invertible");
  // 1/(c0 (1 + u)) = (1/c0) sum (-u)^k, u has no constant term
  TruncatedSeries u = *this * (1.0 / c0);
  u.terms_.erase(Exponents{});
  TruncatedSeries neg_u = -u;
  TruncatedSeries acc = constant(layout_, 1.0);
  TruncatedSeries power = acc;
  for (int k = 1; k <= layout_.degree_cap; ++k) {
    power = power * neg_u;
    if (power.terms_.empty()) break;
    acc += power;
  }
  return acc * (1.0 / c0);
}

double TruncatedSeries::max_abs(int max_weight) const {
  double m = 0;
  for (const auto& [e, c] : terms_)
    if (layout_.weight(e) <= max_weight) m = std::max(m, std::abs(c));
  return m;
}

TruncatedSeries miwa_shift(const TruncatedSeries& f, Direction direction, cplx scale) {
  const SeriesLayout& L = f.layout();
  if (L.zeta_cap < 1) throw TruncationOrderError("miwa_shift: zeta cap must be at least 1");
  const int M = L.time_vars;
  const int offset = direction == Direction::z ? 0 : M;

  // binomial rows up to the degree cap
  std::vector<std::vector<double>> binom(L.degree_cap + 1);
  for (int n = 0; n <= L.degree_cap; ++n) {
    binom[n].assign(n + 1, 1.0);
    for (int k = 1; k < n; ++k) binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
  }

  TruncatedSeries out(L);
  for (const auto& [e, c] : f.terms()) {
    // expand prod_j (z_j + (scale/j) zeta^j)^{e_j}; k_j factors pick the shift
    std::vector<int> ks(M + 1, 0);
    for (;;) {
      Exponents m = e;
      cplx coef = c;
      int zeta_pow = e[0];
      for (int j = 1; j <= M; ++j) {
        int var = offset + j;
        int ej = e[var];
        int k = ks[j];
        m[var] = static_cast<std::uint8_t>(ej - k);
        zeta_pow += j * k;
        if (k > 0) coef *= binom[ej][k] * std::pow(scale / static_cast<double>(j), k);
      }
      if (zeta_pow <= L.zeta_cap) {
        m[0] = static_cast<std::uint8_t>(zeta_pow);
        out.add_term(m, coef);
      }
      int j = 1;
      while (j <= M) {
        if (ks[j] < e[offset + j]) {
          ++ks[j];
          break;
        }
        ks[j] = 0;
        ++j;
      }
      if (j > M) break;
    }
  }
  return out;
}

}  // namespace conifold::hirota
