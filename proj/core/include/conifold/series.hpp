#pragma once

#include <array>
#include <cstdint>
#include <map>

#include "conifold/numeric.hpp"

namespace conifold::hirota {

inline constexpr int kMaxVars = 16;
using Exponents = std::array<std::uint8_t, kMaxVars>;

// Variables are ordered (zeta, z_1..z_M, zt_1..zt_M). zeta has weight 1 and
// z_j, zt_j weight j; monomials above the weighted degree cap or the zeta cap
// are dropped. Miwa shifts preserve weight, so truncation commutes with them.
struct SeriesLayout {
  int time_vars = 3;
  int zeta_cap = 5;
  int degree_cap = 5;

  int num_vars() const { return 1 + 2 * time_vars; }
  static constexpr int zeta() { return 0; }
  int z(int j) const { return j; }
  int zt(int j) const { return time_vars + j; }
  int weight_of(int var) const { return var == 0 ? 1 : (var <= time_vars ? var : var - time_vars); }
  int weight(const Exponents& e) const;
  bool admits(const Exponents& e) const;
  void validate() const;
  bool operator==(const SeriesLayout&) const = default;
};

class TruncatedSeries {
public:
  using Terms = std::map<Exponents, cplx>;

  TruncatedSeries() = default;
  explicit TruncatedSeries(const SeriesLayout& layout);

  static TruncatedSeries constant(const SeriesLayout& layout, cplx c);
  static TruncatedSeries variable(const SeriesLayout& layout, int var);
  static TruncatedSeries monomial(const SeriesLayout& layout, const Exponents& e, cplx c);

  const SeriesLayout& layout() const { return layout_; }
  const Terms& terms() const { return terms_; }
  cplx coefficient(const Exponents& e) const;
  cplx constant_term() const { return coefficient(Exponents{}); }

  // Adds c x^e unless e lies outside the caps.
  void add_term(const Exponents& e, cplx c);

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(cplx c);
  TruncatedSeries operator-() const;

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(TruncatedSeries a, cplx c) { return a *= c; }
  friend TruncatedSeries operator*(cplx c, TruncatedSeries a) { return a *= c; }

  // Terms of weight <= max_weight.
  TruncatedSeries truncated(int max_weight) const;

  // Multiplicative inverse; requires a nonzero constant term.
  TruncatedSeries inverse() const;

  double max_abs(int max_weight = 1 << 20) const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.layout_ == b.layout_ && a.terms_ == b.terms_;
  }

private:
  SeriesLayout layout_;
  Terms terms_;
};

enum class Direction { z, ztilde };

// z_j <- z_j + scale zeta^j / j (or zt_j), for j = 1..M.
TruncatedSeries miwa_shift(const TruncatedSeries& f, Direction direction, cplx scale);

}  // namespace conifold::hirota
