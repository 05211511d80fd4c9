#pragma once

#include <span>
#include <vector>

#include "conifold/numeric.hpp"

namespace conifold::gw {

// q = exp(2 pi i t)
template <class C>
C nome(const C& t);

// Non-constant-map free energy: Li_3(q) at g = 0, and
// (-1)^{g-1} B_{2g} / (2g (2g-2)!) Li_{3-2g}(q) for g >= 1.
template <class C>
C free_energy_genus(int g, const C& t);

// (-1)^{g-1} chi B_{2g} B_{2g-2} / (4g (2g-2) (2g-2)!), g >= 2.
Rational constant_map_contribution(int g, int chi);

// sum_{g <= G} lambda^{2g-2} F^g(t) with lambda = 2 pi lambda_check.
template <class C>
C genus_truncation(int max_genus, const C& lambda_check, const C& t);

// Equivariant potential with anti-diagonal action.
cplx eval_F_ad(const cplx& lambda_check, const cplx& t, const cplx& x, const cplx& kappa);

struct DifferenceCheck {
  cplx second_difference;  // log G(t+l) - 2 log G(t) + log G(t-l)
  cplx rhs;                // log(1 - q)
  cplx residual;           // folded mod 2 pi i
  int folds = 0;
};

DifferenceCheck check_difference_equation(const cplx& lambda_check, const cplx& t);

// Same with log G replaced by its genus-G truncation.
DifferenceCheck check_truncated_difference(int max_genus, const cplx& lambda_check, const cplx& t);

struct HDifferenceCheck {
  cplx residual;  // log H(t+w1) - log H(t) + log(1 - exp(2 pi i t / w2)), folded
  int folds = 0;
};

HDifferenceCheck check_H_difference(const cplx& t, const cplx& w1, const cplx& w2);

struct GFirstDifferenceCheck {
  cplx residual;  // log G(t+l) - log G(t) + log H(t+l | l, 1), folded
  int folds = 0;
};

GFirstDifferenceCheck check_G_first_difference(const cplx& lambda_check, const cplx& t);

struct AsymptoticScan {
  std::vector<double> eps;
  std::vector<double> log_eps;
  std::vector<double> log_remainder;
  double slope = 0;
};

// Least-squares slope of log|log G - truncation| against log eps along
// lambda_check = eps e^{i theta}. Evaluated in quad precision.
AsymptoticScan asymptotic_remainder_scan(const cplx& t, double theta, std::span<const double> eps,
                                         int max_genus);

std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace conifold::gw
