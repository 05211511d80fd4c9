#include <doctest.h>

#include <random>

#include "conifold/barnes.hpp"
#include "conifold/errors.hpp"
#include "conifold/gw.hpp"
#include "conifold/specfun.hpp"
#include "oracles.hpp"

using namespace conifold;

namespace {
const cplx I(0, 1);
const double two_pi = 2 * M_PI;
}  // namespace

TEST_CASE("free energies") {
  cplx t(0.3, 0.4);
  cplx q = gw::nome(t);
  CHECK(std::abs(q - std::exp(two_pi * I * t)) < 1e-15);
  CHECK(std::abs(gw::free_energy_genus(0, t) - oracle::polylog_series(3, q)) < 1e-14);
  CHECK(std::abs(gw::free_energy_genus(1, t) + std::log(1.0 - q) / 12.0) < 1e-15);
  CHECK(std::abs(gw::free_energy_genus(2, t) - q / (240.0 * (1.0 - q) * (1.0 - q))) < 1e-15);
  for (int g = 1; g <= 5; ++g) CHECK(std::abs(gw::free_energy_genus(g, cplx(0.2, 8.0))) < 1e-20);
  CHECK_THROWS_AS(gw::free_energy_genus(1, cplx(0.3, -0.1)), DomainError);
}

TEST_CASE("free energies are 1-periodic in t") {
  cplx t(-0.37, 0.31);
  for (int g = 0; g <= 5; ++g) {
    cplx a = gw::free_energy_genus(g, t), b = gw::free_energy_genus(g, t + 1.0);
    CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("constant map contributions") {
  CHECK(gw::constant_map_contribution(2, 2) == Rational(1, 2880));
  for (int g = 2; g <= 6; ++g) CHECK(gw::constant_map_contribution(g, 0) == 0);
  Rational ref = Rational(2) * oracle::bernoulli(6) * oracle::bernoulli(4) / Rational(4 * 3 * 4 * 24);
  CHECK(gw::constant_map_contribution(3, 2) == ref);
  CHECK_THROWS_AS(gw::constant_map_contribution(1, 2), DomainError);
}

TEST_CASE("genus zero second derivative sign") {
  // (1/(2 pi) d/dt)^2 Li_3(q) = log(1 - q), by finite differences in t
  cplx t(0.15, 0.35);
  double h = 1e-3;
  cplx d2 = (gw::free_energy_genus(0, t + h) - 2.0 * gw::free_energy_genus(0, t) +
             gw::free_energy_genus(0, t - h)) / (h * h * two_pi * two_pi);
  CHECK(std::abs(d2 - std::log(1.0 - gw::nome(t))) < 1e-5);
}

TEST_CASE("equivariant potential") {
  cplx l(0.1, 0.1), t(0.3, 0.4), kappa(1.0);
  cplx base = barnes::log_G(t, l, cplx(1.0));
  CHECK(std::abs(gw::eval_F_ad(l, t, 0.0, kappa) - base) < 1e-15);
  for (cplx x : {cplx(0.5), cplx(1.0), cplx(-1.3, 0.2)}) {
    cplx classical = std::pow(two_pi, 3) * I * t * x * x / (2.0 * kappa * kappa * l * l);
    CHECK(std::abs(gw::eval_F_ad(l, t, x, kappa) - classical - base) < 1e-12);
  }
  // golden at x = kappa = 1: log G reached from t + l through the first-difference relation
  cplx via_shift = barnes::log_G(t + l, l, cplx(1.0)) + barnes::log_H(t + l, l, cplx(1.0));
  cplx golden = std::pow(two_pi, 3) * I * t / (2.0 * l * l) + via_shift;
  CHECK(std::abs(fold_two_pi_i(gw::eval_F_ad(l, t, 1.0, 1.0) - golden).value) < 1e-11);
  CHECK_THROWS_AS(gw::eval_F_ad(l, t, 1.0, 0.0), DomainError);
}

TEST_CASE("central difference equation on a random grid") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.21, 0.99), mod(0.05, 0.3), arg(-1.4, 1.4);
  double worst = 0, shift = 0;
  for (int i = 0; i < 50; ++i) {
    cplx t(re(rng), im(rng));
    cplx l = std::polar(mod(rng), arg(rng));
    auto d = gw::check_difference_equation(l, t);
    worst = std::max(worst, std::abs(d.residual));
    if (i < 5) shift = std::max(shift, std::abs(gw::check_difference_equation(l, t + 1.0).residual - d.residual));
  }
  CHECK(worst <= 1e-8);
  CHECK(shift <= 1e-8);
}

TEST_CASE("H and G first differences") {
  for (cplx t : {cplx(0.3, 0.4), cplx(-0.2, 0.7), cplx(0.45, 0.25)}) {
    for (cplx l : {cplx(0.1, 0.1), cplx(0.25, -0.05), cplx(0.05, 0.2)}) {
      CHECK(std::abs(gw::check_H_difference(t, l, cplx(1.0)).residual) <= 1e-8);
      CHECK(std::abs(gw::check_G_first_difference(l, t).residual) <= 1e-8);
    }
  }
}

TEST_CASE("genus-truncated surrogate residual order") {
  cplx t(0.2, 0.45);
  double theta = 0.3;
  for (int G = 0; G <= 2; ++G) {
    std::vector<double> x, y;
    for (double eps : gw::log_spaced(0.02, 0.08, 7)) {
      auto d = gw::check_truncated_difference(G, std::polar(eps, theta), t);
      x.push_back(std::log(eps));
      y.push_back(std::log(std::abs(d.residual)));
    }
    CHECK(std::abs(oracle::slope(x, y) - (2 * G + 2)) < 0.2);
  }
}

TEST_CASE("asymptotic remainder slopes") {
  auto eps = gw::log_spaced(1e-2, 1e-1, 9);
  cplx t(0.25, 0.1104);
  REQUIRE(std::abs(gw::nome(t)) <= 0.5);
  for (int G : {0, 2, 3}) {
    auto scan = gw::asymptotic_remainder_scan(t, M_PI / 4, eps, G);
    CHECK(std::abs(scan.slope - 2 * G) <= 0.2);
  }
}
