#include <numbers>
#include <random>

#include "doctest.h"
#include "lds/copula.hpp"
#include "oracles.hpp"

using namespace lds;
using namespace lds::copula;

TEST_CASE("hungarian basics") {
  auto r = hungarian({7.0}, 1, Sense::min);
  CHECK(r.sigma == std::vector<int>{0});
  CHECK(r.value == 7.0);

  std::vector<double> m = {1, 2, 3, 2, 4, 6, 3, 6, 9};
  CHECK(hungarian(m, 3, Sense::min).value == 10.0);  // anti-diagonal 3 + 4 + 3
  CHECK(hungarian_five_step(m, 3, Sense::min).value == 10.0);

  CHECK_THROWS_AS(hungarian({1, 2, 3}, 2, Sense::min), NonSquare);
  std::vector<double> inf = {1, std::numeric_limits<double>::infinity(), 2, 3};
  CHECK_THROWS_AS(hungarian(inf, 2, Sense::min), NonFinite);
}

TEST_CASE("hungarian equals exhaustive search on random integer matrices") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> entry(-50, 100);
  for (int inst = 0; inst < 100; ++inst) {
    size_t n = 2 + inst % 7;  // up to 8x8
    std::vector<double> cost(n * n);
    for (auto& c : cost) c = entry(rng);
    for (Sense s : {Sense::min, Sense::max}) {
      double expect = oracles::brute_assignment(cost, n, s == Sense::max);
      CHECK(hungarian(cost, n, s).value == expect);
      if (inst % 3 == 0) CHECK(hungarian_five_step(cost, n, s).value == expect);
    }
  }
}

TEST_CASE("five-step reference agrees with the augmenting-path solver") {
  std::mt19937 rng(97);
  std::uniform_int_distribution<int> entry(0, 40);
  for (size_t n : {12, 24, 40}) {
    std::vector<double> cost(n * n);
    for (auto& c : cost) c = entry(rng);
    for (Sense s : {Sense::min, Sense::max})
      CHECK(hungarian_five_step(cost, n, s).value == hungarian(cost, n, s).value);
  }
}

TEST_CASE("hungarian is deterministic") {
  std::mt19937 rng(43);
  std::uniform_int_distribution<int> entry(0, 5);  // many ties
  std::vector<double> cost(36);
  for (auto& c : cost) c = entry(rng);
  auto a = hungarian(cost, 6, Sense::min);
  auto b = hungarian(cost, 6, Sense::min);
  CHECK(a.sigma == b.sigma);
}

TEST_CASE("copula_extremal worked cases") {
  auto single = copula_extremal(GridFunction::uniform(1, {0.7}), Sense::max);
  CHECK(single.value == doctest::Approx(0.7));
  CHECK(single.shuffle.n == 1);
  CHECK(single.shuffle.sigma == std::vector<int>{0});

  // indicator of equal halves: max 1 via identity, min 0 via the swap
  std::vector<double> eye = {1, 0, 0, 1};
  CHECK(copula_extremal(GridFunction::uniform(2, eye), Sense::max).value ==
        doctest::Approx(1.0));
  CHECK(copula_extremal(GridFunction::uniform(2, eye), Sense::min).value ==
        doctest::Approx(0.0));
}

TEST_CASE("min never exceeds max; equality only for constant grids") {
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> u(0, 1);
  for (int inst = 0; inst < 20; ++inst) {
    size_t n = 2 + inst % 5;
    std::vector<double> vals(n * n);
    for (auto& v : vals) v = u(rng);
    auto g = GridFunction::uniform(n, vals);
    double mn = copula_extremal(g, Sense::min).value;
    double mx = copula_extremal(g, Sense::max).value;
    CHECK(mn <= mx + 1e-15);
  }
  auto flat = GridFunction::uniform(3, std::vector<double>(9, 0.4));
  CHECK(copula_extremal(flat, Sense::min).value ==
        doctest::Approx(copula_extremal(flat, Sense::max).value));
}

TEST_CASE("frechet bounds") {
  CHECK(frechet(0.0, 0.8) == std::pair{0.0, 0.0});
  CHECK(frechet(1.0, 0.8) == std::pair{0.8, 0.8});
  CHECK(frechet(0.7, 0.6).first == doctest::Approx(0.3));
  CHECK(frechet(0.7, 0.6).second == doctest::Approx(0.6));
}

TEST_CASE("copula axioms check") {
  std::vector<double> eye = {1, 0, 0, 1};
  CHECK(copula_axioms_check(eye, 2));
  std::vector<double> neg = {1.1, -0.1, -0.1, 1.1};
  CHECK(!copula_axioms_check(neg, 2));

  // Birkhoff mixture of five permutation matrices
  std::mt19937 rng(53);
  size_t n = 6;
  std::vector<double> mix(n * n, 0.0);
  std::vector<double> weights = {0.3, 0.25, 0.2, 0.15, 0.1};
  std::vector<int> perm(n);
  for (double w : weights) {
    for (size_t i = 0; i < n; ++i) perm[i] = (int)i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (size_t i = 0; i < n; ++i) mix[i * n + (size_t)perm[i]] += w;
  }
  CHECK(copula_axioms_check(mix, n));
}

TEST_CASE("sandwich of a constant function is flat") {
  auto cells = [](double, double, double, double) { return std::make_pair(0.37, 0.37); };
  for (int n : {1, 3, 6}) {
    auto r = sandwich_bounds(cells, n, Sense::max);
    CHECK(r.lb == doctest::Approx(0.37));
    CHECK(r.ub == doctest::Approx(0.37));
  }
}

TEST_CASE("product sandwich brackets 1/3") {
  // sup over copulas of int xy dC is attained at C = M with value 1/3
  auto r = sandwich_bounds(exact_extrema_product(), 8, Sense::max);
  CHECK(r.lb <= 1.0 / 3 + 1e-12);
  CHECK(r.ub >= 1.0 / 3 - 1e-12);
  CHECK(r.ub - r.lb < 0.02);
}

TEST_CASE("sin sandwich is monotone at small levels") {
  double prev_lb = -1, prev_ub = 2;
  for (int n = 3; n <= 6; ++n) {
    auto r = sandwich_bounds(exact_extrema_sin_sum(), n, Sense::max);
    CHECK(r.lb >= prev_lb - 1e-12);
    CHECK(r.ub <= prev_ub + 1e-12);
    CHECK(r.lb <= 0.371175);
    CHECK(0.371175 <= r.ub);
    prev_lb = r.lb;
    prev_ub = r.ub;
  }
}

TEST_CASE("shuffle integration") {
  auto xy = [](double x, double y) { return x * y; };
  CHECK(shuffle_integrate(xy, ShuffleOfM::M(), 10000) == doctest::Approx(1.0 / 3).epsilon(1e-6));
  CHECK(shuffle_integrate(xy, ShuffleOfM::W(), 10000) == doctest::Approx(1.0 / 6).epsilon(1e-6));

  // the conjectured maximizer of the sine example
  ShuffleOfM sh;
  sh.n = 2;
  sh.s = {Rational(0), Rational(3, 4), Rational(1)};
  sh.sigma = {0, 1};
  sh.omega = {-1, 1};
  double expect = 3.0 / (4 * std::numbers::sqrt2) - 1 / (2 * std::numbers::pi);
  CHECK(shuffle_integrate(sin_sum, sh, 10000) == doctest::Approx(expect).epsilon(1e-6));
  CHECK(expect == doctest::Approx(0.371175).epsilon(1e-5));
}

TEST_CASE("shuffle reconstruction of piecewise-constant extremal values") {
  std::mt19937 rng(59);
  std::uniform_real_distribution<double> u(-1, 1);
  size_t n = 8;
  std::vector<double> vals(n * n);
  for (auto& v : vals) v = u(rng);
  auto g = GridFunction::uniform(n, vals);
  for (Sense s : {Sense::min, Sense::max}) {
    auto ext = copula_extremal(g, s);
    auto step = [&](double x, double y) {
      size_t i = std::min(n - 1, (size_t)(x * n));
      size_t j = std::min(n - 1, (size_t)(y * n));
      return g.at(i, j);
    };
    CHECK(shuffle_integrate(step, ext.shuffle, 4096) == doctest::Approx(ext.value).epsilon(1e-12));
  }
}

TEST_CASE("companion partition of a shuffle is square") {
  ShuffleOfM sh;
  sh.n = 3;
  sh.s = {Rational(0), Rational(1, 2), Rational(3, 4), Rational(1)};
  sh.sigma = {2, 0, 1};
  sh.omega = {1, 1, -1};
  auto t = sh.t();
  REQUIRE(t.size() == 4);
  for (size_t i = 0; i < 3; ++i) {
    size_t j = (size_t)sh.sigma[i];
    CHECK(t[j + 1] - t[j] == sh.s[i + 1] - sh.s[i]);
  }
}

TEST_CASE("ftd integrand conventions") {
  FtdParams p;
  p.validate();
  // both defaulting at time zero pays the asset-1 loss against the t_0 term
  CHECK(ftd_integrand(0.0, 0.0, p) == doctest::Approx(1.0 - p.R1));
  // both defaults after maturity pay nothing
  CHECK(ftd_integrand(0.9, 0.95, p) == doctest::Approx(0.0));
  // sane range on a sample grid
  for (double x : {0.1, 0.5, 0.9})
    for (double y : {0.1, 0.5, 0.9}) CHECK(ftd_integrand(x, y, p) >= 0.0);

  FtdParams bad = p;
  bad.payment_times = {1.0, 2.0};
  CHECK_THROWS(bad.validate());
  bad = p;
  bad.lambda1 = 0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("lipschitz gap") {
  CHECK(lipschitz_gap(0, 5) == 0.0);
  double l = std::numbers::pi * std::numbers::sqrt2;
  CHECK(lipschitz_gap(l, 10) == doctest::Approx(2 * std::numbers::pi / 1024));
  CHECK(lipschitz_gap(3.0, 7) == doctest::Approx(2 * lipschitz_gap(3.0, 8)));
}

TEST_CASE("grid sampler stays inside the exact extrema") {
  auto exact = exact_extrema_sin_sum();
  auto sampled = grid_sampler(sin_sum, 8);
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 50; ++i) {
    double x0 = u(rng) * 0.9, y0 = u(rng) * 0.9;
    double x1 = x0 + 0.05, y1 = y0 + 0.05;
    auto [emn, emx] = exact(x0, x1, y0, y1);
    auto [smn, smx] = sampled(x0, x1, y0, y1);
    CHECK(smn >= emn - 1e-12);
    CHECK(smx <= emx + 1e-12);
  }
}
