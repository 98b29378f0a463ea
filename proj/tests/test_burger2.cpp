#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "horokit/schedule.hpp"
#include "ode_oracle.hpp"

using namespace horokit;
using oracle::OFunc;
using oracle::oderiv;
using oracle::oeval;

namespace {

ExpPoly to_exp_poly(const OFunc& f) {
  std::vector<ExpTerm> terms;
  for (const auto& x : f) terms.push_back({x.k, x.mu, x.c});
  return ExpPoly(std::move(terms));
}

// Builds the whole cascade with a single generator of weight alpha_w:
// the leaf at depth k0 is e^{gamma0 t}; each ancestor is the bounded solution
// of  L I_w = -e^{alpha_w t} I_{child}.  Checks the composed identity.
void check_cascade(const std::vector<Complex>& lambda, double alpha_w,
                   const BurgerSchedule& schedule, double gamma0, double tol) {
  int k0 = schedule.k0;
  std::vector<OFunc> level(k0 + 1);  // by word length
  level[k0] = {{0, Complex(gamma0), Complex(1.0)}};
  for (int l = k0 - 1; l >= 0; --l) {
    OFunc forcing;
    for (const auto& x : level[l + 1]) forcing.push_back({x.k, x.mu + alpha_w, -x.c});
    level[l] = oracle::particular(lambda, forcing);
  }

  auto kernels = burger2_coefficients(lambda, {alpha_w}, schedule);
  REQUIRE(kernels.C.size() == 1);
  REQUIRE(kernels.D.size() == static_cast<std::size_t>(k0));

  int W = static_cast<int>(lambda.size());
  ExpPoly rhs = kernel_apply(kernels.C[0], to_exp_poly(level[k0]));
  for (std::size_t w = 0; w < kernels.d_words.size(); ++w) {
    int len = static_cast<int>(kernels.d_words[w].size());
    OFunc d = level[len];
    for (int i = 0; i <= W; ++i) {
      rhs += oeval(d, 0.0) * kernels.D[w][i];
      d = oderiv(d);
    }
  }
  double scale = 0;
  for (double t = -8.0; t <= 0.0; t += 0.5) scale = std::max(scale, std::abs(oeval(level[0], t)));
  for (double t = -8.0; t <= 0.0; t += 0.5) {
    INFO("t = " << t);
    REQUIRE(std::abs(rhs.eval(t) - oeval(level[0], t)) < tol * (scale + 1.0));
  }
}

}  // namespace

TEST_CASE("schedule construction and exact identities") {
  SECTION("case selection") {
    CHECK(BurgerSchedule::make(Rational(2), Rational(1)).case_id == 1);
    CHECK(BurgerSchedule::make(Rational(3), Rational(1)).case_id == 1);
    CHECK(BurgerSchedule::make(Rational(3, 2), Rational(1)).case_id == 2);
    CHECK(BurgerSchedule::make(Rational(1), Rational(1)).case_id == 3);
    CHECK(BurgerSchedule::make(Rational(1), Rational(1)).k0 == 2);
    CHECK(BurgerSchedule::make(Rational(2, 5), Rational(1)).k0 == 5);
  }
  SECTION("exact invariants for random rational pairs") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> num(1, 60), den(1, 20);
    for (int trial = 0; trial < 200; ++trial) {
      Rational alpha(num(rng), den(rng));
      Rational eta(num(rng), den(rng));
      auto s = BurgerSchedule::make(alpha, eta);
      REQUIRE(s.verify());
      if (s.case_id == 3) {
        REQUIRE(s.eps_inner > 0);
        REQUIRE(s.eps_inner <= alpha / 4);
        REQUIRE(s.delta[s.k0 - 1] + alpha > eta);
        for (int l = 0; l < s.k0; ++l) REQUIRE(s.delta[l] + alpha / 2 < eta);
      }
    }
  }
  SECTION("nonpositive inputs are rejected") {
    CHECK_THROWS_AS(BurgerSchedule::make(Rational(0), Rational(1)), argument_error);
    CHECK_THROWS_AS(BurgerSchedule::make(Rational(1), Rational(-1)), argument_error);
  }
}

TEST_CASE("case alpha >= 2 eta reduces to a single application") {
  std::vector<Complex> lambda{Complex(0.3), Complex(1.4, 0.6)};
  auto schedule = BurgerSchedule::make(Rational(5, 2), Rational(1));
  std::vector<double> weights{2.5, 3.0};
  auto ker = burger2_coefficients(lambda, weights, schedule);

  auto spec = order_lambda(lambda, 1.0);
  auto base = kernel_F(spec);
  REQUIRE(ker.C.size() == 2);
  for (std::size_t j = 0; j < 2; ++j) {
    auto expect = base.F.scaled(-1.0).exp_shift_s(weights[ker.c_words[j][0]]);
    for (double t : {-5.0, -1.0})
      for (double s : {-6.0, -2.0, -0.5}) {
        CHECK(std::abs(ker.C[j].eval(t, s) - expect.eval(t, s)) < 1e-12);
      }
  }
  REQUIRE(ker.D.size() == 1);  // only the empty word
  for (int i = 0; i <= spec.W(); ++i)
    for (double t : {-4.0, -0.7}) CHECK(std::abs(ker.D[0][i].eval(t) - base.Fi[i].eval(t)) < 1e-12);
}

TEST_CASE("composed identity against the cascade oracle") {
  SECTION("case 1, W = 1") {
    check_cascade({Complex(0.3)}, 2.5, BurgerSchedule::make(Rational(5, 2), Rational(1)), 3.3,
                  1e-9);
  }
  SECTION("case 2, W = 1") {
    check_cascade({Complex(0.3)}, 1.5, BurgerSchedule::make(Rational(3, 2), Rational(1)), 2.3,
                  1e-9);
  }
  SECTION("case 3, W = 1, k0 = 5") {
    check_cascade({Complex(0.3)}, 0.4, BurgerSchedule::make(Rational(2, 5), Rational(1)), 2.3,
                  1e-8);
  }
  SECTION("case 3, W = 2, k0 = 2") {
    check_cascade({Complex(0.25), Complex(0.85)}, 0.8,
                  BurgerSchedule::make(Rational(4, 5), Rational(1)), 2.3, 1e-8);
  }
  SECTION("case 3, W = 2 complex pair") {
    check_cascade({Complex(0.5, 1.1), Complex(0.5, -1.1)}, 0.9,
                  BurgerSchedule::make(Rational(9, 10), Rational(1)), 2.7, 1e-8);
  }
}

TEST_CASE("bound checks for composed kernels") {
  std::vector<Complex> lambda{Complex(0.5, 1.0), Complex(0.5, -1.0)};
  GridSpec grid;
  grid.nt = grid.ns = 30;

  SECTION("all three cases stay under their envelopes") {
    for (auto [a_num, a_den] : {std::pair{5, 2}, std::pair{3, 2}, std::pair{3, 4}}) {
      auto schedule = BurgerSchedule::make(Rational(a_num, a_den), Rational(1));
      auto ker = burger2_coefficients(lambda, {to_double(schedule.alpha)}, schedule);
      for (std::size_t k = 0; k < ker.C.size(); ++k) {
        auto rep = check_C_bound(ker, k, grid);
        CHECK(std::isfinite(rep.sup_ratio));
        CHECK_FALSE(rep.divergence_flag);
      }
      for (std::size_t w = 0; w < ker.D.size(); ++w) {
        auto rep = check_D_bound(ker, w, grid);
        CHECK(std::isfinite(rep.sup_ratio));
        CHECK_FALSE(rep.divergence_flag);
      }
    }
  }
  SECTION("uniform mode (alpha, eta) = (eps, 1) gives k0 = floor(2/eps)") {
    Rational eps(2, 7);
    auto schedule = BurgerSchedule::make(eps, Rational(1));
    CHECK(schedule.k0 == 7);
    auto ker = burger2_coefficients(lambda, {to_double(eps), 0.5}, schedule, 200);
    CHECK(ker.C.size() == 128);  // 2^7 words
    auto rep = check_C_bound(ker, 0, grid);
    CHECK(std::isfinite(rep.sup_ratio));
  }
  SECTION("violated hypotheses are rejected") {
    auto schedule = BurgerSchedule::make(Rational(1, 2), Rational(1));
    CHECK_THROWS_AS(burger2_coefficients(lambda, {0.3}, schedule), argument_error);
    auto deep = BurgerSchedule::make(Rational(1, 10), Rational(1));
    CHECK_THROWS_AS(burger2_coefficients(lambda, {0.1, 0.1}, deep), resource_error);
  }
}
