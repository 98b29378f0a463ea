#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "horokit/counting.hpp"
#include "horokit/horocycle.hpp"

using namespace horokit;

namespace {

std::array<long long, 4> mat_mul(const std::array<long long, 4>& a,
                                 const std::array<long long, 4>& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

std::array<long long, 4> random_gamma(std::mt19937& rng, int max_len = 5) {
  std::uniform_int_distribution<int> pick(0, 2);
  std::array<long long, 4> g{1, 0, 0, 1};
  int len = 1 + static_cast<int>(rng() % max_len);
  for (int i = 0; i < len; ++i) {
    switch (pick(rng)) {
      case 0: g = mat_mul(g, {1, 1, 0, 1}); break;   // T
      case 1: g = mat_mul(g, {1, -1, 0, 1}); break;  // T^{-1}
      default: g = mat_mul(g, {0, -1, 1, 0}); break; // S
    }
  }
  return g;
}

// independent brute-force count over the scaled box (exp coordinates swap in
// the corrected corner coordinate)
long long brute_count_sl3(const std::vector<double>& H, bool exp_coords) {
  double B12 = std::exp(H[0] - H[1]);
  double B23 = std::exp(H[1] - H[2]);
  double B13 = std::exp(H[0] - H[2]);
  long long f12 = static_cast<long long>(std::floor(B12));
  long long f23 = static_cast<long long>(std::floor(B23));
  long long count = 0;
  long long nmax = static_cast<long long>(std::floor(2.0 * B13)) + 2;
  for (long long a = -f12; a <= f12; ++a)
    for (long long b = -f23; b <= f23; ++b)
      for (long long m = -nmax; m <= nmax; ++m) {
        double coord = exp_coords ? m - 0.5 * static_cast<double>(a) * b : static_cast<double>(m);
        if (std::abs(coord) <= B13) ++count;
      }
  return count;
}

}  // namespace

TEST_CASE("fundamental domain reduction") {
  SECTION("z = i is already reduced") {
    auto p = reduce_point({0.0, 1.0});
    CHECK(std::abs(p.reduced - CPoint(0, 1)) < 1e-15);
    CHECK(p.height == Catch::Approx(1.0));
    CHECK(p.reducing_word.empty());
  }
  SECTION("points of the fundamental domain are fixed") {
    for (CPoint z : {CPoint(0.3, 1.7), CPoint(-0.49, 2.0), CPoint(0.2, 0.99)}) {
      if (std::norm(z) < 1.0) continue;
      auto p = reduce_point(z);
      CHECK(std::abs(p.reduced - z) < 1e-14);
    }
  }
  SECTION("deep thin point reduces with a nontrivial word") {
    auto p = reduce_point({10.3, 1e-4});
    CHECK(p.reducing_word.size() >= 1);
    CHECK(std::abs(p.reduced.real()) <= 0.5 + 1e-12);
    CHECK(std::norm(p.reduced) >= 1.0 - 1e-12);
  }
  SECTION("non-finite input is rejected") {
    CHECK_THROWS_AS(reduce_point({0.0, -1.0}), argument_error);
    CHECK_THROWS_AS(reduce_point({std::nan(""), 1.0}), argument_error);
  }
  SECTION("heights: sqrt of the cusp height, bounded below") {
    CHECK(invariant_height({0.0, 100.0}) == Catch::Approx(10.0));
    CHECK(invariant_height({0.0, 1.0}) == Catch::Approx(1.0));
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> ux(-8.0, 8.0), uy(0.01, 5.0);
    double floor_h = std::sqrt(std::sqrt(3.0) / 2.0);
    for (int i = 0; i < 200; ++i)
      CHECK(invariant_height({ux(rng), uy(rng)}) >= floor_h - 1e-12);
  }
  SECTION("height is a class function") {
    std::mt19937 rng(31);
    for (int i = 0; i < 50; ++i) {
      CPoint z(0.31, 0.9);
      auto g = random_gamma(rng);
      CPoint gz = mobius(g, z);
      CHECK(invariant_height(gz) == Catch::Approx(invariant_height(z)).epsilon(1e-10));
    }
  }
}

TEST_CASE("incomplete Eisenstein series") {
  EisensteinBump psi(1.2, 3.0);

  SECTION("support rules out z = 5i entirely") {
    CHECK(eval_test_function(psi, {0.0, 5.0}) == 0.0);
    CHECK(eval_test_function(psi, {0.0, 2.0}) >= psi.psi(2.0));
  }
  SECTION("zero bump gives the zero function") {
    EisensteinBump zero(1.2, 3.0, 0.0);
    CHECK(eval_test_function(zero, {0.37, 0.02}) == 0.0);
    CHECK(zero.mean() == 0.0);
  }
  SECTION("support start at or below 1 is rejected") {
    CHECK_THROWS_AS(EisensteinBump(1.0, 3.0), argument_error);
  }
  SECTION("Gamma invariance along random words") {
    std::mt19937 rng(23);
    for (int i = 0; i < 60; ++i) {
      CPoint z(0.21, 1.1);
      auto g = random_gamma(rng);
      CPoint gz = mobius(g, z);
      CHECK(std::abs(eval_test_function(psi, z) - eval_test_function(psi, gz)) < 1e-8);
    }
  }
  SECTION("unfolded mean matches 2-D quadrature over the fundamental domain") {
    // f vanishes above y = b, so the cusp tail is empty
    auto inner = [&](double x) {
      double y0 = std::sqrt(1.0 - x * x);
      auto fy = [&](double y) { return eval_test_function(psi, {x, y}) / (y * y); };
      return composite_gauss_legendre(fy, y0, psi.b, 96);
    };
    double direct = 3.0 / M_PI * composite_gauss_legendre(inner, -0.5, 0.5, 96);
    CHECK(psi.mean() == Catch::Approx(direct).epsilon(5e-3));
  }
}

TEST_CASE("horocycle averages") {
  EisensteinBump psi(1.2, 3.0);

  SECTION("t = 0 closed average equals the height-1 line integral") {
    HoroExperiment exp;
    exp.closed = true;
    exp.t_grid = {0.0};
    auto rows = horocycle_average(exp, psi);
    double direct = adaptive_gauss_legendre(
        [&](double s) { return eval_test_function(psi, {s, 1.0}); }, 0.0, 1.0, 1e-12);
    CHECK(rows[0].average == Catch::Approx(direct).epsilon(1e-9));
  }
  SECTION("constants integrate exactly in the composite rule") {
    double v = composite_gauss_legendre([](double) { return 3.25; }, 0.0, 1.0, 7);
    CHECK(v == Catch::Approx(3.25).epsilon(1e-15));
  }
  SECTION("resolution rule is enforced") {
    HoroExperiment exp;
    exp.t_grid = {-1.0};
    exp.n_factor = 5.0;
    CHECK_THROWS_AS(horocycle_average(exp, psi), invariant_error);
  }
  SECTION("positive t is rejected") {
    HoroExperiment exp;
    exp.t_grid = {0.5};
    CHECK_THROWS_AS(horocycle_average(exp, psi), argument_error);
  }
}

TEST_CASE("decay fitting") {
  SECTION("pure exponential is recovered") {
    std::vector<std::pair<double, double>> samples;
    for (double t = -12; t <= -4; t += 1) samples.emplace_back(t, std::exp(0.5 * t));
    auto fit = fit_decay(samples);
    REQUIRE_FALSE(fit.rejected);
    CHECK(fit.slope_q0 == Catch::Approx(0.5).margin(1e-9));
    CHECK(fit.resid_q0 < 1e-12);
  }
  SECTION("polynomial-corrected decay is recovered by the q = 1 fit") {
    std::vector<std::pair<double, double>> samples;
    for (double t = -12; t <= -4; t += 1)
      samples.emplace_back(t, (1.0 + std::abs(t)) * std::exp(0.5 * t));
    auto fit = fit_decay(samples);
    REQUIRE_FALSE(fit.rejected);
    CHECK(fit.slope_q1 == Catch::Approx(0.5).margin(1e-6));
    // log(1+|t|) regressor carries coefficient 1
    CHECK(fit.qcoef_q1 == Catch::Approx(1.0).margin(1e-5));
    CHECK(fit.resid_q1 < 1e-10);
  }
  SECTION("noise-floor samples reject the fit") {
    std::vector<std::pair<double, double>> samples;
    std::vector<double> quad;
    for (double t = -8; t <= -4; t += 1) {
      samples.emplace_back(t, 1e-14);
      quad.push_back(1e-14);
    }
    auto fit = fit_decay(samples, quad);
    CHECK(fit.rejected);
  }
}

TEST_CASE("height averages") {
  SECTION("deep cusp at t = 0: flat horocycle") {
    auto rows = height_average({0.0, 1e4}, {0.0});
    CHECK(rows[0].value == Catch::Approx(100.0).epsilon(1e-9));
    CHECK(rows[0].ratio == Catch::Approx(0.01).epsilon(1e-9));
  }
  SECTION("base point i: bounded ratios on [-6, 0]") {
    std::vector<double> grid;
    for (double t = -6; t <= 0; t += 1) grid.push_back(t);
    auto rows = height_average({0.0, 1.0}, grid);
    for (const auto& r : rows) {
      CHECK(r.ratio > 0);
      CHECK(r.ratio < 10.0);
    }
  }
  SECTION("doubling N moves values by less than 0.1%") {
    std::vector<double> grid{-4.0};
    auto a = height_average({0.0, 1.0}, grid, 20.0);
    auto b = height_average({0.0, 1.0}, grid, 40.0);
    CHECK(std::abs(a[0].value - b[0].value) < 1e-3 * std::abs(b[0].value));
  }
  SECTION("no growth trend beyond t = -3") {
    std::vector<double> grid;
    for (double t = -10; t <= 0; t += 0.5) grid.push_back(t);
    for (double y0 : {1.0, 100.0}) {
      auto rows = height_average({0.0, y0}, grid);
      double shallow = 0, deep = 0;
      for (const auto& r : rows)
        (r.t >= -3.0 ? shallow : deep) = std::max(r.t >= -3.0 ? shallow : deep, r.ratio);
      CHECK(deep <= 1.5 * shallow);
    }
  }
}

TEST_CASE("unipotent lattice counting") {
  SECTION("n = 2 at H = 0: the unit box") {
    auto r = unipotent_lattice_count(2, {0.0, 0.0});
    CHECK(r.count_entry == 3);
    CHECK(r.ratio_entry == Catch::Approx(3.0));
  }
  SECTION("n = 2 with e^{alpha(H)} = 10") {
    double l = std::log(10.0) / 2;
    auto r = unipotent_lattice_count(2, {l, -l});
    CHECK(r.count_entry == 21);
    CHECK(r.ratio_entry == Catch::Approx(2.1).epsilon(1e-12));
  }
  SECTION("n = 3 at H = diag(1,0,-1)") {
    auto r = unipotent_lattice_count(3, {1.0, 0.0, -1.0});
    CHECK(r.count_entry == 375);
    CHECK(r.ratio_entry == Catch::Approx(375.0 / std::exp(4.0)).epsilon(1e-12));
    CHECK(r.count_exp == brute_count_sl3({1.0, 0.0, -1.0}, true));
    CHECK(r.count_entry == brute_count_sl3({1.0, 0.0, -1.0}, false));
  }
  SECTION("brute-force agreement for k = 1..3") {
    for (int k = 1; k <= 3; ++k) {
      std::vector<double> H{double(k), 0.0, -double(k)};
      auto r = unipotent_lattice_count(3, H);
      CHECK(r.count_exp == brute_count_sl3(H, true));
      CHECK(r.count_entry == brute_count_sl3(H, false));
    }
  }
  SECTION("guards") {
    CHECK_THROWS_AS(unipotent_lattice_count(3, {-1.0, 0.0, 1.0}), argument_error);
    CHECK_THROWS_AS(unipotent_lattice_count(3, {6.0, 0.0, -6.0}), resource_error);
    CHECK_THROWS_AS(unipotent_lattice_count(4, {0, 0, 0, 0}), argument_error);
  }
}
