#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "wong/bessel_ops.hpp"
#include "wong/catalog.hpp"

using namespace wong;

namespace {

constexpr double kPi = std::numbers::pi;

double xi_norm_multiplier(double z, double r) {
  const std::array<double, 1> xi{r};
  return bessel_multiplier(BesselOrder(z), xi);
}

Field gaussian(const Grid& g) {
  return Field::sample(g, [](std::span<const double> x) { return Complex(std::exp(-x[0] * x[0])); },
                       true);
}

// Composite Simpson rule on [a, b] with an even number of panels.
template <typename F>
double simpson(F&& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("bessel_multiplier values") {
  CHECK(xi_norm_multiplier(0.0, 3.7) == 1.0);
  CHECK(xi_norm_multiplier(-2.5, 0.0) == 1.0);
  CHECK(xi_norm_multiplier(2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  const std::array<double, 2> xi2{0.6, 0.8};  // |xi| = 1
  CHECK(bessel_multiplier(BesselOrder(2.0), xi2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(BesselOrder{std::nan("")}, std::invalid_argument);
  CHECK_THROWS_AS(BesselOrder{kInf}, std::invalid_argument);
}

TEST_CASE("multiplier group law holds pointwise on grid frequencies") {
  // Orders on a 1/64 lattice keep z + w exact, so only pow() rounding remains.
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> order(-512, 512);
  for (std::size_t n : {64u, 1024u, 16384u}) {
    const Grid g = Grid::make(1, n, 40.0);
    const auto xi = g.frequencies();
    for (int trial = 0; trial < 50; ++trial) {
      const double z = order(rng) / 64.0;
      const double w = order(rng) / 64.0;
      for (double k : xi) {
        const std::array<double, 1> v{k};
        const double lhs = bessel_multiplier(BesselOrder(z), v) * bessel_multiplier(BesselOrder(w), v);
        const double rhs = bessel_multiplier(BesselOrder(z + w), v);
        REQUIRE(std::abs(lhs - rhs) <= 1e-15 * rhs);
      }
    }
  }
}

TEST_CASE("bessel_potential") {
  SUBCASE("order zero is the identity") {
    const Grid g = Grid::make(1, 256, 20.0);
    const Field f = random_band_limited(g, 3, 1.0);
    CHECK((bessel_potential(f, BesselOrder(0.0)) - f).max_abs() <= 1e-14 * f.max_abs());
  }
  SUBCASE("single mode |xi0| = 1 is scaled by 1/2 at z = 2") {
    const Grid g = Grid::make(1, 128, 2 * kPi * 8);  // k = 8 gives xi = 1
    const Field f = Field::sample(g, [](std::span<const double> x) { return std::polar(1.0, x[0]); });
    // direct spectral oracle: the mode is an eigenvector with eigenvalue (1+1)^(-1)
    const Field expected = f * 0.5;
    CHECK((bessel_potential(f, BesselOrder(2.0)) - expected).max_abs() <= 1e-12);
  }
  SUBCASE("z = 2 in 1-D matches convolution with exp(-|x|)/2") {
    const Grid g = Grid::make(1, 4096, 40.0);
    const Field j2 = bessel_potential(gaussian(g), BesselOrder(2.0));
    double worst = 0.0;
    for (std::size_t j = 1536; j <= 2560; j += 32) {
      const double x = g.coordinate(j);  // [-5, 5]
      // split at the kink y = x
      const auto integrand = [x](double y) { return 0.5 * std::exp(-std::abs(x - y)) * std::exp(-y * y); };
      const double oracle = simpson(integrand, -14.0, x, 20000) + simpson(integrand, x, 14.0, 20000);
      worst = std::max(worst, std::abs(j2[j].real() - oracle));
    }
    CHECK(worst <= 1e-6);
  }
  SUBCASE("rejects spectral input") {
    const Grid g = Grid::make(1, 16, 1.0);
    CHECK_THROWS_AS(bessel_potential(Field::zeros(g, Representation::spectral), BesselOrder(1.0)),
                    std::invalid_argument);
  }
}

TEST_CASE("verify_group_law") {
  const Grid g = Grid::make(1, 4096, 40.0);
  const Field f = random_band_limited(g, 11, 1.0);
  CHECK(verify_group_law(f, BesselOrder(0.0), BesselOrder(0.0)) == 0.0);
  CHECK(verify_group_law(f, BesselOrder(1.0), BesselOrder(1.0)) <= 1e-12);
  CHECK(verify_group_law(f, BesselOrder(0.7), BesselOrder(1.3)) <= 1e-12);
  CHECK(verify_group_law(f, BesselOrder(-1.0), BesselOrder(2.0)) <= 1e-12);
  const Grid g2 = Grid::make(2, 64, 20.0);
  CHECK(verify_group_law(random_band_limited(g2, 2, 1.5), BesselOrder(0.5), BesselOrder(-1.5)) <= 1e-12);
  CHECK_THROWS_AS(verify_group_law(Field::zeros(g, Representation::physical), BesselOrder(1.0),
                                   BesselOrder(1.0)),
                  std::invalid_argument);
}

TEST_CASE("kernel_mass") {
  const Grid fine = Grid::make(1, 16384, 80.0);
  // oracle: integral of exp(-|x|)/2 is 1; F L_s(0) = 1 with L_s >= 0 for every s > 0
  CHECK(std::abs(kernel_mass(2.0, fine) - 1.0) <= 1e-4);
  CHECK(std::abs(kernel_mass(4.0, fine) - 1.0) <= 1e-4);
  CHECK(std::abs(kernel_mass(1.0, fine) - 1.0) <= 1e-4);
  CHECK(std::abs(kernel_mass(0.5, fine) - 1.0) <= 1e-2);
  CHECK_THROWS_AS(kernel_mass(0.0, fine), std::invalid_argument);
  CHECK_THROWS_AS(kernel_mass(-1.0, fine), std::invalid_argument);
}

TEST_CASE("discretized kernels are nonnegative up to ringing") {
  const Grid g = Grid::make(1, 4096, 40.0);
  for (double s : {1.0, 2.0, 4.0}) {
    const Field kernel = inverse_transform(bessel_weights(g, BesselOrder(s)));
    double negative = 0.0;
    for (const auto& v : kernel.values()) negative += std::max(0.0, -v.real());
    CHECK(negative * g.spacing() <= 1e-6);
  }
}

TEST_CASE("seminorm") {
  const Grid g = Grid::make(1, 4096, 40.0);
  const Field phi = gaussian(g);
  for (double p : {1.0, 2.0, 3.0, kInf}) CHECK(seminorm(phi, 0.0, p) == lp_norm(phi, p));

  SUBCASE("single mode picks up the multiplier") {
    const Grid gm = Grid::make(1, 128, 2 * kPi * 8);
    const double amplitude = 1.75;
    const Field mode =
        Field::sample(gm, [&](std::span<const double> x) { return std::polar(amplitude, x[0]); });
    // (1 + 1)^(+2/2) = 2
    CHECK(seminorm(mode, 2.0, kInf) == doctest::Approx(2.0 * amplitude).epsilon(1e-12));
  }
  SUBCASE("Gaussian seminorm grows with the order") {
    for (double p : {1.0, 2.0, kInf}) CHECK(seminorm(phi, 1.0, p) <= seminorm(phi, 2.0, p));
  }
  CHECK_THROWS_AS(seminorm(phi, -0.5, 2.0), std::invalid_argument);
}

TEST_CASE("seminorm is nondecreasing in the order across the catalog") {
  const Grid g = Grid::make(1, 4096, 40.0);
  const std::array<double, 5> orders{0.0, 0.5, 1.0, 2.0, 4.0};
  for (const auto& fn : build_catalog(g, catalog_names(), 10, 1, 1.0))
    for (double p : {1.0, 2.0, kInf}) {
      double previous = 0.0;
      for (double s : orders) {
        const double value = seminorm(fn.field, s, p);
        INFO(fn.name, " p=", p, " s=", s);
        CHECK(value >= previous * (1.0 - 1e-8));
        previous = value;
      }
    }
}

TEST_CASE("Bessel potentials of positive order contract every Lp norm") {
  const Grid g = Grid::make(1, 4096, 40.0);
  for (const auto& fn : build_catalog(g, catalog_names(), 10, 100, 1.0))
    for (double s : {0.5, 1.0, 2.0, 4.0})
      for (double p : {1.0, 2.0, kInf}) {
        INFO(fn.name, " s=", s, " p=", p);
        CHECK(lp_norm(bessel_potential(fn.field, BesselOrder(s)), p) <=
              (1.0 + 1e-6) * lp_norm(fn.field, p));
      }
}

TEST_CASE("derivative factorization") {
  const Grid g = Grid::make(1, 4096, 40.0);
  const Field phi = gaussian(g);

  SUBCASE("alpha = 0") {
    const std::array<int, 1> alpha{0};
    const auto check = derivative_factorization_check(phi, alpha, 1.5);
    CHECK(check.reconstruction_error <= 1e-12);
    CHECK(check.factor_mass == kernel_mass(1.5, g));
  }
  SUBCASE("first derivative with s = 2") {
    const std::array<int, 1> alpha{1};
    const auto check = derivative_factorization_check(phi, alpha, 2.0);
    CHECK(check.reconstruction_error <= 1e-10);
    // the direct route itself matches the analytic derivative -2x exp(-x^2)
    const Field d = apply_multiplier(phi, [](std::span<const double> xi) { return Complex(0.0, xi[0]); });
    double worst = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double x = g.coordinate(j);
      worst = std::max(worst, std::abs(d[j] - (-2.0 * x * std::exp(-x * x))));
    }
    CHECK(worst <= 1e-10);
  }
  SUBCASE("factor kernel mass equals ||(exp(-|x|)/2)'||_1 = 1") {
    const Grid fine = Grid::make(1, 16384, 80.0);
    const std::array<int, 1> alpha{1};
    const auto check = derivative_factorization_check(
        Field::sample(fine, [](std::span<const double> x) { return Complex(std::exp(-x[0] * x[0])); }, true),
        alpha, 2.0);
    CHECK(std::abs(check.factor_mass - 1.0) <= 1e-3);
  }
  SUBCASE("mixed derivative in 2-D") {
    const Grid g2 = Grid::make(2, 128, 20.0);
    const std::array<int, 2> alpha{1, 1};
    const auto check = derivative_factorization_check(random_band_limited(g2, 4, 2.0), alpha, 2.5);
    CHECK(check.reconstruction_error <= 1e-10);
    CHECK(check.factor_mass > 0.0);
  }
  SUBCASE("s must exceed |alpha|") {
    const std::array<int, 1> alpha{2};
    CHECK_THROWS_AS(derivative_factorization_check(phi, alpha, 2.0), std::invalid_argument);
    const std::array<int, 2> wrong_rank{1, 0};
    CHECK_THROWS_AS(derivative_factorization_check(phi, wrong_rank, 3.0), std::invalid_argument);
  }
}
