#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pv/kernels.hpp"
#include "pv/quadrature.hpp"

using namespace pv;

TEST_CASE("kernel names and serialization ids", "[kernels]") {
  CHECK(std::string(kernel_name(KernelKind::cos_odd)) == "cos_odd");
  CHECK(std::string(kernel_name(KernelKind::cos_mixed)) == "cos_mixed");
  CHECK(std::string(kernel_formula_id(KernelKind::cos_odd)) == "eq19");
  CHECK(std::string(kernel_formula_id(KernelKind::xsin_odd)) == "eq20");
  CHECK(std::string(kernel_formula_id(KernelKind::sin_even)) == "eq21");
  CHECK(std::string(kernel_formula_id(KernelKind::cos_even)) == "eq22");
  CHECK(std::string(kernel_formula_id(KernelKind::sin_mixed)) == "eq23");
  CHECK(std::string(kernel_formula_id(KernelKind::cos_mixed)) == "eq25");
}

TEST_CASE("base facts at spot values", "[kernels]") {
  CHECK(base_fact(BaseFactKind::cos_simple, 1.0, 1.0) ==
        Catch::Approx(0.5 * kPi * std::sin(1.0)).epsilon(1e-14));
  CHECK(base_fact(BaseFactKind::sin_over_x, 2.0, 1.0) ==
        Catch::Approx(kPi / 8.0 * (1.0 - std::cos(2.0))).epsilon(1e-14));
  CHECK(base_fact(BaseFactKind::x_sin, 3.0, 0.5) ==
        Catch::Approx(-0.5 * kPi * std::cos(1.5)).epsilon(1e-14));
}

TEST_CASE("lowest-order kernels reduce to the base facts", "[kernels]") {
  for (double theta : {0.4, 1.0, 2.3}) {
    CHECK(kernel_closed(KernelKind::cos_odd, theta, {0, 1}, FormVariant::printed) ==
          Catch::Approx(base_fact(BaseFactKind::cos_simple, 1.0, theta)).margin(1e-14));
    CHECK(kernel_closed(KernelKind::xsin_odd, theta, {0, 1}, FormVariant::corrected) ==
          Catch::Approx(base_fact(BaseFactKind::x_sin, 1.0, theta)).margin(1e-14));
    CHECK(kernel_closed(KernelKind::sin_even, theta, {1, 1}, FormVariant::printed) ==
          Catch::Approx(base_fact(BaseFactKind::sin_over_x, 2.0, theta)).margin(1e-14));
  }
}

TEST_CASE("first odd cosine family value in closed trigonometric form", "[kernels]") {
  // order one: pi (3 sin t - sin 3t) / 48
  for (double theta : {0.3, 1.0, 1.7}) {
    double expect = kPi * (3.0 * std::sin(theta) - std::sin(3.0 * theta)) / 48.0;
    CHECK(kernel_closed(KernelKind::cos_odd, theta, {1, 1}, FormVariant::printed) ==
          Catch::Approx(expect).margin(1e-14));
  }
}

TEST_CASE("x sin family is minus the theta derivative of the cosine family",
          "[kernels]") {
  double h = 1e-5;
  for (int n : {0, 1, 2}) {
    for (double theta : {0.6, 1.2}) {
      double left = kernel_closed(KernelKind::cos_odd, theta + h, {n, 1}, FormVariant::printed);
      double right = kernel_closed(KernelKind::cos_odd, theta - h, {n, 1}, FormVariant::printed);
      double derivative = (left - right) / (2.0 * h);
      double xsin = kernel_closed(KernelKind::xsin_odd, theta, {n, 1}, FormVariant::corrected);
      CHECK(xsin == Catch::Approx(-derivative).margin(1e-6));
    }
  }
}

TEST_CASE("corrected kernels agree with raw quadrature", "[kernels]") {
  struct Probe {
    KernelKind kind;
    FamilyOrder o;
  };
  for (const Probe& p : {Probe{KernelKind::cos_odd, {1, 1}},
                         Probe{KernelKind::xsin_odd, {1, 1}},
                         Probe{KernelKind::sin_even, {2, 1}},
                         Probe{KernelKind::cos_even, {1, 1}},
                         Probe{KernelKind::sin_mixed, {1, 1}},
                         Probe{KernelKind::cos_mixed, {0, 2}}}) {
    for (double theta : {0.8, 1.4}) {
      double closed = kernel_closed(p.kind, theta, p.o, FormVariant::corrected);
      PVResult res = pv_integrate(kernel_integrand(p.kind, theta, p.o));
      INFO(kernel_name(p.kind) << " theta=" << theta);
      CHECK(std::abs(closed - res.value) <=
            std::max(1e-8, 3.0 * res.errorEstimate));
    }
  }
}

TEST_CASE("printed defects are visible against the oracle", "[kernels]") {
  PVResult r20 = pv_integrate(kernel_integrand(KernelKind::xsin_odd, 1.0, {1, 1}));
  double p20 = kernel_closed(KernelKind::xsin_odd, 1.0, {1, 1}, FormVariant::printed);
  CHECK(std::abs(p20 - r20.value) > 1e-2);
  CHECK(std::abs(-p20 - r20.value) < 1e-7);

  PVResult r22 = pv_integrate(kernel_integrand(KernelKind::cos_even, 0.9, {1, 1}));
  double p22 = kernel_closed(KernelKind::cos_even, 0.9, {1, 1}, FormVariant::printed);
  double c22 = kernel_closed(KernelKind::cos_even, 0.9, {1, 1}, FormVariant::corrected);
  CHECK(std::abs(p22 - r22.value) > 1e-2);
  CHECK(std::abs(c22 - r22.value) < 1e-7);

  // the pair weight halves the pair term at m = 1
  double p23 = kernel_closed(KernelKind::sin_mixed, 1.0, {0, 1}, FormVariant::printed);
  double c23 = kernel_closed(KernelKind::sin_mixed, 1.0, {0, 1}, FormVariant::corrected);
  CHECK(std::abs(p23 - c23) > 1e-3);
}

TEST_CASE("kernel argument validation", "[kernels]") {
  CHECK_THROWS_AS(kernel_closed(KernelKind::sin_even, 1.0, {0, 1}, FormVariant::printed),
                  DomainError);
  CHECK_THROWS_AS(kernel_closed(KernelKind::cos_mixed, 1.0, {0, 0}, FormVariant::printed),
                  DomainError);
  CHECK_THROWS_AS(kernel_closed(KernelKind::cos_odd, -0.5, {0, 1}, FormVariant::printed),
                  DomainError);
  CHECK_THROWS_AS(kernel_closed(KernelKind::xsin_odd, 0.0, {0, 1}, FormVariant::printed),
                  DomainError);
  CHECK_THROWS_AS(kernel_closed(KernelKind::cos_odd, 1.0, {9, 1}, FormVariant::printed),
                  DomainError);
  CHECK_THROWS_AS(base_fact(BaseFactKind::cos_simple, -1.0, 1.0), DomainError);
}
