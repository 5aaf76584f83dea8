#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pv/audit.hpp"
#include "pv/quadrature.hpp"
#include "pv/theorems.hpp"

using namespace pv;

namespace {

AnalyticFunction identity_map() {
  return AnalyticFunction::make("power", {{"m", 1.0}}, 0.0);
}

TheoremParams make_params(int thm, const AnalyticFunction& f, double alpha, double beta,
                          double theta, int n, int m = 1) {
  TheoremParams p;
  p.theorem = thm;
  p.f = f;
  p.comb = CombinationParams{alpha, beta, theta};
  p.order = FamilyOrder{n, m};
  return p;
}

KernelKind kernel_of(int thm) {
  switch (thm) {
    case 1: return KernelKind::cos_odd;
    case 2: return KernelKind::xsin_odd;
    case 3: return KernelKind::sin_even;
    case 4: return KernelKind::cos_even;
    case 5: return KernelKind::sin_mixed;
    default: return KernelKind::cos_mixed;
  }
}

}  // namespace

TEST_CASE("closed trigonometric anchors for the identity map", "[theorems]") {
  for (double theta : {0.5, 1.0, 2.2}) {
    TheoremParams p1 = make_params(1, identity_map(), 0.0, 1.0, theta, 0);
    CHECK(theorem_value(p1, FormulaMode::audited).value ==
          Catch::Approx(kPi * std::sin(theta)).margin(1e-13));

    TheoremParams p2 = make_params(2, identity_map(), 0.0, 1.0, theta, 0);
    CHECK(theorem_value(p2, FormulaMode::audited).value ==
          Catch::Approx(-kPi * std::cos(theta)).margin(1e-13));
  }
}

TEST_CASE("identity-map sums collapse onto the kernel forms", "[theorems]") {
  struct Probe {
    int thm;
    int n, m;
  };
  const Probe probes[] = {{1, 0, 1}, {1, 2, 1}, {2, 0, 1}, {2, 2, 1},
                          {3, 1, 1}, {3, 2, 1}, {4, 1, 1}, {4, 2, 1},
                          {5, 0, 1}, {5, 1, 2}, {6, 0, 1}, {6, 1, 2}};
  const double beta = 0.8, theta = 1.3;
  for (const Probe& pr : probes) {
    TheoremParams p = make_params(pr.thm, identity_map(), 0.0, beta, theta, pr.n, pr.m);
    FamilyOrder o{pr.n, pr.m};
    for (FormVariant v : {FormVariant::printed, FormVariant::corrected}) {
      // printed forms chain only where theorem and kernel share the same
      // defect status; the even cosine family and the mixed pair weights
      // were printed independently and disagree in printed form
      if (pr.thm >= 4 && v == FormVariant::printed) continue;
      double lhs = theorem_closed_form(p, v).value;
      double rhs = 2.0 * beta * kernel_closed(kernel_of(pr.thm), theta, o, v);
      INFO("thm " << pr.thm << " n=" << pr.n << " m=" << pr.m);
      CHECK(lhs == Catch::Approx(rhs).margin(1e-13 * (1.0 + std::abs(rhs))));
    }
  }
}

TEST_CASE("conjugate symmetry of the sampled harmonics", "[theorems]") {
  AnalyticFunction f = AnalyticFunction::make("exp", {}, 0.2);
  for (int thm : {1, 3, 5}) {
    TheoremParams p = make_params(thm, f, 0.2, 0.5, 0.9, thm == 3 ? 1 : 1, 1);
    TermEvaluations te = term_evaluations(p);
    REQUIRE(te.psi.size() == te.phi.size());
    for (std::size_t i = 0; i < te.psi.size(); ++i)
      CHECK(std::abs(te.phi[i] - std::conj(te.psi[i])) < 1e-14);
    for (std::size_t i = 0; i < te.gamma.size(); ++i)
      CHECK(std::abs(te.lambda[i] - std::conj(te.gamma[i])) < 1e-14);
  }
}

TEST_CASE("zero frequency kills the cosine-type families exactly", "[theorems]") {
  AnalyticFunction f = AnalyticFunction::make("exp", {}, 0.3);
  for (int thm : {1, 4, 6}) {
    TheoremParams p = make_params(thm, f, 0.3, 0.6, 0.0, thm == 4 ? 1 : 0, 1);
    CHECK(std::abs(theorem_value(p, FormulaMode::audited).value) < 1e-14);
  }
}

TEST_CASE("constant inputs are annihilated in audited mode", "[theorems]") {
  AnalyticFunction one = AnalyticFunction::make("power", {{"m", 0.0}}, 0.0);
  for (int thm = 1; thm <= 6; ++thm) {
    if (thm == 2) continue;  // x-weighted family needs theta > 0 anyway; covered below
    TheoremParams p = make_params(thm, one, 0.0, 0.7, 1.1, thm == 3 || thm == 4 ? 1 : 0, 1);
    CHECK(std::abs(theorem_value(p, FormulaMode::audited).value) < 1e-14);
  }
  TheoremParams p2 = make_params(2, one, 0.0, 0.7, 1.1, 0);
  CHECK(std::abs(theorem_value(p2, FormulaMode::audited).value) < 1e-14);
  // the pair half-weight defect leaves a constant residue in the printed form
  TheoremParams p5 = make_params(5, one, 0.0, 0.7, 1.1, 0, 1);
  CHECK(std::abs(theorem_closed_form(p5, FormVariant::printed).value) > 1e-3);
}

TEST_CASE("imaginary residue stays at rounding level for catalog inputs", "[theorems]") {
  AnalyticFunction f = AnalyticFunction::make("sinh", {}, 0.1);
  TheoremParams p = make_params(5, f, 0.1, 0.5, 0.8, 1, 2);
  ClosedFormValue c = theorem_value(p, FormulaMode::audited);
  CHECK(c.imagResidual < 1e-12);
  CHECK(c.mode == FormulaMode::audited);
  CHECK(c.signFactor == 1);
}

TEST_CASE("series rows match the frequency-shifted kernels", "[theorems]") {
  SeriesFunction g;
  g.M = {0.0, 1.0};
  CHECK(table1_value(1, g, 1.0, {0, 1}).value ==
        Catch::Approx(kPi * std::sin(1.0)).margin(1e-12));
  CHECK(table1_value(3, g, 1.0, {1, 1}).value ==
        Catch::Approx(0.5 * kPi * std::sin(2.0)).margin(1e-12));

  // superposition in the coefficients
  SeriesFunction a, b, sum;
  a.M = {0.0, 1.0};
  b.M = {0.0, 0.0, 0.5};
  sum.M = {0.0, 1.0, 0.5};
  for (int row = 1; row <= 4; ++row) {
    FamilyOrder o{row <= 2 ? 1 : 1, 1};
    double va = table1_value(row, a, 0.9, o).value;
    double vb = table1_value(row, b, 0.9, o).value;
    double vs = table1_value(row, sum, 0.9, o).value;
    CHECK(vs == Catch::Approx(va + vb).margin(1e-12 * (1.0 + std::abs(vs))));
  }
}

TEST_CASE("second series row records the sign repair", "[theorems]") {
  SeriesFunction g;
  g.M = {0.3, 1.0, 0.25};
  ClosedFormValue v = table1_value(2, g, 1.1, {1, 1});
  CHECK(v.signFactor == -1);
  CHECK(v.value ==
        Catch::Approx(table1_closed_form(2, g, 1.1, {1, 1}, FormVariant::corrected).value)
            .margin(1e-14));
  double printed = table1_closed_form(2, g, 1.1, {1, 1}, FormVariant::printed).value;
  CHECK(printed != Catch::Approx(v.value).margin(1e-6));
}

TEST_CASE("specialization rows on the unit circle", "[theorems]") {
  AnalyticFunction f = AnalyticFunction::make("exp", {}, 0.0);
  CombinationParams unit{0.0, 1.0, 0.0};
  for (double theta : {0.7, 1.4}) {
    unit.theta = theta;
    CHECK(table2_value(1, f, unit).value ==
          Catch::Approx(kPi * std::exp(std::cos(theta)) * std::sin(std::sin(theta)))
              .margin(1e-12));
    CHECK(table2_value(2, f, unit).value ==
          Catch::Approx(kPi * (1.0 - std::exp(std::cos(theta)) * std::cos(std::sin(theta))))
              .margin(1e-12));
  }

  // the printed second row already carries the sign repair
  unit.theta = 1.0;
  CHECK(table2_closed_form(2, f, unit, FormVariant::printed).value ==
        Catch::Approx(table2_closed_form(2, f, unit, FormVariant::corrected).value)
            .margin(1e-14));

  // the printed third row drops a conjugate term and leaks an imaginary part
  AnalyticFunction h = AnalyticFunction::make("sinh", {}, 0.0);
  CombinationParams c3{0.0, 0.6, 0.9};
  CHECK(table2_closed_form(3, h, c3, FormVariant::printed).imagResidual > 1e-6);
  CHECK(table2_closed_form(3, h, c3, FormVariant::corrected).imagResidual < 1e-13);

  // fourth row is the order-one x-weighted family
  CombinationParams c4{0.0, 0.5, 1.2};
  TheoremParams p = make_params(2, f, 0.0, 0.5, 1.2, 1);
  CHECK(table2_value(4, f, c4).value ==
        Catch::Approx(theorem_value(p, FormulaMode::audited).value).margin(1e-14));
}

TEST_CASE("generated families route through the governing sums", "[theorems]") {
  const double theta = 0.9;

  GeneratorParams g61;
  g61.powerExponent = 3;
  g61.comb = CombinationParams{0.0, 1.0, theta};
  g61.order = FamilyOrder{1, 1};
  CHECK(generator_value(61, g61, FormulaMode::audited).value ==
        Catch::Approx(2.0 * kernel_value(KernelKind::cos_odd, 3.0 * theta, {1, 1},
                                         FormulaMode::audited)
                          .value)
            .margin(1e-13));

  GeneratorParams g63 = g61;
  CHECK(generator_value(63, g63, FormulaMode::audited).value ==
        Catch::Approx(2.0 * kernel_value(KernelKind::sin_even, 3.0 * theta, {1, 1},
                                         FormulaMode::audited)
                          .value)
            .margin(1e-13));

  struct Map {
    int id;
    int thm;
    const char* fname;
    double printedScale;  // printed value relative to audited; 0 = same
  };
  const Map maps[] = {{64, 1, "exp", 0.0},  {66, 2, "exp", -1.0}, {68, 1, "sinh", 0.5},
                      {70, 3, "sinh", 0.0}, {72, 1, "cos_exp", 0.0}, {74, 1, "log1p", 0.0}};
  for (const Map& m : maps) {
    GeneratorParams gp;
    gp.comb = CombinationParams{m.thm == 3 ? 0.2 : 0.2, 0.5, theta};
    gp.order = FamilyOrder{1, 1};
    AnalyticFunction f = AnalyticFunction::make(m.fname, {}, gp.comb.alpha);
    TheoremParams p = make_params(m.thm, f, gp.comb.alpha, gp.comb.beta, theta, 1);
    double expect = theorem_value(p, FormulaMode::audited).value;
    double got = generator_value(m.id, gp, FormulaMode::audited).value;
    INFO("generated family " << m.id);
    CHECK(got == Catch::Approx(expect).margin(1e-12 * (1.0 + std::abs(expect))));
    if (m.printedScale != 0.0) {
      double printed = generator_closed_form(m.id, gp, FormVariant::printed).value;
      CHECK(printed == Catch::Approx(m.printedScale * got)
                           .margin(1e-12 * (1.0 + std::abs(got))));
    }
  }

  GeneratorParams g76;
  g76.comb = CombinationParams{0.0, 1.0, theta};
  g76.order = FamilyOrder{1, 1};
  CHECK(generator_range(76, g76) == RangeStatus::boundary);
  AnalyticFunction lg = AnalyticFunction::make("log1p", {}, 0.0);
  TheoremParams p76 = make_params(1, lg, 0.0, 1.0, theta, 1);
  CHECK(generator_value(76, g76, FormulaMode::audited).value ==
        Catch::Approx(theorem_value(p76, FormulaMode::audited).value).margin(1e-12));
}

TEST_CASE("worked cases", "[theorems]") {
  ExampleParams ep;
  ep.theta = 1.0;

  // first case: the integrand holds half of the doubled combination, and the
  // printed value also flips the orientation
  AnalyticFunction ee = AnalyticFunction::make("exp_exp", {}, 0.0);
  TheoremParams inner = make_params(2, ee, 0.0, 1.0, ep.theta, 0);
  double audited1 = example_value(1, ep, FormulaMode::audited).value;
  CHECK(audited1 ==
        Catch::Approx(0.5 * theorem_value(inner, FormulaMode::audited).value).margin(1e-13));
  double printed1 = example_closed_form(1, ep, FormVariant::printed).value;
  CHECK(printed1 == Catch::Approx(-2.0 * audited1).margin(1e-12));

  // second case: closed value against its explicit elementary form and the oracle
  ep.b = 1.0;
  auto S = [&](double y) {
    return std::sin(0.5 * ep.b * std::log1p(y * y)) * std::sinh(ep.b * std::atan(y));
  };
  double v2 = example_value(2, ep, FormulaMode::audited).value;
  CHECK(v2 == Catch::Approx(kPi / 24.0 * (3.0 * S(1.0) - S(3.0))).margin(1e-14));
  PVResult r2 = pv_integrate(example_integrand(2, ep));
  CHECK(std::abs(v2 - r2.value) <= std::max(1e-8, 3.0 * r2.errorEstimate));

  // third case reduces to the even-family sum with a squared-arctangent source
  AnalyticFunction at = AnalyticFunction::make("atan_sq", {}, 0.0);
  TheoremParams p3 = make_params(4, at, 0.0, 1.0, ep.theta, 2);
  CHECK(example_value(3, ep, FormulaMode::audited).value ==
        Catch::Approx(-2.0 * theorem_value(p3, FormulaMode::audited).value).margin(1e-13));
  CHECK(example_range(3, ep) == RangeStatus::boundary);
}

TEST_CASE("finite-interval variant", "[theorems]") {
  AnalyticFunction f = AnalyticFunction::make("exp", {}, 0.0);
  double beta = 0.6, phi = 1.1;
  double expect = kPi * (std::exp(beta) -
                         (std::exp(cx(beta * std::cos(phi), beta * std::sin(phi)))).real());
  ClosedFormValue v = remark1_value(f, beta, phi);
  CHECK(v.value == Catch::Approx(expect).margin(1e-13));

  // rescaling the half-line family onto the unit interval
  TheoremParams p = make_params(3, f, 0.0, beta, 0.5 * phi, 1);
  CHECK(v.value ==
        Catch::Approx(4.0 * theorem_value(p, FormulaMode::audited).value).margin(1e-12));
}

TEST_CASE("integrand metadata", "[theorems]") {
  AnalyticFunction f = AnalyticFunction::make("exp", {}, 0.0);
  TheoremParams p1 = make_params(1, f, 0.0, 0.5, 1.2, 1);
  PVIntegrand i1 = integrand_for(p1);
  CHECK(i1.poles == odd_poles(1));
  CHECK(i1.decayExponent == Catch::Approx(4.0));
  CHECK(i1.oscillationRate == Catch::Approx(1.2));
  CHECK(i1.numeratorConstant == Catch::Approx(2.0));

  TheoremParams p3 = make_params(3, f, 0.0, 0.5, 1.2, 1);
  PVIntegrand i3 = integrand_for(p3);
  REQUIRE(i3.removablePoints.size() == 1);
  CHECK(i3.removablePoints[0] == 0.0);
  CHECK(std::isfinite(i3.evaluate(1e-9)));

  TheoremParams p5 = make_params(5, f, 0.0, 0.5, 1.2, 1, 2);
  PVIntegrand i5 = integrand_for(p5);
  CHECK(i5.poles == mixed_poles(1, 2));
  CHECK(i5.decayExponent == Catch::Approx(2.0 + 4.0 + 3.0));

  // spot-check the odd family numerator: 2 Re f on the circle over the product
  double x = 0.37;
  double expect = 2.0 * std::exp(0.5 * std::cos(1.2 * x)) *
                  std::cos(0.5 * std::sin(1.2 * x)) / odd_product(1, x);
  CHECK(i1.evaluate(x) == Catch::Approx(expect).epsilon(1e-13));
}

TEST_CASE("parameter validation", "[theorems]") {
  AnalyticFunction f = AnalyticFunction::make("exp", {}, 0.0);
  CHECK_THROWS_AS(theorem_closed_form(make_params(2, f, 0.0, 0.5, 0.0, 0), FormVariant::printed),
                  DomainError);
  CHECK_THROWS_AS(theorem_closed_form(make_params(3, f, 0.0, 0.5, 1.0, 0), FormVariant::printed),
                  DomainError);
  CHECK_THROWS_AS(
      theorem_closed_form(make_params(5, f, 0.0, 0.5, 1.0, 0, 0), FormVariant::printed),
      DomainError);
  CHECK_THROWS_AS(theorem_closed_form(make_params(1, f, 0.0, 0.5, 1.0, 9), FormVariant::printed),
                  DomainError);
  CHECK_NOTHROW(check_theorem_theta(1, 0.0));

  CombinationParams offCircle{0.1, 1.0, 1.0};
  CHECK_THROWS_AS(table2_closed_form(1, f, offCircle, FormVariant::printed), DomainError);

  GeneratorParams bad;
  bad.powerExponent = 0;
  bad.comb = CombinationParams{0.0, 1.0, 1.0};
  bad.order = FamilyOrder{1, 1};
  CHECK_THROWS_AS(generator_closed_form(61, bad, FormVariant::printed), DomainError);

  ExampleParams ep0;
  ep0.theta = 0.0;
  CHECK_THROWS_AS(example_closed_form(1, ep0, FormVariant::printed), DomainError);

  AnalyticFunction lg = AnalyticFunction::make("log1p", {}, 0.0);
  CHECK(validate_theorem_params(make_params(1, lg, 0.0, 1.0, 1.0, 1)) ==
        RangeStatus::boundary);
  CHECK(validate_theorem_params(make_params(1, f, 0.0, 1.0, 1.0, 1)) ==
        RangeStatus::interior);
}
