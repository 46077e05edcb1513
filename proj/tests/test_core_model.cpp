#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "orbitavg/core_model.hpp"
#include "orbitavg/error.hpp"

using namespace orbitavg;

TEST_CASE("term powers follow the exponents") {
  const TermPowers p = term_powers({1, 2, 3, 4, 5});
  CHECK(p.ry == 2);
  CHECK(p.rx2y == 4);
  CHECK(p.ax3 == 5);
  CHECK(p.lx5 == 8);
  CHECK(p.dcos == 4);
}

TEST_CASE("exponent validation") {
  CHECK_NOTHROW(validate(ScalingExponents{}));
  CHECK_THROWS_AS(validate(ScalingExponents{-1, 1, 1, 1, 1}), DomainError);
  CHECK_THROWS_AS(validate(ScalingExponents{2, 1, 1, 1, 1}), DomainError);
  CHECK_THROWS_AS(validate(ScalingExponents{0, 0, 1, 1, 1}), AveragingInapplicable);
  CHECK_THROWS_AS(validate(ScalingExponents{1, 1, 1, 1, 1}), AveragingInapplicable);
  try {
    validate(ScalingExponents{0, 0, 0, 0, 0});
    FAIL("expected AveragingInapplicable");
  } catch (const AveragingInapplicable& e) {
    CHECK(std::string(e.what()).find("C1 ") != std::string::npos);
  }
}

TEST_CASE("physical and scaled parameter validation") {
  CHECK_NOTHROW(validate(PhysicalParams{0.1, 0.0, 1.0, 0.1}));
  CHECK_THROWS_AS(validate(PhysicalParams{0.1, 0.0, 1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(PhysicalParams{-0.1, 0.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(validate(PhysicalParams{0.1, 0.0, 0.0, 1.0}), DomainError);
  CHECK_NOTHROW(validate(ScaledParams{0.0, -2.0, 0.0, 1.0}));
  CHECK_THROWS_AS(validate(ScaledParams{1.0, 1.0, 1.0, -1.0}), DomainError);
  CHECK_THROWS_AS(validate(ScaledParams{-1.0, 1.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(validate(ScaledParams{1.0, NAN, 1.0, 1.0}), DomainError);
}

TEST_CASE("canonical exponents realise every subcase") {
  for (int id = 1; id <= kSubcaseCount; ++id) {
    CAPTURE(id);
    const ScalingExponents e = canonical_exponents(id);
    const Subcase s = subcase_of(e);
    CHECK(s.id == id);
    CHECK(s == subcase_by_id(id));
    CHECK(s.m_positive == (e.m > 0));
  }
  CHECK_THROWS_AS(subcase_by_id(0), DomainError);
  CHECK_THROWS_AS(subcase_by_id(21), DomainError);
}

TEST_CASE("subcase flags match first-order powers") {
  // brute force over small exponent vectors
  for (int m = 0; m <= 2; ++m)
    for (int n1 = 0; n1 <= 3; ++n1)
      for (int n2 = 0; n2 <= 3; ++n2)
        for (int n3 = 0; n3 <= 3; ++n3)
          for (int n4 = 0; n4 <= 4; ++n4) {
            const ScalingExponents e{m, n1, n2, n3, n4};
            const TermPowers p = term_powers(e);
            const bool ok = n4 >= m && p.ry > 0 && p.rx2y > 0 && p.ax3 > 0 && p.lx5 > 0 && p.dcos > 0;
            if (!ok) {
              CHECK_THROWS(subcase_of(e));
              continue;
            }
            const Subcase s = subcase_of(e);
            CHECK(s.include_ry == (p.ry == 1));
            CHECK(s.include_rx2y == (p.rx2y == 1));
            CHECK(s.include_ax3 == (p.ax3 == 1));
            CHECK(s.include_lx5 == (p.lx5 == 1));
            CHECK(s.include_dcos == (p.dcos == 1));
          }
}

TEST_CASE("theorem to subcase map") {
  const int expected[] = {8, 10, 11, 17, 5, 3, 1, 4};
  for (int k = 1; k <= 8; ++k) {
    CHECK(theorem_subcase(k) == expected[k - 1]);
    CHECK(theorem_of_subcase(expected[k - 1]) == k);
  }
  CHECK(theorem_of_subcase(16) == 0);
  CHECK_THROWS_AS(theorem_subcase(9), DomainError);
  CHECK(subcase_by_id(16).any_term() == false);
  CHECK(subcase_by_id(8).describe() == "r y + -r x^2 y + d cos t");
}

TEST_CASE("scaling round trips") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0), pos(0.1, 3.0), ep(0.005, 0.2);
  std::uniform_int_distribution<int> id(1, kSubcaseCount);
  for (int i = 0; i < 100; ++i) {
    const ScalingExponents e = canonical_exponents(id(rng));
    const double eps = ep(rng);
    const ScaledParams s{pos(rng), u(rng), u(rng), pos(rng)};
    const ScaledParams back = apply_scaling(unscale(s, e, eps), e, eps);
    CHECK(back.r == doctest::Approx(s.r).epsilon(1e-12));
    CHECK(back.a == doctest::Approx(s.a).epsilon(1e-12));
    CHECK(back.l == doctest::Approx(s.l).epsilon(1e-12));
    CHECK(back.d == doctest::Approx(s.d).epsilon(1e-12));
    const State z{u(rng), u(rng)};
    const State zb = unscale_state(scale_state(z, e, eps), e, eps);
    CHECK(zb.x == doctest::Approx(z.x).epsilon(1e-12));
    CHECK(zb.y == doctest::Approx(z.y).epsilon(1e-12));
  }
}

TEST_CASE("unscale uses the powers of eps") {
  const PhysicalParams p = unscale({1.0, 2.0, 3.0, 4.0}, {1, 2, 1, 3, 2}, 0.1);
  CHECK(p.rho == doctest::Approx(0.01));
  CHECK(p.alpha == doctest::Approx(0.2));
  CHECK(p.lambda == doctest::Approx(0.003));
  CHECK(p.delta == doctest::Approx(0.04));
  const State z = scale_state({1.0, -2.0}, {1, 2, 1, 3, 2}, 0.1);
  CHECK(z.x == doctest::Approx(0.1));
  CHECK(z.y == doctest::Approx(-0.2));
}

TEST_CASE("vector field") {
  const PhysicalParams p{0.5, 0.25, 0.125, 2.0};
  const double x = 1.5, y = -0.5, t = 0.7;
  const State f = vector_field(p, t, {x, y});
  CHECK(f.x == y);
  const double expected = -x + p.rho * y - p.alpha * x * x * x - p.rho * x * x * y -
                          p.lambda * std::pow(x, 5) + p.delta * std::cos(t);
  CHECK(f.y == doctest::Approx(expected).epsilon(1e-14));
  const State g = vector_field({}, 0.0, {1.0, 0.0});
  CHECK(g.x == 0.0);
  CHECK(g.y == -1.0);
}

TEST_CASE("state arithmetic") {
  const State a{3.0, 4.0}, b{1.0, -1.0};
  CHECK(norm(a) == 5.0);
  CHECK((a + b).x == 4.0);
  CHECK((a - b).y == 5.0);
  CHECK((2.0 * b).y == -2.0);
}
