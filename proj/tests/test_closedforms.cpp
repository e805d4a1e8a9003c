#include <doctest.h>

#include <cmath>

#include "finitype/closedforms.hpp"
#include "support.hpp"

using namespace finitype;
using namespace finitype::testing;
namespace cf = finitype::closedforms;

namespace {

cf::CantorParams params(int R, int m) {
  cf::CantorParams c;
  c.R = R;
  c.m = m;
  return c;
}

// min and max of the essential class from the pipeline
struct Pipeline {
  Enclosure inner, outer;
};

Pipeline pipeline(int m, std::size_t depth = 8) {
  RunParameters p;
  p.bound_len = depth;
  auto a = analyze(cf::cantor_spec(params(3, m)), p);
  const auto& e = a.report.sets[a.report.essential];
  return {e.dim_inner, e.dim_outer};
}

}  // namespace

TEST_SUITE("closedforms") {

TEST_CASE("min formula") {
  CHECK(near(cf::min_formula(params(3, 3)), 0.892790, 1e-6));
  CHECK(near(cf::min_formula(params(3, 5)), 1.05875, 1e-5));
  CHECK(near(cf::min_formula(params(2, 2)), 1.0, 1e-12));
  const double table[] = {.892790, .892790, 1.05875, 1.05875, 1.18029, 1.18029, 1.27620, 1.27620};
  for (int m = 3; m <= 10; ++m) CHECK(near(cf::min_formula(params(3, m)), table[m - 3], 1e-5));
}

TEST_CASE("max formula") {
  CHECK(near(cf::max_formula(params(3, 6)), 1.01434, 1e-5));
  CHECK(near(cf::max_formula(params(3, 3)), 1.13355, 1e-5));
  CHECK(near(cf::max_formula(params(3, 9)), 1.02721, 1e-5));
  const double table[] = {1.13355, 1.05875, 1.02757, 1.01434, 1.01434, 1.01434, 1.02721, 1.03074};
  for (int m = 3; m <= 10; ++m) CHECK(near(cf::max_formula(params(3, m)), table[m - 3], 1e-5));
}

TEST_CASE("isolated point bound") {
  auto [d5, rest5] = cf::isolated_point_bound(params(3, 5));
  CHECK(near(d5, std::log(32.0) / std::log(3.0), 1e-12));
  CHECK(near(d5, 3.154648767, 1e-9));
  CHECK(rest5 < d5);
  auto [d3, rest3] = cf::isolated_point_bound(params(3, 3));
  CHECK(near(d3, 1.892789260, 1e-9));
  (void)rest3;
  cf::CantorParams eq = params(3, 3);
  eq.probabilities = {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)};
  CHECK_THROWS_AS(cf::isolated_point_bound(eq), cf::PreconditionViolated);
}

TEST_CASE("dim at zero from the pipeline matches the isolated point") {
  for (int m : {3, 5}) {
    auto model = validated(cf::cantor_spec(params(3, m)));
    CHECK(near(dim_at_zero(model), cf::isolated_point_bound(params(3, m)).first, 1e-12));
  }
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(cf::min_formula(params(1, 3)), cf::PreconditionViolated);
  CHECK_THROWS_AS(cf::min_formula(params(5, 2)), cf::PreconditionViolated);
  cf::CantorParams short_p = params(3, 3);
  short_p.probabilities = {Rational(1, 2), Rational(1, 2)};
  CHECK_THROWS_AS(cf::max_formula(short_p), cf::PreconditionViolated);
}

TEST_CASE("point locations") {
  CHECK(cf::x_min(params(3, 6)) == Rational(1, 2));
  CHECK(cf::x_min(params(3, 5)) == Rational(2, 5));
  CHECK(cf::x_max(params(3, 3)) == Rational(1, 12));
  CHECK(cf::x_max(params(3, 6)) == Rational(1, 3));
}

TEST_CASE("Cantor spec") {
  IfsSpec s = cf::cantor_spec(params(3, 5));
  CHECK(s.translations.size() == 6);
  CHECK(s.translations[1] == s.field.from_rational(Rational(2, 15)));
  CHECK(s.probabilities == binomial_convolution_probabilities(5));
  CHECK(validate(s).ok());
  CHECK(validate(cf::cantor_spec(params(4, 3))).ok());
}

TEST_CASE("formulas against the pipeline") {
  // actual min and max from the tables, as intervals
  const Enclosure act_min[] = {{.892790, .892790}, {.892790, .892790}, {.972382, .972639}, {.976628, .976628}};
  const Enclosure act_max[] = {{1.13354, 1.13354}, {1.05874, 1.05874}, {1.02757, 1.02757}, {1.01434, 1.01434}};
  for (int m = 3; m <= 6; ++m) {
    CAPTURE(m);
    auto p = pipeline(m);
    CHECK(p.outer.contains(p.inner, 1e-9));
    // interval-valued actual entries only need to meet the outer range
    CHECK(p.outer.lo <= act_min[m - 3].hi + 1e-5);
    CHECK(p.outer.hi >= act_max[m - 3].lo - 1e-5);
    CHECK(near(p.inner.hi, act_max[m - 3].hi, 1e-5));
    if (m != 5) CHECK(near(p.inner.lo, act_min[m - 3].lo, 1e-5));
    if (m <= 4) CHECK(near(p.inner.lo, cf::min_formula(params(3, m)), 1e-5));
    if (m >= 5) CHECK(cf::min_formula(params(3, m)) > p.outer.hi);
  }
}

}  // TEST_SUITE
