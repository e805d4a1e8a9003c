#include <doctest.h>

#include <algorithm>

#include "finitype/ifsmodel.hpp"
#include "support.hpp"

using namespace finitype;
using namespace finitype::testing;

namespace {

bool has_issue(const ValidationResult& r, IfsErrc code) {
  return std::any_of(r.issues.begin(), r.issues.end(), [&](const ValidationIssue& i) { return i.code == code; });
}

}  // namespace

TEST_SUITE("ifsmodel") {

TEST_CASE("golden model is valid") {
  auto r = validate(golden_spec());
  REQUIRE(r.ok());
  CHECK(r.issues.empty());
  CHECK(r.model->map_count() == 2);
  CHECK(r.model->supported_by_theory());
  CHECK(r.model->normalized() == std::vector<Rational>{1, 1});
}

TEST_CASE("thirds m=5 model is valid") {
  auto r = validate(thirds_spec(5));
  REQUIRE(r.ok());
  CHECK(r.model->rho().constant_term() == Rational(1, 3));
}

TEST_CASE("Cantor gap is rejected") {
  IfsSpec s;
  s.field = third_field();
  s.translations = {s.field.zero(), s.field.from_rational(Rational(2, 3))};
  s.probabilities = uniform_probabilities(1);
  auto r = validate(s);
  CHECK_FALSE(r.ok());
  CHECK(has_issue(r, IfsErrc::SupportNotInterval));
}

TEST_CASE("structural errors") {
  IfsSpec s = golden_spec();
  SUBCASE("one map") {
    s.translations.pop_back();
    s.probabilities = {Rational(1)};
    CHECK(has_issue(validate(s), IfsErrc::TooFewMaps));
  }
  SUBCASE("count mismatch") {
    s.probabilities.push_back(Rational(0));
    CHECK(has_issue(validate(s), IfsErrc::CountMismatch));
  }
  SUBCASE("not increasing") {
    std::swap(s.translations[0], s.translations[1]);
    CHECK(has_issue(validate(s), IfsErrc::TranslationsNotIncreasing));
  }
  SUBCASE("not rescaled") {
    s.translations[1] = s.translations[1] * Rational(1, 2);
    CHECK(has_issue(validate(s), IfsErrc::NotRescaled));
  }
  SUBCASE("non-positive probability") {
    s.probabilities = {Rational(0), Rational(1)};
    CHECK(has_issue(validate(s), IfsErrc::NonPositiveProbability));
  }
  SUBCASE("sum not one") {
    s.probabilities = {Rational(1, 2), Rational(1, 3)};
    CHECK(has_issue(validate(s), IfsErrc::ProbabilitiesNotNormalized));
  }
}

TEST_CASE("every issue is reported, with indices") {
  IfsSpec s = thirds_spec(3);
  s.probabilities = {Rational(1, 2), Rational(-1, 4), Rational(1, 2), Rational(1, 4)};
  auto r = validate(s);
  CHECK_FALSE(r.ok());
  CHECK(has_issue(r, IfsErrc::NonPositiveProbability));
  auto it = std::find_if(r.issues.begin(), r.issues.end(),
                         [](const auto& i) { return i.code == IfsErrc::NonPositiveProbability; });
  CHECK(it->index == 1);
  CHECK_THROWS_AS(validated(s), IfsValidationError);
}

TEST_CASE("irregular probabilities and the override") {
  IfsSpec s = thirds_spec(3, {Rational(1, 4), Rational(1, 8), Rational(3, 8), Rational(1, 4)});
  auto strict = validate(s);
  CHECK_FALSE(strict.ok());
  CHECK(has_issue(strict, IfsErrc::IrregularProbabilities));
  auto loose = validate(s, {true});
  REQUIRE(loose.ok());
  CHECK_FALSE(loose.model->supported_by_theory());
  CHECK(loose.model->warnings().size() == 1);
}

TEST_CASE("uniform probabilities") {
  CHECK(uniform_probabilities(1) == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(uniform_probabilities(5) == std::vector<Rational>(6, Rational(1, 6)));
  CHECK_THROWS(uniform_probabilities(0));
}

TEST_CASE("binomial convolution probabilities") {
  CHECK(binomial_convolution_probabilities(3) ==
        std::vector<Rational>{Rational(1, 8), Rational(3, 8), Rational(3, 8), Rational(1, 8)});
  CHECK(binomial_convolution_probabilities(5) == std::vector<Rational>{Rational(1, 32), Rational(5, 32),
                                                                       Rational(5, 16), Rational(5, 16),
                                                                       Rational(5, 32), Rational(1, 32)});
  CHECK(binomial_convolution_probabilities(1) == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK_THROWS(binomial_convolution_probabilities(0));
}

TEST_CASE("validation is idempotent and normalizes by p_0") {
  IfsModel m = validated(thirds_spec(4, binomial_convolution_probabilities(4)));
  auto again = validate(m.spec());
  CHECK(again.ok());
  CHECK(again.model->normalized() == m.normalized());
  CHECK(m.normalized() == std::vector<Rational>{1, 4, 6, 4, 1});
  CHECK(*std::min_element(m.normalized().begin(), m.normalized().end()) == 1);
}

TEST_CASE("rescale maps the support onto [0,1]") {
  IfsSpec s;
  s.field = third_field();
  s.translations = {s.field.from_rational(Rational(5)), s.field.from_rational(Rational(1)),
                    s.field.from_rational(Rational(3))};
  s.probabilities = {Rational(1, 4), Rational(1, 4), Rational(1, 2)};
  CHECK_FALSE(validate(s).ok());
  IfsSpec r = rescale(s);
  CHECK(r.translations.front().is_zero());
  CHECK(r.translations.back() == s.field.one() - s.field.rho());
  CHECK(r.translations[1] == s.field.from_rational(Rational(1, 3)));
  // the probability of the map at 3 followed it to the middle
  CHECK(r.probabilities == std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(1, 4)});
  CHECK(validate(r).ok());
}

TEST_CASE("issue names") {
  CHECK(std::string(to_string(IfsErrc::SupportNotInterval)) == "SupportNotInterval");
}

}  // TEST_SUITE
