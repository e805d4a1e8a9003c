#include <doctest.h>

#include "properties.hpp"

using namespace finitype;
using namespace finitype::testing;

TEST_SUITE("properties") {

TEST_CASE("1000 randomized cases") {
  auto r = run_property_cases(1000);
  CHECK(r.cases == 1000);
  CHECK(r.checks > 8000);
  for (std::size_t i = 0; i < r.failures.size() && i < 10; ++i) MESSAGE(r.failures[i]);
  CHECK(r.ok());
}

TEST_CASE("a different seed also passes") {
  auto r = run_property_cases(200, 7);
  CHECK(r.ok());
}

TEST_CASE("helpers") {
  CHECK(props::total(rmat({{1, 2}, {0, 3}})) == 6);
  CHECK(props::lines_nonzero(rmat({{1, 0}, {0, 1}})));
  CHECK_FALSE(props::lines_nonzero(rmat({{1, 1}, {0, 0}})));
  CHECK_FALSE(props::lines_nonzero(rmat({{1, 0}, {1, 0}})));
}

}  // TEST_SUITE
