#include <doctest.h>

#include "finitype/oracle.hpp"
#include "support.hpp"

using namespace finitype;
using namespace finitype::testing;

TEST_SUITE("oracle") {

TEST_CASE("golden level 1") {
  IfsModel model = golden_model();
  const auto& F = model.field();
  auto snap = brute_level(model, 1);
  const auto r = F.rho();
  CHECK(snap.points == std::vector<FieldElement>{F.zero(), F.one() - r, r, F.one()});
  REQUIRE(snap.intervals.size() == 3);
  CHECK(snap.intervals[0].neighbours == std::vector<FieldElement>{F.zero()});
  CHECK(snap.intervals[1].neighbours.size() == 2);
  CHECK(snap.intervals[1].weights == std::vector<Rational>{1, 1});
  CHECK(snap.intervals[2].right == F.one());
}

TEST_CASE("golden level 2 middle interval") {
  IfsModel model = golden_model();
  const auto& F = model.field();
  const auto r = F.rho();
  auto snap = brute_level(model, 2);
  const NetInterval* hit = nullptr;
  for (const auto& iv : snap.intervals)
    if (iv.left == r * Rational(2) - F.one() && iv.right == F.one() - r) hit = &iv;
  REQUIRE(hit != nullptr);
  CHECK(hit->neighbours == std::vector<FieldElement>{F.zero(), r});
  CHECK(hit->weights == std::vector<Rational>{1, 1});
}

TEST_CASE("uniform m=5 level 1 endpoints") {
  IfsModel model = validated(corpus_input("uniform_m5"));
  const auto& F = model.field();
  auto snap = brute_level(model, 1);
  std::vector<FieldElement> expect;
  // S_j(0) = 2j/15 and S_j(1) = (2j+5)/15
  for (int k : {0, 2, 4, 5, 6, 7, 8, 9, 10, 11, 13, 15}) expect.push_back(F.from_rational(Rational(k, 15)));
  CHECK(snap.points == expect);
}

TEST_CASE("graph agrees with brute force on shipped models") {
  for (const auto& name : fast_inputs()) {
    CAPTURE(name);
    IfsModel model = validated(corpus_input(name));
    auto g = build_graph(model);
    const std::size_t top = model.map_count() == 2 ? 6 : 3;
    for (std::size_t n = 1; n <= top; ++n) {
      CAPTURE(n);
      auto v = check_graph_against_oracle(model, g, n);
      CHECK(v.ok());
      CHECK(v.intervals_checked > 0);
    }
  }
}

TEST_CASE("weights are at least one") {
  IfsModel model = validated(thirds_spec(5));
  auto snap = brute_level(model, 3);
  for (const auto& iv : snap.intervals) {
    REQUIRE_FALSE(iv.weights.empty());
    CHECK(iv.weights.size() == iv.neighbours.size());
    for (const auto& w : iv.weights) CHECK(w >= 1);
  }
}

TEST_CASE("a corrupted edge is caught") {
  IfsModel model = validated(thirds_spec(5));
  auto g = build_graph(model);
  long e = find_edge(g, 4, 5, rmat({{1, 1}, {1, 1}, {0, 1}}));
  if (e < 0) e = static_cast<long>(g.edges.size()) - 1;
  g.edges[e].matrix(0, 0) += 1;
  bool caught = false;
  for (std::size_t n = 1; n <= 4 && !caught; ++n) {
    auto v = check_graph_against_oracle(model, g, n);
    if (!v.ok()) {
      caught = true;
      CHECK_FALSE(v.mismatches.front().path.empty());
      CHECK(v.mismatches.front().expected != v.mismatches.front().actual);
    }
  }
  CHECK(caught);

  // a wrong neighbour set also shows up
  auto h = build_graph(model);
  h.cvs[3].neighbours.pop_back();
  bool found = false;
  for (std::size_t n = 1; n <= 3; ++n) found = found || !check_graph_against_oracle(model, h, n).ok();
  CHECK(found);
}

TEST_CASE("budget") {
  IfsModel model = validated(thirds_spec(5));
  CHECK_THROWS_AS(brute_level(model, 8, 1000), BudgetExceeded);
  CHECK_NOTHROW(brute_level(model, 3, 1000));
}

}  // TEST_SUITE
