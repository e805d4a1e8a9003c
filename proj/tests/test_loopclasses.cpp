#include <doctest.h>

#include <set>

#include "finitype/loopclasses.hpp"
#include "support.hpp"

using namespace finitype;
using namespace finitype::testing;

namespace {

TransitionGraph chain(bool leaf_loop) {
  TransitionGraph g;
  auto cv = root_cv(golden_model());
  g.cvs = {cv, cv};
  g.edges.push_back({0, 1, rmat({{1}}), 1, {cv.length.field().zero()}});
  if (leaf_loop) g.edges.push_back({1, 1, rmat({{1}}), 1, {cv.length.field().zero()}});
  return g;
}

std::vector<std::vector<std::size_t>> member_sets(const std::vector<LoopClass>& cls) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& c : cls) out.push_back(ids(c.members));
  return out;
}

}  // namespace

TEST_SUITE("loopclasses") {

TEST_CASE("golden maximal classes") {
  auto g = build_graph(golden_model());
  auto cls = classify_all(g);
  CHECK(member_sets(cls) == std::vector<std::vector<std::size_t>>{{2}, {3, 5, 6}, {4}});
  auto ess = essential_class(g);
  CHECK(ids(ess.members) == std::vector<std::size_t>{3, 5, 6});
  for (const auto& c : cls) {
    CHECK(c.is_maximal);
    CHECK(c.is_essential == (c.members.size() == 3));
    CHECK(c.is_simple_loop == (c.members.size() == 1));
    CHECK(c.positivity.status == Positivity::Positive);
  }
}

TEST_CASE("thirds m=5 classes") {
  auto g = build_graph(validated(thirds_spec(5)));
  auto cls = classify_all(g);
  CHECK(member_sets(cls) == std::vector<std::vector<std::size_t>>{{2}, {4, 5}, {7}});
  CHECK(ids(essential_class(g).members) == std::vector<std::size_t>{4, 5});
}

TEST_CASE("essential class of the 152-vector graph") {
  auto g = build_graph(validated(corpus_input("x3_x_1")));
  auto cls = classify_all(g);
  auto ess = essential_class(g);
  CHECK(ess.members.size() == 46);
  CHECK(cls.size() == 5);
  const LoopClass* big = nullptr;
  for (const auto& c : cls)
    if (c.members.size() == 23) big = &c;
  REQUIRE(big != nullptr);
  CHECK(big->positivity.status == Positivity::Positive);
  CHECK_FALSE(big->is_simple_loop);
  const LoopClass* pair = class_with(cls, {22, 30});
  REQUIRE(pair != nullptr);
  CHECK(pair->is_simple_loop);
  for (const auto& c : cls) CHECK(c.positivity.status == Positivity::Positive);
}

TEST_CASE("synthetic chains") {
  auto g = chain(true);
  auto ess = essential_class(g);
  CHECK(ids(ess.members) == std::vector<std::size_t>{2});
  CHECK(is_simple_loop(g, ess));
  auto acyclic = chain(false);
  CHECK(maximal_loop_classes(acyclic).empty());
  CHECK_THROWS_AS(essential_class(acyclic), EssentialClassNotUnique);
}

TEST_CASE("positivity examples") {
  auto g = build_graph(golden_model());
  auto ess = essential_class(g);
  auto v = positivity_certificate(g, ess);
  REQUIRE(v.status == Positivity::Positive);
  // the witness is a path inside the class whose product is positive
  auto m = path_matrix(g, v.witness);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) CHECK(m(i, j) > 0);
  for (std::size_t k = 0; k + 1 < v.witness.size(); ++k)
    CHECK(g.edges[v.witness[k]].child == g.edges[v.witness[k + 1]].parent);

  // two states joined by I and [[1,0],[1,1]]: every product is [[1,0],[n,1]]
  TransitionGraph tri;
  auto cv = root_cv(golden_model());
  const auto z = cv.length.field().zero();
  tri.cvs = {cv, cv};
  tri.edges.push_back({0, 1, rmat({{1, 0}, {0, 1}}), 1, {z}});
  tri.edges.push_back({1, 0, rmat({{1, 0}, {1, 1}}), 1, {z}});
  auto sub = make_loop_class(tri, {0, 1});
  CHECK(positivity_certificate(tri, sub).status == Positivity::NotPositive);
  PositivityOptions longer;
  longer.max_len = 5000;
  CHECK(positivity_certificate(tri, sub, longer).status == Positivity::NotPositive);
  // {3,5} mixes lower and upper triangular steps and does become positive
  CHECK(positivity_certificate(g, make_loop_class(g, {2, 4})).status == Positivity::Positive);

  auto two = make_loop_class(g, {1});
  CHECK(positivity_certificate(g, two).status == Positivity::Positive);
  CHECK(std::string(to_string(Positivity::NotPositive)) == "NOT_POSITIVE");
}

TEST_CASE("tiny state budget gives UNKNOWN") {
  auto g = build_graph(validated(corpus_input("x3_x_1")));
  PositivityOptions opt;
  opt.max_states = 2;
  CHECK(positivity_certificate(g, essential_class(g), opt).status == Positivity::Unknown);
}

TEST_CASE("essential class is positive and terminal on shipped models") {
  for (const auto& name : fast_inputs()) {
    CAPTURE(name);
    auto g = build_graph(validated(corpus_input(name)));
    auto ess = essential_class(g);
    CHECK(positivity_certificate(g, ess).status == Positivity::Positive);
    for (const auto& e : g.edges)
      if (ess.contains(e.parent)) CHECK(ess.contains(e.child));
    // classes are disjoint, ascending and strongly connected
    std::set<CvIndex> seen;
    for (const auto& c : maximal_loop_classes(g)) {
      CHECK(std::is_sorted(c.members.begin(), c.members.end()));
      for (auto v : c.members) CHECK(seen.insert(v).second);
    }
    auto sccs = strongly_connected_components(g);
    std::size_t total = 0;
    for (const auto& s : sccs) total += s.size();
    CHECK(total == g.size());
  }
}

TEST_CASE("golden simple loops") {
  auto g = build_graph(golden_model());
  auto cls = classify_all(g);
  CHECK(class_with(cls, {2})->is_simple_loop);
  CHECK(class_with(cls, {4})->is_simple_loop);
  CHECK_FALSE(class_with(cls, {3, 5, 6})->is_simple_loop);
}

TEST_CASE("path matrix") {
  auto g = build_graph(golden_model());
  auto out = g.out_edges();
  long e12 = find_edge(g, 1, 2, rmat({{1}}));
  long e22 = find_edge(g, 2, 2, rmat({{1}}));
  std::vector<std::size_t> p{static_cast<std::size_t>(e12), static_cast<std::size_t>(e22)};
  CHECK(path_matrix(g, p) == rmat({{1}}));
}

}  // TEST_SUITE
