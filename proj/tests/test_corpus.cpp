#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "finitype/cli.hpp"
#include "support.hpp"

using namespace finitype;
using namespace finitype::testing;
namespace fs = std::filesystem;

namespace {

nlohmann::json read_json(const fs::path& p) {
  std::ifstream f(p);
  return nlohmann::json::parse(f);
}

// dims compare at 1e-6 relative
bool close(double a, double b) { return std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(b)); }

bool run_slow() {
  const char* s = std::getenv("FINITYPE_SLOW");
  return s && std::string(s) == "1";
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("every input has a golden file") {
  for (const auto& e : fs::directory_iterator(corpus_path("inputs"))) {
    CAPTURE(e.path().string());
    CHECK(fs::exists(corpus_path("golden/" + e.path().filename().string())));
  }
}

TEST_CASE("golden files") {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(corpus_path("golden"))) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  REQUIRE(files.size() >= 21);
  for (const auto& path : files) {
    auto g = read_json(path);
    const std::string name = g.at("input");
    CAPTURE(name);
    if (g.value("slow", false) && !run_slow()) continue;
    IfsSpec spec = corpus_input(name);

    if (g.contains("expect_error")) {
      try {
        build_graph(validated(spec), g.at("max_cvs").get<std::size_t>());
        FAIL("expected an error");
      } catch (const GraphError& e) {
        CHECK(e.code() == GraphErrc::CapExceeded);
      }
      continue;
    }

    RunParameters p;
    if (g.contains("parameters")) {
      const auto& q = g["parameters"];
      p.bound_len = q.value("bound_len", p.bound_len);
      if (q.contains("subset")) p.subset = q["subset"].get<std::vector<std::size_t>>();
    }
    Analysis a = analyze(spec, p, cli::worker_count());
    OutputDocument doc = make_output(a, p);
    CHECK(doc.cv_count == g.at("cv_count").get<std::size_t>());
    CHECK(doc.essential_size == g.at("essential_size").get<std::size_t>());
    if (g.contains("class_count")) CHECK(doc.classes.size() == g["class_count"].get<std::size_t>());
    if (g.contains("dim_at_zero")) CHECK(close(doc.dim_at_zero, g["dim_at_zero"]));
    if (g.contains("isolated_points")) {
      auto want = g["isolated_points"].get<std::vector<double>>();
      REQUIRE(doc.isolated_points.size() == want.size());
      for (std::size_t i = 0; i < want.size(); ++i) CHECK(close(doc.isolated_points[i], want[i]));
    }
    const ClassSummary* ess = nullptr;
    for (const auto& c : doc.classes)
      if (c.essential) ess = &c;
    REQUIRE(ess != nullptr);
    if (g.contains("essential_members")) CHECK(ess->members == g["essential_members"].get<std::vector<std::size_t>>());
    if (g.contains("essential_inner")) {
      REQUIRE(ess->dim_inner.has_value());
      CHECK(close(ess->dim_inner->first, g["essential_inner"][0]));
      CHECK(close(ess->dim_inner->second, g["essential_inner"][1]));
    }
    if (g.contains("essential_outer_within")) {
      // containment only: deeper or better bounds may only tighten
      CHECK(ess->dim_outer.first >= g["essential_outer_within"][0].get<double>());
      CHECK(ess->dim_outer.second <= g["essential_outer_within"][1].get<double>());
      if (ess->dim_inner) {
        CHECK(ess->dim_outer.first <= ess->dim_inner->first + 1e-9);
        CHECK(ess->dim_outer.second >= ess->dim_inner->second - 1e-9);
      }
    }
  }
}

}  // TEST_SUITE
