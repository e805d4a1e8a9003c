// Randomized law checks over the shipped transition graphs. Shared by the
// unit suite and the acceptance driver.
#ifndef FINITYPE_TESTS_PROPERTIES_HPP
#define FINITYPE_TESTS_PROPERTIES_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

namespace finitype::testing {

struct PropertyResult {
  std::size_t cases = 0;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

namespace props {

struct Subject {
  std::string name;
  Analysis analysis;
  std::vector<std::vector<std::size_t>> out;  // class-internal out edges per CV, for the essential class
};

inline Rational total(const RationalMatrix& m) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += m(i, j);
  return s;
}

inline bool lines_nonzero(const RationalMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    bool any = false;
    for (Eigen::Index j = 0; j < m.cols(); ++j) any = any || m(i, j) != 0;
    if (!any) return false;
  }
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    bool any = false;
    for (Eigen::Index i = 0; i < m.rows(); ++i) any = any || m(i, j) != 0;
    if (!any) return false;
  }
  return true;
}

inline std::vector<Subject> subjects() {
  std::vector<Subject> out;
  auto add = [&](const std::string& name, const IfsSpec& spec) {
    RunParameters p;
    p.bound_len = 6;
    Subject s{name, analyze(spec, p), {}};
    const auto& g = s.analysis.graph;
    const auto& ess = s.analysis.report.sets[s.analysis.report.essential].cls;
    s.out.assign(g.size(), {});
    for (auto e : ess.edges) s.out[g.edges[e].parent].push_back(e);
    out.push_back(std::move(s));
  };
  add("golden", golden_spec());
  add("thirds m=5", thirds_spec(5));
  for (const char* n : {"cantor_m3", "cantor_m5", "x3_x_1", "x3_x2_x_1", "golden_square",
                        "uniform_m3"})
    add(n, corpus_input(n));
  return out;
}

// Random walk of `len` steps inside the essential class from v.
inline std::vector<std::size_t> walk(const Subject& s, CvIndex v, std::size_t len, std::mt19937_64& rng) {
  std::vector<std::size_t> edges;
  for (std::size_t k = 0; k < len; ++k) {
    const auto& o = s.out[v];
    std::size_t e = o[std::uniform_int_distribution<std::size_t>(0, o.size() - 1)(rng)];
    edges.push_back(e);
    v = s.analysis.graph.edges[e].child;
  }
  return edges;
}

// Shortest class-internal path from a to b (empty when a == b).
inline std::vector<std::size_t> route(const Subject& s, CvIndex a, CvIndex b) {
  const auto& g = s.analysis.graph;
  std::map<CvIndex, std::size_t> via;
  std::deque<CvIndex> q{a};
  std::map<CvIndex, bool> seen{{a, true}};
  while (!q.empty() && !seen.count(b)) {
    CvIndex v = q.front();
    q.pop_front();
    for (auto e : s.out[v]) {
      CvIndex c = g.edges[e].child;
      if (seen.count(c)) continue;
      seen[c] = true;
      via[c] = e;
      q.push_back(c);
    }
  }
  std::vector<std::size_t> path;
  for (CvIndex v = b; v != a;) {
    std::size_t e = via.at(v);
    path.insert(path.begin(), e);
    v = g.edges[e].parent;
  }
  return path;
}

inline CvIndex end_of(const Subject& s, const std::vector<std::size_t>& p, CvIndex start) {
  return p.empty() ? start : s.analysis.graph.edges[p.back()].child;
}

inline std::vector<std::size_t> cat(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace props

// One case draws a subject and checks every law on fresh random paths.
inline PropertyResult run_property_cases(std::size_t cases, std::uint64_t seed = 20240917) {
  using namespace props;
  static const std::vector<Subject> all = subjects();
  std::mt19937_64 rng(seed);
  PropertyResult res;
  auto fail = [&](const Subject& s, std::size_t i, const std::string& what) {
    std::ostringstream o;
    o << s.name << " case " << i << ": " << what;
    res.failures.push_back(o.str());
  };
  auto check = [&](bool ok, const Subject& s, std::size_t i, const std::string& what) {
    ++res.checks;
    if (!ok) fail(s, i, what);
  };
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

  for (std::size_t i = 0; i < cases; ++i, ++res.cases) {
    const Subject& s = all[pick(all.size())];
    const auto& g = s.analysis.graph;
    const auto& rep = s.analysis.report;
    const auto& ess = rep.sets[rep.essential].cls;
    const CvIndex v0 = ess.members[pick(ess.members.size())];

    // A then B along one path
    auto A = walk(s, v0, 1 + pick(6), rng);
    CvIndex v1 = end_of(s, A, v0);
    auto B = walk(s, v1, 1 + pick(6), rng);
    RationalMatrix mA = path_matrix(g, A), mB = path_matrix(g, B), mAB = path_matrix(g, cat(A, B));
    check(lines_nonzero(mAB), s, i, "product with a zero row or column");
    check(total(mB) <= total(mAB), s, i, "|B| > |AB|");
    check(total(mA) <= total(mAB), s, i, "|A| > |AB|");

    // A, positive middle, C
    const auto& wit = ess.positivity.witness;
    if (!wit.empty()) {
      CvIndex ws = g.edges[wit.front()].parent, we = g.edges[wit.back()].child;
      auto pre = cat(A, route(s, v1, ws));
      auto C = walk(s, we, 1 + pick(5), rng);
      RationalMatrix mPre = path_matrix(g, pre), mC = path_matrix(g, C);
      RationalMatrix mAll = path_matrix(g, cat(cat(pre, wit), C));
      check(total(mAll) >= total(mPre) * total(mC), s, i, "|A B C| < |A| |C| with B positive");
    }

    // a cycle through v0, powered and rotated
    auto loop = cat(A, route(s, v1, v0));
    RationalMatrix mL = path_matrix(g, loop);
    std::size_t n = 1 + pick(3);
    RationalMatrix pw = mL;
    for (std::size_t k = 1; k < n; ++k) pw = pw * mL;
    Enclosure sp = spectral_radius(pw);
    double maxrow = pseudo_norm<Rational>(pw, NormKind::MaxRow).convert_to<double>();
    double minrow = pseudo_norm<Rational>(pw, NormKind::MinRow).convert_to<double>();
    check(sp.lo <= maxrow * (1 + 1e-9), s, i, "sp(B^n) > max row sum");
    check(sp.hi >= minrow * (1 - 1e-9), s, i, "sp(B^n) < min row sum");
    std::size_t cut = pick(loop.size());
    std::vector<std::size_t> rot(loop.begin() + cut, loop.end());
    rot.insert(rot.end(), loop.begin(), loop.begin() + cut);
    Enclosure sr = spectral_radius(path_matrix(g, rot)), s1 = spectral_radius(mL);
    check(std::abs(sr.mid() - s1.mid()) <= 1e-8 * s1.mid() + 1e-12, s, i, "spectral radius not shift invariant");

    // net interval weights at a random shallow level
    if (s.analysis.model.map_count() <= 4) {
      std::size_t lvl = 1 + pick(3);
      for (const auto& iv : expand_graph(s.analysis.model, g, lvl))
        for (const auto& w : iv.weights) check(w >= 1, s, i, "P_n < 1");
    }

    // reported intervals
    const auto& cls = rep.sets[pick(rep.sets.size())];
    if (cls.has_inner) {
      check(cls.dim_outer.contains(cls.dim_inner, 1e-9), s, i, "inner interval not inside outer");
      check(cls.dim_inner.hi <= rep.dim_at_zero + 1e-9, s, i, "attained dimension above dim at zero");
    }
    check(cls.dim_outer.lo <= cls.dim_outer.hi, s, i, "empty outer interval");
  }
  return res;
}

}  // namespace finitype::testing

#endif  // FINITYPE_TESTS_PROPERTIES_HPP
