#include "finitype/oracle.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace finitype {

namespace {

bool less(const FieldElement& a, const FieldElement& b) { return a < b; }

std::string show(const std::vector<FieldElement>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

std::string show(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + rational_to_string(v[i]);
  return s + ")";
}

}  // namespace

LevelSnapshot brute_level(const IfsModel& model, std::size_t n, std::size_t budget) {
  const std::size_t A = model.map_count();
  std::size_t words = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (words > budget / A) throw BudgetExceeded(std::to_string(A) + "^" + std::to_string(n) + " words exceed the budget");
    words *= A;
  }
  const FieldSpec& F = model.field();
  std::vector<FieldElement> rho_pow{F.one()};
  for (std::size_t i = 0; i < n; ++i) rho_pow.push_back(rho_pow.back() * model.rho());
  const FieldElement& scale = rho_pow[n];

  // S_sigma(0) = sum rho^(i-1) d_{sigma_i}; weight p_0^-n p_sigma.
  std::unordered_map<FieldElement, Rational, FieldElementHash> mass;
  struct Frame {
    FieldElement s;
    Rational w;
  };
  std::vector<Frame> stack{{F.zero(), Rational(1)}};
  std::vector<std::size_t> depth{0};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    std::size_t d = depth.back();
    stack.pop_back();
    depth.pop_back();
    if (d == n) {
      mass[f.s] += f.w;
      continue;
    }
    for (std::size_t l = 0; l < A; ++l) {
      stack.push_back({f.s + rho_pow[d] * model.translations()[l], f.w * model.normalized()[l]});
      depth.push_back(d + 1);
    }
  }

  std::vector<FieldElement> starts;
  for (const auto& kv : mass) starts.push_back(kv.first);
  std::sort(starts.begin(), starts.end(), less);

  LevelSnapshot snap;
  snap.n = n;
  for (const auto& s : starts) {
    snap.points.push_back(s);
    snap.points.push_back(s + scale);
  }
  std::sort(snap.points.begin(), snap.points.end(), less);
  snap.points.erase(std::unique(snap.points.begin(), snap.points.end()), snap.points.end());

  const FieldElement inv_scale = scale.inverse();
  for (std::size_t i = 0; i + 1 < snap.points.size(); ++i) {
    NetInterval iv;
    iv.left = snap.points[i];
    iv.right = snap.points[i + 1];
    // Covering images: S <= a and b <= S + rho^n, i.e. S in [b - rho^n, a].
    FieldElement from = iv.right - scale;
    auto lo = std::lower_bound(starts.begin(), starts.end(), from, less);
    auto hi = std::upper_bound(starts.begin(), starts.end(), iv.left, less);
    // Offsets (a - S)/rho^n increase as S decreases.
    for (auto it = hi; it != lo;) {
      --it;
      iv.neighbours.push_back((iv.left - *it) * inv_scale);
      iv.weights.push_back(mass.at(*it));
    }
    snap.intervals.push_back(std::move(iv));
  }
  return snap;
}

std::vector<ExpandedInterval> expand_graph(const IfsModel& model, const TransitionGraph& graph, std::size_t n) {
  const auto out = graph.out_edges();
  std::vector<ExpandedInterval> level{{model.field().zero(), graph.root, {Rational(1)}, {graph.root}}};
  FieldElement unit = model.field().one();  // rho^(level of parent)
  for (std::size_t l = 1; l <= n; ++l) {
    std::vector<ExpandedInterval> next;
    for (const auto& node : level) {
      for (auto e : out[node.cv]) {
        const auto& edge = graph.edges[e];
        std::vector<Rational> w(edge.matrix.cols());
        for (Eigen::Index k = 0; k < edge.matrix.cols(); ++k)
          for (Eigen::Index j = 0; j < edge.matrix.rows(); ++j) w[k] += node.weights[j] * edge.matrix(j, k);
        for (const auto& t : edge.offsets) {
          ExpandedInterval c{node.left + unit * t, edge.child, w, node.path};
          c.path.push_back(edge.child);
          next.push_back(std::move(c));
        }
      }
    }
    level = std::move(next);
    unit = unit * model.rho();
  }
  std::sort(level.begin(), level.end(), [](const auto& a, const auto& b) { return a.left < b.left; });
  return level;
}

OracleVerdict check_graph_against_oracle(const IfsModel& model, const TransitionGraph& graph, std::size_t n,
                                         std::size_t budget) {
  OracleVerdict v;
  v.level = n;
  LevelSnapshot snap = brute_level(model, n, budget);
  auto expanded = expand_graph(model, graph, n);
  if (expanded.size() != snap.intervals.size()) {
    v.mismatches.push_back({{}, "net interval count", std::to_string(snap.intervals.size()),
                            std::to_string(expanded.size())});
    return v;
  }
  FieldElement inv_scale = model.field().one();
  for (std::size_t i = 0; i < n; ++i) inv_scale = inv_scale * model.field().rho_inverse();
  for (std::size_t i = 0; i < expanded.size(); ++i) {
    const auto& g = expanded[i];
    const auto& o = snap.intervals[i];
    const auto& cv = graph.cvs[g.cv];
    ++v.intervals_checked;
    if (g.left != o.left) {
      v.mismatches.push_back({g.path, "left endpoint", o.left.to_string(), g.left.to_string()});
      continue;
    }
    FieldElement len = (o.right - o.left) * inv_scale;
    if (cv.length != len) v.mismatches.push_back({g.path, "normalized length", len.to_string(), cv.length.to_string()});
    if (cv.neighbours != o.neighbours)
      v.mismatches.push_back({g.path, "neighbour set", show(o.neighbours), show(cv.neighbours)});
    if (g.weights != o.weights) v.mismatches.push_back({g.path, "Q_n", show(o.weights), show(g.weights)});
  }
  return v;
}

}  // namespace finitype
