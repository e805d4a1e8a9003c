#include "finitype/netgraph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace finitype {

std::size_t CharacteristicVector::hash() const {
  std::size_t h = length.hash();
  for (const auto& a : neighbours) h ^= a.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::vector<std::vector<std::size_t>> TransitionGraph::out_edges() const {
  std::vector<std::vector<std::size_t>> out(cvs.size());
  for (std::size_t e = 0; e < edges.size(); ++e) out[edges[e].parent].push_back(e);
  return out;
}

CharacteristicVector root_cv(const IfsModel& model) {
  return {model.field().one(), {model.field().zero()}};
}

namespace {

[[noreturn]] void inconsistent(const std::string& msg) {
  throw GraphError(GraphErrc::InternalInconsistency, msg);
}

struct CvKeyHash {
  std::size_t operator()(const CharacteristicVector& cv) const { return cv.hash(); }
};

}  // namespace

std::vector<ChildInterval> children(const CharacteristicVector& parent, const IfsModel& model) {
  const FieldSpec& F = model.field();
  const FieldElement& rho = model.rho();
  const FieldElement rho_inv = F.rho_inverse();
  const auto& d = model.translations();
  const auto& w = model.normalized();
  const std::size_t J = parent.neighbours.size();
  const std::size_t A = d.size();
  const FieldElement zero = F.zero();

  // e[j][l] = c_j - d_l; image of map l over neighbour j starts at -e.
  std::vector<std::vector<FieldElement>> e(J, std::vector<FieldElement>(A));
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t l = 0; l < A; ++l) e[j][l] = parent.neighbours[j] - d[l];

  std::vector<FieldElement> cuts{zero, parent.length};
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t l = 0; l < A; ++l) {
      FieldElement x0 = -e[j][l];
      FieldElement x1 = x0 + rho;
      if (x0 > zero && x0 < parent.length) cuts.push_back(std::move(x0));
      if (x1 > zero && x1 < parent.length) cuts.push_back(std::move(x1));
    }
  std::sort(cuts.begin(), cuts.end(), [](const FieldElement& a, const FieldElement& b) { return a < b; });
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<ChildInterval> out;
  out.reserve(cuts.size() - 1);
  struct Hit {
    std::size_t j, l;
    FieldElement s;  // rho * neighbour value
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const FieldElement& t = cuts[i];
    const FieldElement& t1 = cuts[i + 1];
    std::vector<Hit> hits;
    for (std::size_t j = 0; j < J; ++j)
      for (std::size_t l = 0; l < A; ++l) {
        FieldElement s = t + e[j][l];
        if (s.sign() < 0) continue;
        if (t1 + e[j][l] > rho) continue;
        hits.push_back({j, l, std::move(s)});
      }
    if (hits.empty()) inconsistent("child interval with no covering map");
    std::vector<FieldElement> vals;
    for (const auto& h : hits) vals.push_back(h.s);
    std::sort(vals.begin(), vals.end(), [](const FieldElement& a, const FieldElement& b) { return a < b; });
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

    ChildInterval child;
    child.offset = t;
    child.cv.length = (t1 - t) * rho_inv;
    child.matrix = RationalMatrix::Zero(J, vals.size());
    for (const auto& h : hits) {
      std::size_t k = std::find(vals.begin(), vals.end(), h.s) - vals.begin();
      if (child.matrix(h.j, k) != 0) inconsistent("two maps give the same neighbour for one parent neighbour");
      child.matrix(h.j, k) = w[h.l];
    }
    for (std::size_t j = 0; j < J; ++j) {
      bool any = false;
      for (std::size_t k = 0; k < vals.size(); ++k) any = any || child.matrix(j, k) != 0;
      if (!any) inconsistent("transition matrix has a zero row");
    }
    child.cv.neighbours.reserve(vals.size());
    for (auto& v : vals) child.cv.neighbours.push_back(v * rho_inv);
    out.push_back(std::move(child));
  }
  return out;
}

TransitionGraph build_graph(const IfsModel& model, std::size_t cap_cvs) {
  if (cap_cvs < 1) throw std::invalid_argument("netgraph: cap_cvs must be >= 1");
  TransitionGraph g;
  std::unordered_map<CharacteristicVector, CvIndex, CvKeyHash> index;
  g.cvs.push_back(root_cv(model));
  index.emplace(g.cvs[0], 0);
  g.root = 0;
  for (CvIndex parent = 0; parent < g.cvs.size(); ++parent) {
    auto kids = children(g.cvs[parent], model);
    const std::size_t first_edge = g.edges.size();
    for (auto& kid : kids) {
      CvIndex id;
      auto it = index.find(kid.cv);
      if (it != index.end()) {
        id = it->second;
      } else {
        if (g.cvs.size() >= cap_cvs)
          throw GraphError(GraphErrc::CapExceeded,
                           "more than " + std::to_string(cap_cvs) +
                               " reduced characteristic vectors; the system may not be of finite type "
                               "(Pisot contractions always are) or the cap is too small",
                           cap_cvs);
        id = g.cvs.size();
        index.emplace(kid.cv, id);
        g.cvs.push_back(kid.cv);
      }
      bool merged = false;
      for (std::size_t e = first_edge; e < g.edges.size(); ++e) {
        auto& edge = g.edges[e];
        if (edge.child == id && edge.matrix == kid.matrix) {
          ++edge.multiplicity;
          edge.offsets.push_back(kid.offset);
          merged = true;
          break;
        }
      }
      if (!merged) g.edges.push_back({parent, id, std::move(kid.matrix), 1, {kid.offset}});
    }
  }
  return g;
}

std::string export_dot(const TransitionGraph& graph, std::span<const CvIndex> highlight) {
  std::unordered_set<CvIndex> hl(highlight.begin(), highlight.end());
  std::ostringstream os;
  os << "digraph transition {\n  node [shape=circle];\n";
  for (CvIndex i = 0; i < graph.cvs.size(); ++i) {
    os << "  " << display_id(i);
    if (hl.count(i)) os << " [style=filled, fillcolor=lightgrey]";
    os << ";\n";
  }
  for (const auto& e : graph.edges)
    for (std::size_t k = 0; k < e.multiplicity; ++k)
      os << "  " << display_id(e.parent) << " -> " << display_id(e.child) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace finitype
