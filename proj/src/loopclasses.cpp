#include "finitype/loopclasses.hpp"

#include <algorithm>
#include <unordered_set>

namespace finitype {

const char* to_string(Positivity p) {
  switch (p) {
    case Positivity::Positive: return "POSITIVE";
    case Positivity::NotPositive: return "NOT_POSITIVE";
    case Positivity::Unknown: return "UNKNOWN";
  }
  return "?";
}

bool LoopClass::contains(CvIndex v) const { return std::binary_search(members.begin(), members.end(), v); }

LoopClass make_loop_class(const TransitionGraph& graph, std::vector<CvIndex> members) {
  LoopClass c;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  c.members = std::move(members);
  for (std::size_t e = 0; e < graph.edges.size(); ++e)
    if (c.contains(graph.edges[e].parent) && c.contains(graph.edges[e].child)) c.edges.push_back(e);
  return c;
}

std::vector<std::vector<CvIndex>> strongly_connected_components(const TransitionGraph& graph) {
  const std::size_t n = graph.cvs.size();
  std::vector<std::vector<CvIndex>> adj(n);
  for (const auto& e : graph.edges) adj[e.parent].push_back(e.child);
  // Iterative Tarjan.
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<CvIndex> stack;
  std::vector<std::vector<CvIndex>> comps;
  std::size_t counter = 0;
  struct Frame {
    CvIndex v;
    std::size_t next;
  };
  for (CvIndex s = 0; s < n; ++s) {
    if (index[s] != kUnset) continue;
    std::vector<Frame> call{{s, 0}};
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on_stack[s] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < adj[f.v].size()) {
        CvIndex w = adj[f.v][f.next++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      CvIndex v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<CvIndex> comp;
        CvIndex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return comps;
}

std::vector<LoopClass> maximal_loop_classes(const TransitionGraph& graph) {
  std::vector<LoopClass> out;
  for (auto& comp : strongly_connected_components(graph)) {
    LoopClass c = make_loop_class(graph, std::move(comp));
    if (c.edges.empty()) continue;
    c.is_maximal = true;
    out.push_back(std::move(c));
  }
  return out;
}

LoopClass essential_class(const TransitionGraph& graph) {
  auto comps = strongly_connected_components(graph);
  std::vector<std::size_t> comp_of(graph.cvs.size());
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (auto v : comps[c]) comp_of[v] = c;
  std::vector<char> leaves(comps.size(), 0);
  for (const auto& e : graph.edges)
    if (comp_of[e.parent] != comp_of[e.child]) leaves[comp_of[e.parent]] = 1;
  std::vector<std::size_t> terminal;
  for (std::size_t c = 0; c < comps.size(); ++c)
    if (!leaves[c]) terminal.push_back(c);
  if (terminal.size() != 1) throw EssentialClassNotUnique(terminal.size());
  LoopClass c = make_loop_class(graph, comps[terminal.front()]);
  if (c.edges.empty()) throw EssentialClassNotUnique(0);
  c.is_maximal = true;
  c.is_essential = true;
  return c;
}

bool is_simple_loop(const TransitionGraph& graph, const LoopClass& cls) {
  std::size_t total = 0;
  std::vector<std::size_t> outdeg(cls.members.size(), 0);
  for (auto e : cls.edges) {
    total += graph.edges[e].multiplicity;
    auto pos = std::lower_bound(cls.members.begin(), cls.members.end(), graph.edges[e].parent) - cls.members.begin();
    outdeg[pos] += graph.edges[e].multiplicity;
  }
  if (total != cls.members.size()) return false;
  return std::all_of(outdeg.begin(), outdeg.end(), [](std::size_t d) { return d == 1; });
}

namespace {

// Row-major boolean matrix, each row packed into 64-bit words.
struct BoolMatrix {
  std::size_t rows = 0, cols = 0, wpr = 0;
  std::vector<std::uint64_t> bits;

  BoolMatrix() = default;
  BoolMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), wpr((c + 63) / 64), bits(r * wpr, 0) {}
  bool get(std::size_t i, std::size_t j) const { return (bits[i * wpr + j / 64] >> (j % 64)) & 1u; }
  void set(std::size_t i, std::size_t j) { bits[i * wpr + j / 64] |= std::uint64_t(1) << (j % 64); }
  bool full() const {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (!get(i, j)) return false;
    return true;
  }
};

BoolMatrix pattern_of(const RationalMatrix& m) {
  BoolMatrix b(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) b.set(i, j);
  return b;
}

BoolMatrix multiply(const BoolMatrix& a, const BoolMatrix& b) {
  BoolMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k)
      if (a.get(i, k))
        for (std::size_t w = 0; w < b.wpr; ++w) c.bits[i * c.wpr + w] |= b.bits[k * b.wpr + w];
  return c;
}

struct StateKey {
  CvIndex end;
  std::vector<std::uint64_t> bits;
  bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const {
    std::size_t h = k.end * 0x9e3779b97f4a7c15ull;
    for (auto w : k.bits) h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace

PositivityVerdict positivity_certificate(const TransitionGraph& graph, const LoopClass& cls,
                                         PositivityOptions options) {
  PositivityVerdict verdict;
  if (cls.members.empty() || cls.edges.empty() || options.max_len < 1) return verdict;
  std::vector<std::vector<std::size_t>> out(graph.cvs.size());
  std::vector<BoolMatrix> pat(graph.edges.size());
  for (auto e : cls.edges) {
    out[graph.edges[e].parent].push_back(e);
    pat[e] = pattern_of(graph.edges[e].matrix);
  }
  // Positive type does not depend on where a path starts inside a strongly
  // connected class, so searching from the smallest member is complete.
  const CvIndex start = cls.members.front();
  struct Node {
    std::size_t parent;
    std::size_t edge;
    CvIndex end;
    BoolMatrix m;
  };
  std::vector<Node> nodes;
  std::unordered_set<StateKey, StateKeyHash> seen;
  std::vector<std::size_t> frontier;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  auto witness_from = [&](std::size_t id) {
    std::vector<std::size_t> path;
    for (std::size_t cur = id; cur != kNone; cur = nodes[cur].parent) path.push_back(nodes[cur].edge);
    std::reverse(path.begin(), path.end());
    return path;
  };
  auto push = [&](std::size_t parent, std::size_t edge, BoolMatrix m) -> bool {
    CvIndex end = graph.edges[edge].child;
    StateKey key{end, m.bits};
    if (!seen.insert(std::move(key)).second) return false;
    nodes.push_back({parent, edge, end, std::move(m)});
    frontier.push_back(nodes.size() - 1);
    return nodes.back().m.full();
  };

  for (auto e : out[start]) {
    if (push(kNone, e, pat[e])) {
      verdict.status = Positivity::Positive;
      verdict.witness = witness_from(nodes.size() - 1);
      verdict.length = 1;
      verdict.states = nodes.size();
      return verdict;
    }
  }
  std::size_t len = 1;
  while (!frontier.empty()) {
    if (len >= options.max_len || nodes.size() >= options.max_states) {
      verdict.status = Positivity::Unknown;
      verdict.length = len;
      verdict.states = nodes.size();
      return verdict;
    }
    ++len;
    std::vector<std::size_t> layer;
    layer.swap(frontier);
    for (auto id : layer) {
      for (auto e : out[nodes[id].end]) {
        BoolMatrix next = multiply(nodes[id].m, pat[e]);
        if (push(id, e, std::move(next))) {
          verdict.status = Positivity::Positive;
          verdict.witness = witness_from(nodes.size() - 1);
          verdict.length = len;
          verdict.states = nodes.size();
          return verdict;
        }
      }
    }
  }
  verdict.status = Positivity::NotPositive;
  verdict.length = len;
  verdict.states = nodes.size();
  return verdict;
}

std::vector<LoopClass> classify_all(const TransitionGraph& graph, PositivityOptions options) {
  auto classes = maximal_loop_classes(graph);
  LoopClass ess = essential_class(graph);
  for (auto& c : classes) {
    c.is_essential = c.members == ess.members;
    c.is_simple_loop = is_simple_loop(graph, c);
    c.positivity = positivity_certificate(graph, c, options);
  }
  return classes;
}

RationalMatrix path_matrix(const TransitionGraph& graph, std::span<const std::size_t> edges) {
  if (edges.empty()) throw std::invalid_argument("loopclasses: empty path");
  RationalMatrix m = graph.edges[edges.front()].matrix;
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (graph.edges[edges[i]].parent != graph.edges[edges[i - 1]].child)
      throw std::invalid_argument("loopclasses: edges do not form a path");
    m = (m * graph.edges[edges[i]].matrix).eval();
  }
  return m;
}

}  // namespace finitype
