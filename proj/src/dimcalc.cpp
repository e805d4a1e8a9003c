#include "finitype/dimcalc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

namespace finitype {

const char* to_string(NormKind kind) {
  switch (kind) {
    case NormKind::MinRow: return "total row sub-norm";
    case NormKind::MaxRow: return "total row sup-norm";
    case NormKind::MinCol: return "total column sub-norm";
    case NormKind::MaxCol: return "total column sup-norm";
    case NormKind::SubsetRowMin: return "row sub-norm on subset";
    case NormKind::SubsetColMin: return "column sub-norm on subset";
  }
  return "?";
}

const char* to_string(Isolation s) {
  switch (s) {
    case Isolation::Isolated: return "ISOLATED";
    case Isolation::NotIsolated: return "NOT_ISOLATED";
    case Isolation::Undecided: return "UNDECIDED";
  }
  return "?";
}

namespace {

double log_rational(const Rational& q) {
  const mpq_t& r = q.backend().data();
  long e1 = 0, e2 = 0;
  double m1 = mpz_get_d_2exp(&e1, mpq_numref(r));
  double m2 = mpz_get_d_2exp(&e2, mpq_denref(r));
  return std::log(m1) - std::log(m2) + static_cast<double>(e1 - e2) * std::log(2.0);
}

double log_rho(const IfsModel& model) { return std::log(model.rho().to_double()); }

Matrix<double> edge_double(const TransitionGraph& g, std::size_t e) { return to_double(g.edges[e].matrix); }

}  // namespace

double dim_at_zero(const IfsModel& model) {
  return log_rational(model.probabilities().front()) / log_rho(model);
}

double dimension_of(const IfsModel& model, double per_step) {
  return (log_rational(model.probabilities().front()) + std::log(per_step)) / log_rho(model);
}

Enclosure dimension_of(const IfsModel& model, const Enclosure& per_step) {
  return {dimension_of(model, per_step.hi), dimension_of(model, per_step.lo)};
}

CycleDim periodic_dimension(const IfsModel& model, const TransitionGraph& graph,
                            std::span<const std::size_t> cycle) {
  if (cycle.empty()) throw DimError(DimErrc::NotACycle, "empty cycle");
  for (auto e : cycle)
    if (e >= graph.edges.size()) throw DimError(DimErrc::EdgesNotAdmissible, "edge index out of range");
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const auto& a = graph.edges[cycle[i]];
    const auto& b = graph.edges[cycle[(i + 1) % cycle.size()]];
    if (a.child != b.parent) throw DimError(DimErrc::NotACycle, "edges do not close up into a cycle");
  }
  Matrix<double> t = edge_double(graph, cycle[0]);
  for (std::size_t i = 1; i < cycle.size(); ++i) t = (t * edge_double(graph, cycle[i])).eval();
  CycleDim c;
  c.edges.assign(cycle.begin(), cycle.end());
  for (auto e : cycle) c.vertices.push_back(graph.edges[e].parent);
  c.length = cycle.size();
  c.spectral_radius = spectral_radius(t);
  const double inv = 1.0 / static_cast<double>(c.length);
  c.per_step = {std::pow(c.spectral_radius.lo, inv), std::pow(c.spectral_radius.hi, inv)};
  c.dimension = dimension_of(model, c.per_step);
  return c;
}

CycleScan enumerate_cycles(const IfsModel& model, const TransitionGraph& graph, const LoopClass& cls,
                           std::size_t max_len, bool keep_all) {
  CycleScan scan;
  if (max_len == 0 || cls.edges.empty()) return scan;
  const std::size_t n = graph.cvs.size();
  std::vector<std::vector<std::size_t>> out(n), in(n);
  std::vector<Matrix<double>> mats(graph.edges.size());
  for (auto e : cls.edges) {
    out[graph.edges[e].parent].push_back(e);
    in[graph.edges[e].child].push_back(e);
    mats[e] = edge_double(graph, e);
  }
  const double inv_log_rho = 1.0 / log_rho(model);
  const double log_p0 = log_rational(model.probabilities().front());
  bool have = false;
  double best_lo = 0, best_hi = 0;

  std::vector<std::size_t> dist(n);
  std::vector<std::size_t> path;
  std::vector<Matrix<double>> prod;
  for (CvIndex s : cls.members) {
    // Distance back to s through vertices >= s, for pruning.
    constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max();
    std::fill(dist.begin(), dist.end(), kFar);
    std::deque<CvIndex> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      CvIndex v = q.front();
      q.pop_front();
      for (auto e : in[v]) {
        CvIndex u = graph.edges[e].parent;
        if (u < s || dist[u] != kFar) continue;
        dist[u] = dist[v] + 1;
        q.push_back(u);
      }
    }
    path.clear();
    prod.assign(1, Matrix<double>::Identity(graph.cvs[s].neighbours.size(), graph.cvs[s].neighbours.size()));
    // Iterative DFS over edge choices.
    std::vector<std::size_t> next{0};
    std::vector<CvIndex> at{s};
    while (!next.empty()) {
      CvIndex v = at.back();
      std::size_t& k = next.back();
      if (k >= out[v].size() || path.size() >= max_len) {
        next.pop_back();
        at.pop_back();
        if (!path.empty()) {
          path.pop_back();
          prod.pop_back();
        }
        continue;
      }
      std::size_t e = out[v][k++];
      CvIndex w = graph.edges[e].child;
      if (w < s || dist[w] == kFar || dist[w] + path.size() + 1 > max_len) continue;
      path.push_back(e);
      prod.push_back(prod.back() * mats[e]);
      if (w == s) {
        // Keep the lexicographically least rotation; skip powers of shorter cycles.
        const std::size_t L = path.size();
        bool canonical = true;
        for (std::size_t i = 1; i < L && canonical; ++i) {
          if (graph.edges[path[i]].parent != s) continue;
          for (std::size_t j = 0; j < L; ++j) {
            std::size_t a = path[(i + j) % L], b = path[j];
            if (a < b) {
              canonical = false;
              break;
            }
            if (a > b) break;
            if (j + 1 == L) canonical = false;  // equal rotation: not primitive
          }
        }
        if (canonical) {
          CycleDim c;
          c.edges = path;
          for (auto pe : path) c.vertices.push_back(graph.edges[pe].parent);
          c.length = L;
          c.spectral_radius = spectral_radius(prod.back());
          const double invL = 1.0 / static_cast<double>(L);
          c.per_step = {std::pow(c.spectral_radius.lo, invL), std::pow(c.spectral_radius.hi, invL)};
          c.dimension = {(log_p0 + std::log(c.per_step.hi)) * inv_log_rho,
                         (log_p0 + std::log(c.per_step.lo)) * inv_log_rho};
          ++scan.cycle_count;
          double m = c.per_step.mid();
          // ties (up to rounding) go to the shorter cycle
          const double tie = 1e-12 * m;
          if (!have || m < best_lo - tie || (m <= best_lo + tie && L < scan.min_cycle->length)) scan.min_cycle = c;
          if (!have || m > best_hi + tie || (m >= best_hi - tie && L < scan.max_cycle->length)) scan.max_cycle = c;
          best_lo = have ? std::min(best_lo, m) : m;
          best_hi = have ? std::max(best_hi, m) : m;
          have = true;
          if (keep_all) scan.cycles.push_back(std::move(c));
        }
      }
      next.push_back(0);
      at.push_back(w);
    }
  }
  if (have) {
    scan.per_step = {best_lo, best_hi};
    scan.dimension = dimension_of(model, scan.per_step);
  }
  return scan;
}

std::optional<std::vector<std::size_t>> default_subset(const TransitionGraph& graph, const LoopClass& cls) {
  if (cls.members.empty()) return std::nullopt;
  std::size_t k = graph.cvs[cls.members.front()].neighbours.size();
  for (auto v : cls.members)
    if (graph.cvs[v].neighbours.size() != k) return std::nullopt;
  std::vector<std::size_t> all(k);
  for (std::size_t i = 0; i < k; ++i) all[i] = i;
  return all;
}

namespace {

// Checked int64 scalar; overflow flips a shared flag.
struct Checked {
  static bool add(std::int64_t a, std::int64_t b, std::int64_t& r) { return !__builtin_add_overflow(a, b, &r); }
  static bool mul(std::int64_t a, std::int64_t b, std::int64_t& r) { return !__builtin_mul_overflow(a, b, &r); }
};

template <class I>
struct DenseInt {
  std::size_t rows = 0, cols = 0;
  std::vector<I> a;
  I& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const I& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

template <class I>
bool multiply_into(const DenseInt<I>& x, const DenseInt<I>& y, DenseInt<I>& z) {
  z.rows = x.rows;
  z.cols = y.cols;
  z.a.assign(z.rows * z.cols, I(0));
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const I& xv = x(i, k);
      if (xv == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) {
        const I& yv = y(k, j);
        if (yv == 0) continue;
        if constexpr (std::is_same_v<I, std::int64_t>) {
          std::int64_t p, s;
          if (!Checked::mul(xv, yv, p) || !Checked::add(z(i, j), p, s)) return false;
          z(i, j) = s;
        } else {
          z(i, j) += xv * yv;
        }
      }
    }
  return true;
}

template <class I>
bool add_checked(I& acc, const I& v) {
  if constexpr (std::is_same_v<I, std::int64_t>) {
    return Checked::add(acc, v, acc);
  } else {
    acc += v;
    return true;
  }
}

template <class I>
struct Aggregates {
  bool any = false;
  I min_row{}, min_col{}, min_srow{}, min_scol{}, max_row{}, max_col{};
  std::size_t paths = 0;
};

// Returns false on int64 overflow.
template <class I>
bool enumerate_products(const TransitionGraph& graph, const LoopClass& cls, const std::vector<DenseInt<I>>& mats,
                        std::size_t depth, const std::vector<std::size_t>& subset, std::size_t budget,
                        Aggregates<I>& agg) {
  std::vector<std::vector<std::size_t>> out(graph.cvs.size());
  for (auto e : cls.edges) out[graph.edges[e].parent].push_back(e);
  std::vector<DenseInt<I>> prod(depth + 1);
  std::vector<std::size_t> next(depth + 1);
  std::vector<CvIndex> at(depth + 1);
  for (CvIndex s : cls.members) {
    std::size_t K = graph.cvs[s].neighbours.size();
    prod[0].rows = prod[0].cols = K;
    prod[0].a.assign(K * K, I(0));
    for (std::size_t i = 0; i < K; ++i) prod[0](i, i) = I(1);
    std::size_t d = 0;
    at[0] = s;
    next[0] = 0;
    for (;;) {
      if (d == depth) {
        const auto& p = prod[d];
        I rmin{}, rmax{}, cmin{}, cmax{};
        for (std::size_t i = 0; i < p.rows; ++i) {
          I sum(0);
          for (std::size_t j = 0; j < p.cols; ++j)
            if (!add_checked(sum, p(i, j))) return false;
          if (i == 0 || sum < rmin) rmin = sum;
          if (i == 0 || sum > rmax) rmax = sum;
        }
        for (std::size_t j = 0; j < p.cols; ++j) {
          I sum(0);
          for (std::size_t i = 0; i < p.rows; ++i)
            if (!add_checked(sum, p(i, j))) return false;
          if (j == 0 || sum < cmin) cmin = sum;
          if (j == 0 || sum > cmax) cmax = sum;
        }
        I srmin{}, scmin{};
        for (std::size_t a = 0; a < subset.size(); ++a) {
          I rs(0), cs(0);
          for (auto b : subset)
            if (!add_checked(rs, p(subset[a], b)) || !add_checked(cs, p(b, subset[a]))) return false;
          if (a == 0 || rs < srmin) srmin = rs;
          if (a == 0 || cs < scmin) scmin = cs;
        }
        if (!agg.any) {
          agg.min_row = rmin;
          agg.max_row = rmax;
          agg.min_col = cmin;
          agg.max_col = cmax;
          agg.min_srow = srmin;
          agg.min_scol = scmin;
          agg.any = true;
        } else {
          if (rmin < agg.min_row) agg.min_row = rmin;
          if (rmax > agg.max_row) agg.max_row = rmax;
          if (cmin < agg.min_col) agg.min_col = cmin;
          if (cmax > agg.max_col) agg.max_col = cmax;
          if (srmin < agg.min_srow) agg.min_srow = srmin;
          if (scmin < agg.min_scol) agg.min_scol = scmin;
        }
        if (++agg.paths > budget)
          throw DimError(DimErrc::PathExplosion, "more than " + std::to_string(budget) + " paths at depth " +
                                                     std::to_string(depth));
        if (d == 0) break;
        --d;
        continue;
      }
      const auto& choices = out[at[d]];
      if (next[d] >= choices.size()) {
        if (d == 0) break;
        --d;
        continue;
      }
      std::size_t e = choices[next[d]++];
      if (!multiply_into(prod[d], mats[e], prod[d + 1])) return false;
      at[d + 1] = graph.edges[e].child;
      next[d + 1] = 0;
      ++d;
    }
  }
  return true;
}

Integer lcm_int(const Integer& a, const Integer& b) { return a / gcd(a, b) * b; }

Rational to_rational(const std::int64_t& v) { return Rational(static_cast<long long>(v)); }
Rational to_rational(const Integer& v) { return Rational(v); }

}  // namespace

NormBounds norm_bounds(const IfsModel& model, const TransitionGraph& graph, const LoopClass& cls,
                       const NormOptions& options) {
  if (options.depth < 1) throw std::invalid_argument("dimcalc: norm depth must be >= 1");
  if (cls.edges.empty()) throw std::invalid_argument("dimcalc: class has no internal edges");
  NormBounds nb;
  nb.depth = options.depth;
  std::optional<std::vector<std::size_t>> subset = options.subset ? options.subset : default_subset(graph, cls);
  if (subset) {
    if (subset->empty()) throw DimError(DimErrc::SubsetInvalidForClass, "empty index subset");
    for (auto k : *subset)
      for (auto v : cls.members)
        if (k >= graph.cvs[v].neighbours.size())
          throw DimError(DimErrc::SubsetInvalidForClass,
                         "index " + std::to_string(k + 1) + " exceeds the neighbour count of CV " +
                             std::to_string(display_id(v)));
    nb.subset = *subset;
  }

  Integer D = 1;
  for (auto e : cls.edges) {
    const auto& m = graph.edges[e].matrix;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0) D = lcm_int(D, denominator(m(i, j)));
  }
  auto scaled = [&](std::size_t e) {
    const auto& m = graph.edges[e].matrix;
    DenseInt<Integer> out;
    out.rows = m.rows();
    out.cols = m.cols();
    out.a.resize(out.rows * out.cols);
    for (std::size_t i = 0; i < out.rows; ++i)
      for (std::size_t j = 0; j < out.cols; ++j) {
        Rational v = m(i, j) * Rational(D);
        out(i, j) = numerator(v);
      }
    return out;
  };

  Rational scale = 1;
  for (std::size_t i = 0; i < options.depth; ++i) scale *= Rational(D);

  auto finish = [&](auto& agg) {
    nb.path_count = agg.paths;
    nb.min_row = to_rational(agg.min_row) / scale;
    nb.max_row = to_rational(agg.max_row) / scale;
    nb.min_col = to_rational(agg.min_col) / scale;
    nb.max_col = to_rational(agg.max_col) / scale;
    nb.min_subset_row = nb.subset.empty() ? Rational(0) : to_rational(agg.min_srow) / scale;
    nb.min_subset_col = nb.subset.empty() ? Rational(0) : to_rational(agg.min_scol) / scale;
  };

  std::vector<DenseInt<std::int64_t>> small(graph.edges.size());
  bool fits = true;
  std::vector<DenseInt<Integer>> big(graph.edges.size());
  for (auto e : cls.edges) {
    big[e] = scaled(e);
    small[e].rows = big[e].rows;
    small[e].cols = big[e].cols;
    for (const auto& v : big[e].a) {
      if (v > Integer(std::numeric_limits<std::int64_t>::max())) fits = false;
      small[e].a.push_back(fits ? v.convert_to<std::int64_t>() : 0);
    }
  }
  bool done = false;
  if (fits) {
    Aggregates<std::int64_t> agg;
    if (enumerate_products(graph, cls, small, options.depth, nb.subset, options.path_budget, agg)) {
      finish(agg);
      done = true;
    }
  }
  if (!done) {
    Aggregates<Integer> agg;
    enumerate_products(graph, cls, big, options.depth, nb.subset, options.path_budget, agg);
    finish(agg);
  }

  nb.lower = nb.min_row;
  nb.lower_kind = NormKind::MinRow;
  if (nb.min_col > nb.lower) {
    nb.lower = nb.min_col;
    nb.lower_kind = NormKind::MinCol;
  }
  if (!nb.subset.empty() && nb.min_subset_row > nb.lower) {
    nb.lower = nb.min_subset_row;
    nb.lower_kind = NormKind::SubsetRowMin;
  }
  if (!nb.subset.empty() && nb.min_subset_col > nb.lower) {
    nb.lower = nb.min_subset_col;
    nb.lower_kind = NormKind::SubsetColMin;
  }
  nb.upper = nb.max_row;
  nb.upper_kind = NormKind::MaxRow;
  if (nb.max_col < nb.upper) {
    nb.upper = nb.max_col;
    nb.upper_kind = NormKind::MaxCol;
  }
  const double invN = 1.0 / static_cast<double>(options.depth);
  constexpr double kSlack = 1e-12;
  nb.per_step = {std::exp(log_rational(nb.lower) * invN) * (1.0 - kSlack),
                 std::exp(log_rational(nb.upper) * invN) * (1.0 + kSlack)};
  nb.exact_lower_root = exact_root(nb.lower, options.depth);
  nb.exact_upper_root = exact_root(nb.upper, options.depth);
  // exact roots need no slack
  if (nb.exact_lower_root) nb.per_step.lo = nb.exact_lower_root->convert_to<double>();
  if (nb.exact_upper_root) nb.per_step.hi = nb.exact_upper_root->convert_to<double>();
  nb.dimension = dimension_of(model, nb.per_step);
  return nb;
}

std::optional<Rational> exact_root(const Rational& q, std::size_t n) {
  if (n == 0 || q <= 0) return std::nullopt;
  Integer num = numerator(q), den = denominator(q), a, b;
  if (!mpz_root(a.backend().data(), num.backend().data(), n)) return std::nullopt;
  if (!mpz_root(b.backend().data(), den.backend().data(), n)) return std::nullopt;
  return Rational(a, b);
}

std::vector<double> DimensionReport::isolated_points() const {
  std::vector<double> out;
  for (const auto& p : points)
    if (p.status == Isolation::Isolated) out.push_back(p.value);
  return out;
}

namespace {

std::vector<std::size_t> simple_cycle_edges(const TransitionGraph& graph, const LoopClass& cls) {
  std::vector<std::size_t> by_parent(graph.cvs.size(), static_cast<std::size_t>(-1));
  for (auto e : cls.edges) by_parent[graph.edges[e].parent] = e;
  std::vector<std::size_t> cyc;
  CvIndex v = cls.members.front();
  do {
    std::size_t e = by_parent[v];
    cyc.push_back(e);
    v = graph.edges[e].child;
  } while (v != cls.members.front() && cyc.size() <= cls.members.size());
  return cyc;
}

ClassDimSet analyze_class(const IfsModel& model, const TransitionGraph& graph, const LoopClass& cls,
                          const AnalysisOptions& options) {
  ClassDimSet s;
  s.cls = cls;
  s.certified_interval = cls.positivity.status == Positivity::Positive;
  if (cls.is_simple_loop) {
    auto cyc = simple_cycle_edges(graph, cls);
    s.exact_cycle = periodic_dimension(model, graph, cyc);
    s.exact_point = s.exact_cycle->dimension.mid();
    s.cycles.cycle_count = 1;
    s.cycles.min_cycle = s.cycles.max_cycle = s.exact_cycle;
    s.cycles.per_step = {s.exact_cycle->per_step.mid(), s.exact_cycle->per_step.mid()};
    s.cycles.dimension = dimension_of(model, s.cycles.per_step);
    s.has_inner = true;
    s.inner_per_step = s.outer_per_step = s.cycles.per_step;
    s.dim_inner = s.dim_outer = s.cycles.dimension;
    s.certified_interval = true;  // a single point
    return s;
  }
  s.cycles = enumerate_cycles(model, graph, cls, options.cycle_len);
  s.has_inner = !s.cycles.empty();
  s.inner_per_step = s.cycles.per_step;
  s.dim_inner = s.cycles.dimension;
  NormOptions no;
  no.depth = options.bound_len;
  no.path_budget = options.path_budget;
  if (cls.is_essential && options.subset) no.subset = options.subset;
  s.norms = norm_bounds(model, graph, cls, no);
  s.outer_per_step = s.norms->per_step;
  s.dim_outer = s.norms->dimension;
  // bounds pinched to one rational: the range is exactly that value
  const auto& nb = *s.norms;
  if (s.has_inner && nb.exact_lower_root && nb.exact_upper_root && *nb.exact_lower_root == *nb.exact_upper_root) {
    s.inner_per_step = s.outer_per_step;
    s.dim_inner = s.dim_outer = dimension_of(model, s.outer_per_step);
    s.cycles.per_step = s.inner_per_step;
    s.cycles.dimension = s.dim_inner;
  }
  return s;
}

std::vector<Enclosure> merge(std::vector<Enclosure> pieces) {
  std::sort(pieces.begin(), pieces.end(), [](const Enclosure& a, const Enclosure& b) { return a.lo < b.lo; });
  std::vector<Enclosure> out;
  for (const auto& p : pieces) {
    if (!out.empty() && p.lo <= out.back().hi + kDimTol)
      out.back().hi = std::max(out.back().hi, p.hi);
    else
      out.push_back(p);
  }
  return out;
}

}  // namespace

DimensionReport assemble_report(const IfsModel& model, const TransitionGraph& graph,
                                const std::vector<LoopClass>& classes, const AnalysisOptions& options) {
  DimensionReport r;
  r.cv_count = graph.cvs.size();
  r.dim_at_zero = dim_at_zero(model);
  r.supported_by_theory = model.supported_by_theory();
  r.options = options;
  r.sets.resize(classes.size());

  std::vector<std::exception_ptr> errors(classes.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i; (i = cursor.fetch_add(1)) < classes.size();) {
      try {
        r.sets[i] = analyze_class(model, graph, classes[i], options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(classes.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (std::size_t i = 0; i < r.sets.size(); ++i)
    if (r.sets[i].cls.is_essential) r.essential = i;

  // Degenerate value sets become points, grouped by value.
  for (std::size_t i = 0; i < r.sets.size(); ++i) {
    const auto& s = r.sets[i];
    if (!s.has_inner || s.dim_inner.width() > kDimTol) continue;
    double v = s.exact_point ? *s.exact_point : s.dim_inner.mid();
    auto it = std::find_if(r.points.begin(), r.points.end(),
                           [&](const DimensionPoint& p) { return std::abs(p.value - v) <= kDimTol; });
    if (it == r.points.end()) r.points.push_back({v, Isolation::Undecided, {i}});
    else it->classes.push_back(i);
  }
  if (std::none_of(r.points.begin(), r.points.end(),
                   [&](const DimensionPoint& p) { return std::abs(p.value - r.dim_at_zero) <= kDimTol; }))
    r.points.push_back({r.dim_at_zero, Isolation::Undecided, {}});
  std::sort(r.points.begin(), r.points.end(), [](const auto& a, const auto& b) { return a.value < b.value; });

  auto status_of = [&](const Enclosure& values, const std::vector<std::size_t>& own) {
    bool outside_all = true;
    for (std::size_t j = 0; j < r.sets.size(); ++j) {
      if (std::find(own.begin(), own.end(), j) != own.end()) continue;
      const auto& o = r.sets[j];
      if (o.has_inner && o.dim_inner.contains(values, kDimTol)) return Isolation::NotIsolated;
      if (!(values.hi < o.dim_outer.lo - kDimTol || values.lo > o.dim_outer.hi + kDimTol)) outside_all = false;
    }
    return outside_all ? Isolation::Isolated : Isolation::Undecided;
  };
  for (auto& p : r.points) p.status = status_of({p.value, p.value}, p.classes);
  for (std::size_t i = 0; i < r.sets.size(); ++i) {
    auto& s = r.sets[i];
    std::vector<std::size_t> own{i};
    for (const auto& p : r.points)
      if (std::find(p.classes.begin(), p.classes.end(), i) != p.classes.end()) own = p.classes;
    s.isolation = status_of(s.has_inner ? s.dim_inner : s.dim_outer, own);
  }

  std::vector<Enclosure> inner, outer;
  for (const auto& s : r.sets) {
    if (s.has_inner) inner.push_back(s.dim_inner);
    outer.push_back(s.dim_outer);
  }
  inner.push_back({r.dim_at_zero, r.dim_at_zero});
  outer.push_back({r.dim_at_zero, r.dim_at_zero});
  r.union_inner = merge(std::move(inner));
  r.union_outer = merge(std::move(outer));
  return r;
}

}  // namespace finitype
