// dimcalc.hpp
// Spectral radii, periodic-point dimensions, pseudo-norm bounds and the
// per-class dimension report.
#ifndef FINITYPE_DIMCALC_HPP
#define FINITYPE_DIMCALC_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "finitype/loopclasses.hpp"

namespace finitype {

struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
  bool contains(const Enclosure& e, double tol = 0.0) const { return e.lo >= lo - tol && e.hi <= hi + tol; }
};

enum class DimErrc { ZeroRow, NotSquare, NotACycle, EdgesNotAdmissible, SubsetInvalidForClass, PathExplosion };

class DimError : public std::runtime_error {
 public:
  DimError(DimErrc code, const std::string& what) : std::runtime_error("dimcalc: " + what), code_(code) {}
  DimErrc code() const noexcept { return code_; }

 private:
  DimErrc code_;
};

// Perron root of a nonnegative square matrix with no zero row.
// hi - lo <= 1e-10 * hi; reducible input takes the max over irreducible blocks.
Enclosure spectral_radius(const Matrix<double>& m);
Enclosure spectral_radius(const RationalMatrix& m);

// log p_0 / log rho
double dim_at_zero(const IfsModel& model);
// log p_0/log rho + log g/log rho for a per-step growth g.
double dimension_of(const IfsModel& model, double per_step);
// Decreasing in g, so the ends swap.
Enclosure dimension_of(const IfsModel& model, const Enclosure& per_step);

struct CycleDim {
  std::vector<std::size_t> edges;
  std::vector<CvIndex> vertices;  // gamma_1 .. gamma_L
  std::size_t length = 0;
  Enclosure spectral_radius;
  Enclosure per_step;  // sp^(1/L)
  Enclosure dimension;
};

CycleDim periodic_dimension(const IfsModel& model, const TransitionGraph& graph,
                            std::span<const std::size_t> cycle_edges);

struct CycleScan {
  std::size_t cycle_count = 0;
  std::optional<CycleDim> min_cycle;  // smallest per-step value
  std::optional<CycleDim> max_cycle;
  Enclosure per_step;   // [min, max] of per-step midpoints
  Enclosure dimension;  // induced inner interval
  std::vector<CycleDim> cycles;  // only with keep_all

  bool empty() const { return cycle_count == 0; }
};

// Closed walks of length <= max_len inside the class, one per rotation class.
CycleScan enumerate_cycles(const IfsModel& model, const TransitionGraph& graph, const LoopClass& cls,
                           std::size_t max_len, bool keep_all = false);

// Subset norms restrict both indices to C: SubsetRowMin = min over j in C of
// sum_{k in C} T_jk, SubsetColMin = min over k in C of sum_{j in C} T_jk.
enum class NormKind { MinRow, MaxRow, MinCol, MaxCol, SubsetRowMin, SubsetColMin };

const char* to_string(NormKind kind);

template <class Scalar>
Scalar pseudo_norm(const Matrix<Scalar>& m, NormKind kind, std::span<const std::size_t> subset = {}) {
  const Eigen::Index R = m.rows(), C = m.cols();
  auto row_sum = [&](Eigen::Index i) {
    Scalar s = 0;
    for (Eigen::Index j = 0; j < C; ++j) s += m(i, j);
    return s;
  };
  auto col_sum = [&](Eigen::Index j) {
    Scalar s = 0;
    for (Eigen::Index i = 0; i < R; ++i) s += m(i, j);
    return s;
  };
  Scalar best = 0;
  switch (kind) {
    case NormKind::MinRow:
    case NormKind::MaxRow:
      for (Eigen::Index i = 0; i < R; ++i) {
        Scalar s = row_sum(i);
        if (i == 0 || (kind == NormKind::MinRow ? s < best : s > best)) best = s;
      }
      return best;
    case NormKind::MinCol:
    case NormKind::MaxCol:
      for (Eigen::Index j = 0; j < C; ++j) {
        Scalar s = col_sum(j);
        if (j == 0 || (kind == NormKind::MinCol ? s < best : s > best)) best = s;
      }
      return best;
    case NormKind::SubsetRowMin:
    case NormKind::SubsetColMin: {
      if (subset.empty()) throw DimError(DimErrc::SubsetInvalidForClass, "empty index subset");
      bool first = true;
      for (auto a : subset) {
        if (static_cast<Eigen::Index>(a) >= C || static_cast<Eigen::Index>(a) >= R)
          throw DimError(DimErrc::SubsetInvalidForClass, "subset index out of range");
        Scalar s = 0;
        for (auto b : subset) s += kind == NormKind::SubsetRowMin ? m(a, b) : m(b, a);
        if (first || s < best) best = s;
        first = false;
      }
      return best;
    }
  }
  return best;
}

struct NormOptions {
  std::size_t depth = 8;
  std::optional<std::vector<std::size_t>> subset;  // 0-based; default: full set when valid
  std::size_t path_budget = 50'000'000;
};

struct NormBounds {
  std::size_t depth = 0;
  std::size_t path_count = 0;
  std::vector<std::size_t> subset;  // empty when no subset norm applied
  // Exact extremes over all length-N paths of the normalized products.
  Rational min_row, min_col, min_subset_row, min_subset_col;
  Rational max_row, max_col;
  Rational lower, upper;  // best lower / upper aggregate
  NormKind lower_kind = NormKind::MinRow, upper_kind = NormKind::MaxRow;
  // lower^(1/N) and upper^(1/N) when they are rational
  std::optional<Rational> exact_lower_root, exact_upper_root;
  Enclosure per_step;   // [lower^(1/N), upper^(1/N)] with 1e-12 slack
  Enclosure dimension;  // outer interval
};

// q^(1/n) when it is rational.
std::optional<Rational> exact_root(const Rational& q, std::size_t n);

// Index set {0..K-1} when every member has K neighbours, otherwise nothing.
std::optional<std::vector<std::size_t>> default_subset(const TransitionGraph& graph, const LoopClass& cls);

NormBounds norm_bounds(const IfsModel& model, const TransitionGraph& graph, const LoopClass& cls,
                       const NormOptions& options = {});

struct AnalysisOptions {
  std::size_t cycle_len = 10;
  std::size_t bound_len = 8;
  std::optional<std::vector<std::size_t>> subset;  // applied to the essential class
  std::size_t path_budget = 50'000'000;
  PositivityOptions positivity;
  unsigned threads = 1;
};

enum class Isolation { Isolated, NotIsolated, Undecided };

const char* to_string(Isolation s);

struct ClassDimSet {
  LoopClass cls;
  std::optional<CycleDim> exact_cycle;  // simple loops
  std::optional<double> exact_point;
  CycleScan cycles;
  std::optional<NormBounds> norms;
  bool has_inner = false;
  Enclosure inner_per_step, outer_per_step;
  Enclosure dim_inner, dim_outer;
  bool certified_interval = false;
  Isolation isolation = Isolation::Undecided;
};

struct DimensionPoint {
  double value = 0.0;
  Isolation status = Isolation::Undecided;
  std::vector<std::size_t> classes;  // indices into DimensionReport::sets
};

struct DimensionReport {
  std::size_t cv_count = 0;
  std::size_t essential = 0;  // index into sets
  std::vector<ClassDimSet> sets;
  double dim_at_zero = 0.0;
  std::vector<DimensionPoint> points;     // degenerate value sets
  std::vector<Enclosure> union_inner;     // merged attained pieces
  std::vector<Enclosure> union_outer;     // merged enclosing pieces
  bool supported_by_theory = true;
  AnalysisOptions options;

  std::vector<double> isolated_points() const;
};

// Tolerance for dimension comparisons.
constexpr double kDimTol = 1e-9;

DimensionReport assemble_report(const IfsModel& model, const TransitionGraph& graph,
                                const std::vector<LoopClass>& classes, const AnalysisOptions& options = {});

}  // namespace finitype

#endif  // FINITYPE_DIMCALC_HPP
