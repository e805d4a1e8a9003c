// oracle.hpp
// Brute-force net intervals from all words of length n, and a checker that
// compares them against the transition graph.
#ifndef FINITYPE_ORACLE_HPP
#define FINITYPE_ORACLE_HPP

#include <string>
#include <vector>

#include "finitype/netgraph.hpp"

namespace finitype {

struct NetInterval {
  FieldElement left, right;
  std::vector<FieldElement> neighbours;  // normalized offsets, increasing
  std::vector<Rational> weights;         // Q_n = (P_n^1, ..., P_n^K)
};

struct LevelSnapshot {
  std::size_t n = 0;
  std::vector<FieldElement> points;  // sorted distinct S_sigma(0), S_sigma(1)
  std::vector<NetInterval> intervals;
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error("oracle: " + what) {}
};

constexpr std::size_t kDefaultWordBudget = 1'000'000;

LevelSnapshot brute_level(const IfsModel& model, std::size_t n, std::size_t budget = kDefaultWordBudget);

// A level-n interval reached by walking the graph.
struct ExpandedInterval {
  FieldElement left;
  CvIndex cv = 0;
  std::vector<Rational> weights;
  std::vector<CvIndex> path;  // root .. cv
};

std::vector<ExpandedInterval> expand_graph(const IfsModel& model, const TransitionGraph& graph, std::size_t n);

struct Mismatch {
  std::vector<CvIndex> path;
  std::string what;
  std::string expected;
  std::string actual;
};

struct OracleVerdict {
  std::size_t level = 0;
  std::size_t intervals_checked = 0;
  std::vector<Mismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

OracleVerdict check_graph_against_oracle(const IfsModel& model, const TransitionGraph& graph, std::size_t n,
                                         std::size_t budget = kDefaultWordBudget);

}  // namespace finitype

#endif  // FINITYPE_ORACLE_HPP
