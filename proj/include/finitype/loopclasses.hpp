// loopclasses.hpp
// Maximal loop classes, the essential class and positive type.
#ifndef FINITYPE_LOOPCLASSES_HPP
#define FINITYPE_LOOPCLASSES_HPP

#include <cstddef>
#include <vector>

#include "finitype/netgraph.hpp"

namespace finitype {

enum class Positivity { Positive, NotPositive, Unknown };

const char* to_string(Positivity p);

struct PositivityVerdict {
  Positivity status = Positivity::Unknown;
  std::vector<std::size_t> witness;  // edge indices of a minimal positive path
  std::size_t length = 0;            // witness length, or exhausted length
  std::size_t states = 0;            // boolean patterns visited
};

struct LoopClass {
  std::vector<CvIndex> members;     // ascending
  std::vector<std::size_t> edges;   // internal edge indices, ascending
  bool is_maximal = false;
  bool is_essential = false;
  bool is_simple_loop = false;
  PositivityVerdict positivity;

  bool contains(CvIndex v) const;
};

// Class on an explicit member set using every edge between members.
LoopClass make_loop_class(const TransitionGraph& graph, std::vector<CvIndex> members);

// Strongly connected components (ascending members), ordered by smallest member.
std::vector<std::vector<CvIndex>> strongly_connected_components(const TransitionGraph& graph);

// SCCs with at least one internal edge, ordered by smallest member.
std::vector<LoopClass> maximal_loop_classes(const TransitionGraph& graph);

class EssentialClassNotUnique : public std::runtime_error {
 public:
  explicit EssentialClassNotUnique(std::size_t found)
      : std::runtime_error("loopclasses: expected exactly one essential class, found " + std::to_string(found)) {}
};

LoopClass essential_class(const TransitionGraph& graph);

// Internal edges form one directed cycle, counting parallel edges separately.
bool is_simple_loop(const TransitionGraph& graph, const LoopClass& cls);

struct PositivityOptions {
  std::size_t max_len = 1000;        // longest path explored
  std::size_t max_states = 2000000;  // boolean pattern cap
};

// Boolean-pattern closure over the class's edges.
PositivityVerdict positivity_certificate(const TransitionGraph& graph, const LoopClass& cls,
                                         PositivityOptions options = {});

// Maximal classes with every flag and verdict filled in.
std::vector<LoopClass> classify_all(const TransitionGraph& graph, PositivityOptions options = {});

// Product of edge matrices along a path.
RationalMatrix path_matrix(const TransitionGraph& graph, std::span<const std::size_t> edges);

}  // namespace finitype

#endif  // FINITYPE_LOOPCLASSES_HPP
