// netgraph.hpp
// Reduced characteristic vectors and the transition graph between them.
#ifndef FINITYPE_NETGRAPH_HPP
#define FINITYPE_NETGRAPH_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "finitype/ifsmodel.hpp"
#include "finitype/matrix.hpp"

namespace finitype {

// CV indices are 0-based internally. Everything user facing prints index + 1,
// so the root is "1".
using CvIndex = std::size_t;

inline std::size_t display_id(CvIndex i) { return i + 1; }

struct CharacteristicVector {
  FieldElement length;                  // normalized length in (0,1]
  std::vector<FieldElement> neighbours;  // strictly increasing

  friend bool operator==(const CharacteristicVector& a, const CharacteristicVector& b) {
    return a.length == b.length && a.neighbours == b.neighbours;
  }
  std::size_t hash() const;
};

struct ChildInterval {
  CharacteristicVector cv;
  RationalMatrix matrix;  // parent neighbours x child neighbours
  FieldElement offset;    // left end inside the parent, parent-normalized units
};

struct TransitionEdge {
  CvIndex parent = 0;
  CvIndex child = 0;
  RationalMatrix matrix;
  std::size_t multiplicity = 1;
  std::vector<FieldElement> offsets;  // one per multiplicity, increasing
};

struct TransitionGraph {
  std::vector<CharacteristicVector> cvs;
  std::vector<TransitionEdge> edges;  // grouped by parent, in discovery order
  CvIndex root = 0;

  std::size_t size() const { return cvs.size(); }
  // Edge indices leaving each CV.
  std::vector<std::vector<std::size_t>> out_edges() const;
};

enum class GraphErrc { CapExceeded, InternalInconsistency };

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrc code, const std::string& what, std::size_t cap = 0)
      : std::runtime_error("netgraph: " + what), code_(code), cap_(cap) {}
  GraphErrc code() const noexcept { return code_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  GraphErrc code_;
  std::size_t cap_;
};

CharacteristicVector root_cv(const IfsModel& model);

// Children of a CV, left to right.
std::vector<ChildInterval> children(const CharacteristicVector& parent, const IfsModel& model);

constexpr std::size_t kDefaultCvCap = 10000;

// Worklist closure from the root; ids in discovery order. Throws CapExceeded.
TransitionGraph build_graph(const IfsModel& model, std::size_t cap_cvs = kDefaultCvCap);

// DOT digraph. Nodes in `highlight` (e.g. the essential class) are filled.
std::string export_dot(const TransitionGraph& graph, std::span<const CvIndex> highlight = {});

}  // namespace finitype

#endif  // FINITYPE_NETGRAPH_HPP
