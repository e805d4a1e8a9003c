// Shared fixtures for the unit tests and the acceptance driver.
#ifndef FINITYPE_TESTS_SUPPORT_HPP
#define FINITYPE_TESTS_SUPPORT_HPP

#include <cmath>
#include <string>
#include <vector>

#include "finitype/report_io.hpp"

namespace finitype::testing {

inline std::string corpus_path(const std::string& rel) { return std::string(FINITYPE_CORPUS_DIR) + "/" + rel; }

inline IfsSpec corpus_input(const std::string& name) { return load_input(corpus_path("inputs/" + name + ".json")); }

inline FieldSpec golden_field() { return make_field({-1, 1, 1}, {Rational(1, 2), Rational(7, 10)}); }
inline FieldSpec third_field() { return make_field({-1, 3}, {Rational(1, 4), Rational(1, 2)}); }

inline IfsSpec golden_spec() {
  IfsSpec s;
  s.field = golden_field();
  s.translations = {s.field.zero(), s.field.one() - s.field.rho()};
  s.probabilities = uniform_probabilities(1);
  s.name = "golden";
  return s;
}

// rho = 1/3, d_j = 2j/(3m)
inline IfsSpec thirds_spec(int m, std::vector<Rational> probs = {}) {
  IfsSpec s;
  s.field = third_field();
  for (int j = 0; j <= m; ++j) s.translations.push_back(s.field.from_rational(Rational(2 * j, 3 * m)));
  s.probabilities = probs.empty() ? uniform_probabilities(m) : std::move(probs);
  return s;
}

inline IfsModel golden_model() { return validated(golden_spec()); }

// Members as display ids.
inline std::vector<std::size_t> ids(const std::vector<CvIndex>& v) {
  std::vector<std::size_t> out;
  for (auto i : v) out.push_back(display_id(i));
  return out;
}

inline const LoopClass* class_with(const std::vector<LoopClass>& classes, std::vector<std::size_t> display) {
  for (const auto& c : classes)
    if (ids(c.members) == display) return &c;
  return nullptr;
}

// Edge index for parent -> child (display ids) with the given matrix, or -1.
inline long find_edge(const TransitionGraph& g, std::size_t parent, std::size_t child, const RationalMatrix& m) {
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    if (display_id(ed.parent) == parent && display_id(ed.child) == child && ed.matrix.rows() == m.rows() &&
        ed.matrix.cols() == m.cols() && ed.matrix == m)
      return static_cast<long>(e);
  }
  return -1;
}

inline RationalMatrix rmat(std::initializer_list<std::initializer_list<long>> rows) {
  RationalMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (long v : r) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Fast-suite models: everything shipped except the heavy census rows.
inline std::vector<std::string> fast_inputs() {
  return {"golden",       "cantor_m3",  "cantor_m4",    "cantor_m5",    "cantor_m6",
          "cantor_m7",    "cantor_m8",  "cantor_m9",    "cantor_m10",   "x3_x_1",
          "x3_mx2_2x_1",  "x3_x2_x_1",  "x4_x3_x2_x_1", "golden_square", "uniform_m3",
          "uniform_m4",   "uniform_m5"};
}

}  // namespace finitype::testing

#endif  // FINITYPE_TESTS_SUPPORT_HPP
