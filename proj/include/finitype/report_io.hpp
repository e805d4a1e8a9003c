// report_io.hpp
// Input document parsing, output document (JSON) and the text report.
#ifndef FINITYPE_REPORT_IO_HPP
#define FINITYPE_REPORT_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "finitype/dimcalc.hpp"
#include "finitype/oracle.hpp"

namespace finitype {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

class InputError : public std::runtime_error {
 public:
  InputError(const std::string& field, const std::string& what)
      : std::runtime_error("input: " + field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Structural parse only; call validate() on the result.
IfsSpec parse_input(const nlohmann::json& doc);
IfsSpec load_input(const std::string& path);
ordered_json input_to_json(const IfsSpec& spec);

struct RunParameters {
  std::size_t max_cvs = kDefaultCvCap;
  std::size_t cycle_len = 10;
  std::size_t bound_len = 8;
  std::optional<std::vector<std::size_t>> subset;  // 1-based as given by the user
  std::size_t oracle_level = 0;
  bool allow_irregular = false;
};

// Everything one analysis produces.
struct Analysis {
  IfsModel model;
  TransitionGraph graph;
  std::vector<LoopClass> classes;
  DimensionReport report;
  std::optional<OracleVerdict> oracle;
};

Analysis analyze(const IfsSpec& spec, const RunParameters& params, unsigned threads = 1);

struct ClassSummary {
  std::vector<std::size_t> members;  // display ids
  bool maximal = false, essential = false, simple_loop = false, certified_interval = false;
  std::string positivity;
  std::vector<std::size_t> positivity_witness;  // display ids along the witness path
  std::string isolation;
  std::size_t cycle_count = 0;
  std::optional<std::pair<double, double>> spectral_range_inner, dim_inner;
  std::pair<double, double> spectral_range_outer{0, 0}, dim_outer{0, 0};
  std::optional<double> exact_point;
  std::optional<std::size_t> bound_depth;

  bool operator==(const ClassSummary&) const = default;
};

struct PointSummary {
  double value = 0;
  std::string status;
  std::vector<std::size_t> classes;  // 1-based class numbers
  bool operator==(const PointSummary&) const = default;
};

// Mirror of DimensionReport with reals rounded to 10 significant digits.
struct OutputDocument {
  std::string version;
  std::string name;
  RunParameters parameters;
  bool supported_by_theory = true;
  std::size_t cv_count = 0;
  std::size_t essential_size = 0;
  double dim_at_zero = 0;
  std::vector<ClassSummary> classes;
  std::vector<PointSummary> points;
  std::vector<double> isolated_points;
  std::vector<std::pair<double, double>> union_inner, union_outer;
  std::optional<bool> oracle_ok;

  bool operator==(const OutputDocument&) const = default;
};

bool operator==(const RunParameters& a, const RunParameters& b);

double round_sig(double x, int digits = 10);

OutputDocument make_output(const Analysis& a, const RunParameters& params);
ordered_json to_json(const OutputDocument& doc);
OutputDocument output_from_json(const nlohmann::json& j);

struct TextOptions {
  bool matrices = false;
};

std::string render_text(const Analysis& a, TextOptions options = {});

// "%#.10g" style, e.g. 1.440420090
std::string fmt10(double x);

}  // namespace finitype

#endif  // FINITYPE_REPORT_IO_HPP
