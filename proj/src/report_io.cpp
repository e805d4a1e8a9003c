#include "finitype/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace finitype {

namespace {

Rational rational_field(const nlohmann::json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
  throw InputError(where, "expected a rational as a string such as \"3/8\"");
}

const nlohmann::json& member(const nlohmann::json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where == "$" ? std::string(key) : where + "." + key, "missing field");
  return *it;
}

std::string poly_string(const std::vector<std::int64_t>& p) {
  std::string s;
  for (std::size_t i = p.size(); i-- > 0;) {
    auto c = p[i];
    if (c == 0) continue;
    std::string term;
    auto a = c < 0 ? -c : c;
    if (i == 0 || a != 1) term += std::to_string(a);
    if (i >= 1) term += "x";
    if (i > 1) term += "^" + std::to_string(i);
    if (s.empty()) s = (c < 0 ? "-" : "") + term;
    else s += (c < 0 ? " - " : " + ") + term;
  }
  return s;
}

ordered_json pair_json(const std::pair<double, double>& p) { return ordered_json::array({p.first, p.second}); }

template <class T>
ordered_json opt_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, std::pair<double, double>>) return pair_json(*v);
  else return *v;
}

std::pair<double, double> rounded(const Enclosure& e) { return {round_sig(e.lo), round_sig(e.hi)}; }

std::pair<double, double> read_pair(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

std::string ids(const std::vector<CvIndex>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(display_id(v[i]));
  return s + "]";
}

std::string interval(const Enclosure& e) { return "[" + fmt10(e.lo) + ", " + fmt10(e.hi) + "]"; }

std::string count_word(std::size_t n) {
  static const char* words[] = {"zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"};
  return n <= 10 ? words[n] : std::to_string(n);
}

std::string matrix_text(const RationalMatrix& m) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    s += i ? "; " : "";
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += (j ? " " : "") + rational_to_string(m(i, j));
  }
  return s + "]";
}

}  // namespace

std::string fmt10(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.10g", x);
  return buf;
}

double round_sig(double x, int digits) {
  if (x == 0 || !std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  return std::strtod(buf, nullptr);
}

IfsSpec parse_input(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("$", "document must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const auto& k = it.key();
    if (k != "rho" && k != "translations" && k != "probabilities" && k != "name" && k != "description")
      throw InputError(k, "unknown field");
  }
  IfsSpec spec;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw InputError("name", "expected a string");
    spec.name = doc["name"].get<std::string>();
  }
  const auto& rho = member(doc, "rho", "$");
  if (!rho.is_object()) throw InputError("rho", "expected an object");
  const auto& mp = member(rho, "minpoly", "rho");
  if (!mp.is_array() || mp.size() < 2) throw InputError("rho.minpoly", "expected an array of at least two integers");
  std::vector<std::int64_t> poly;
  for (std::size_t i = 0; i < mp.size(); ++i) {
    if (!mp[i].is_number_integer()) throw InputError("rho.minpoly[" + std::to_string(i) + "]", "expected an integer");
    poly.push_back(mp[i].get<std::int64_t>());
  }
  const auto& iv = member(rho, "interval", "rho");
  if (!iv.is_array() || iv.size() != 2) throw InputError("rho.interval", "expected [\"lo\", \"hi\"]");
  RationalInterval interval{rational_field(iv[0], "rho.interval[0]"), rational_field(iv[1], "rho.interval[1]")};
  spec.field = make_field(poly, interval);

  const auto& tr = member(doc, "translations", "$");
  if (!tr.is_array() || tr.empty()) throw InputError("translations", "expected a nonempty array");
  for (std::size_t i = 0; i < tr.size(); ++i) {
    std::string where = "translations[" + std::to_string(i) + "]";
    std::vector<Rational> coeffs;
    if (tr[i].is_array()) {
      if (tr[i].empty()) throw InputError(where, "empty coefficient array");
      for (std::size_t k = 0; k < tr[i].size(); ++k)
        coeffs.push_back(rational_field(tr[i][k], where + "[" + std::to_string(k) + "]"));
    } else {
      coeffs.push_back(rational_field(tr[i], where));
    }
    spec.translations.push_back(spec.field.element(std::move(coeffs)));
  }

  const auto& pr = member(doc, "probabilities", "$");
  const int m = static_cast<int>(spec.translations.size()) - 1;
  if (pr.is_string()) {
    if (pr.get<std::string>() != "uniform") throw InputError("probabilities", "expected \"uniform\", an array or an object");
    if (m < 1) throw InputError("probabilities", "need at least two maps");
    spec.probabilities = uniform_probabilities(m);
  } else if (pr.is_object()) {
    const auto& bc = member(pr, "binomial_convolution", "probabilities");
    if (!bc.is_number_integer() || bc.get<int>() < 1)
      throw InputError("probabilities.binomial_convolution", "expected a positive integer");
    spec.probabilities = binomial_convolution_probabilities(bc.get<int>());
  } else if (pr.is_array()) {
    for (std::size_t i = 0; i < pr.size(); ++i)
      spec.probabilities.push_back(rational_field(pr[i], "probabilities[" + std::to_string(i) + "]"));
  } else {
    throw InputError("probabilities", "expected \"uniform\", an array or an object");
  }
  return spec;
}

IfsSpec load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open file");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path, e.what());
  }
  return parse_input(doc);
}

ordered_json input_to_json(const IfsSpec& spec) {
  ordered_json j;
  if (!spec.name.empty()) j["name"] = spec.name;
  ordered_json rho;
  rho["minpoly"] = spec.field.minpoly();
  rho["interval"] = {rational_to_string(spec.field.isolating_interval().lo),
                     rational_to_string(spec.field.isolating_interval().hi)};
  j["rho"] = rho;
  ordered_json tr = ordered_json::array();
  for (const auto& d : spec.translations) {
    ordered_json c = ordered_json::array();
    std::size_t last = d.coeffs().size();
    while (last > 1 && d.coeffs()[last - 1] == 0) --last;
    for (std::size_t i = 0; i < last; ++i) c.push_back(rational_to_string(d.coeffs()[i]));
    tr.push_back(c);
  }
  j["translations"] = tr;
  ordered_json pr = ordered_json::array();
  for (const auto& p : spec.probabilities) pr.push_back(rational_to_string(p));
  j["probabilities"] = pr;
  return j;
}

Analysis analyze(const IfsSpec& spec, const RunParameters& params, unsigned threads) {
  ValidateOptions vo;
  vo.allow_irregular = params.allow_irregular;
  Analysis a{validated(spec, vo), {}, {}, {}, std::nullopt};
  a.graph = build_graph(a.model, params.max_cvs);
  a.classes = classify_all(a.graph);
  AnalysisOptions ao;
  ao.cycle_len = params.cycle_len;
  ao.bound_len = params.bound_len;
  ao.threads = threads;
  if (params.subset) {
    std::vector<std::size_t> zero_based;
    for (auto i : *params.subset) {
      if (i < 1) throw InputError("--subset", "indices are 1-based");
      zero_based.push_back(i - 1);
    }
    ao.subset = zero_based;
  }
  a.report = assemble_report(a.model, a.graph, a.classes, ao);
  if (params.oracle_level > 0) a.oracle = check_graph_against_oracle(a.model, a.graph, params.oracle_level);
  return a;
}

bool operator==(const RunParameters& a, const RunParameters& b) {
  return a.max_cvs == b.max_cvs && a.cycle_len == b.cycle_len && a.bound_len == b.bound_len &&
         a.subset == b.subset && a.oracle_level == b.oracle_level && a.allow_irregular == b.allow_irregular;
}

OutputDocument make_output(const Analysis& a, const RunParameters& params) {
  OutputDocument d;
  d.version = kVersion;
  d.name = a.model.spec().name;
  d.parameters = params;
  d.supported_by_theory = a.report.supported_by_theory;
  d.cv_count = a.report.cv_count;
  d.essential_size = a.report.sets.empty() ? 0 : a.report.sets[a.report.essential].cls.members.size();
  d.dim_at_zero = round_sig(a.report.dim_at_zero);
  for (const auto& s : a.report.sets) {
    ClassSummary c;
    for (auto v : s.cls.members) c.members.push_back(display_id(v));
    c.maximal = s.cls.is_maximal;
    c.essential = s.cls.is_essential;
    c.simple_loop = s.cls.is_simple_loop;
    c.certified_interval = s.certified_interval;
    c.positivity = to_string(s.cls.positivity.status);
    for (auto e : s.cls.positivity.witness) {
      if (c.positivity_witness.empty()) c.positivity_witness.push_back(display_id(a.graph.edges[e].parent));
      c.positivity_witness.push_back(display_id(a.graph.edges[e].child));
    }
    c.isolation = to_string(s.isolation);
    c.cycle_count = s.cycles.cycle_count;
    if (s.has_inner) {
      c.spectral_range_inner = rounded(s.inner_per_step);
      c.dim_inner = rounded(s.dim_inner);
    }
    c.spectral_range_outer = rounded(s.outer_per_step);
    c.dim_outer = rounded(s.dim_outer);
    if (s.exact_point) c.exact_point = round_sig(*s.exact_point);
    if (s.norms) c.bound_depth = s.norms->depth;
    d.classes.push_back(std::move(c));
  }
  for (const auto& p : a.report.points) {
    PointSummary ps{round_sig(p.value), to_string(p.status), {}};
    for (auto c : p.classes) ps.classes.push_back(c + 1);
    d.points.push_back(ps);
    if (p.status == Isolation::Isolated) d.isolated_points.push_back(round_sig(p.value));
  }
  for (const auto& e : a.report.union_inner) d.union_inner.push_back(rounded(e));
  for (const auto& e : a.report.union_outer) d.union_outer.push_back(rounded(e));
  if (a.oracle) d.oracle_ok = a.oracle->ok();
  return d;
}

ordered_json to_json(const OutputDocument& d) {
  ordered_json j;
  j["version"] = d.version;
  j["name"] = d.name;
  ordered_json p;
  p["max_cvs"] = d.parameters.max_cvs;
  p["cycle_len"] = d.parameters.cycle_len;
  p["bound_len"] = d.parameters.bound_len;
  p["subset"] = d.parameters.subset ? ordered_json(*d.parameters.subset) : ordered_json(nullptr);
  p["oracle_level"] = d.parameters.oracle_level;
  p["allow_irregular"] = d.parameters.allow_irregular;
  j["parameters"] = p;
  j["supported_by_theory"] = d.supported_by_theory;
  j["cv_count"] = d.cv_count;
  j["essential_size"] = d.essential_size;
  j["dim_at_zero"] = d.dim_at_zero;
  ordered_json classes = ordered_json::array();
  for (const auto& c : d.classes) {
    ordered_json cj;
    cj["members"] = c.members;
    ordered_json flags;
    flags["maximal"] = c.maximal;
    flags["essential"] = c.essential;
    flags["simple_loop"] = c.simple_loop;
    flags["positivity"] = c.positivity;
    flags["certified_interval"] = c.certified_interval;
    flags["isolation"] = c.isolation;
    cj["flags"] = flags;
    cj["positivity_witness"] = c.positivity_witness;
    cj["cycle_count"] = c.cycle_count;
    cj["spectral_range_inner"] = opt_json(c.spectral_range_inner);
    cj["spectral_range_outer"] = pair_json(c.spectral_range_outer);
    cj["dim_inner"] = opt_json(c.dim_inner);
    cj["dim_outer"] = pair_json(c.dim_outer);
    cj["exact_point"] = opt_json(c.exact_point);
    cj["bound_depth"] = opt_json(c.bound_depth);
    classes.push_back(cj);
  }
  j["classes"] = classes;
  ordered_json points = ordered_json::array();
  for (const auto& p : d.points) {
    ordered_json pj;
    pj["value"] = p.value;
    pj["status"] = p.status;
    pj["classes"] = p.classes;
    points.push_back(pj);
  }
  j["points"] = points;
  j["isolated_points"] = d.isolated_points;
  ordered_json ui = ordered_json::array(), uo = ordered_json::array();
  for (const auto& e : d.union_inner) ui.push_back(pair_json(e));
  for (const auto& e : d.union_outer) uo.push_back(pair_json(e));
  j["union_inner"] = ui;
  j["union_outer"] = uo;
  j["oracle_ok"] = opt_json(d.oracle_ok);
  return j;
}

OutputDocument output_from_json(const nlohmann::json& j) {
  OutputDocument d;
  d.version = j.at("version").get<std::string>();
  d.name = j.at("name").get<std::string>();
  const auto& p = j.at("parameters");
  d.parameters.max_cvs = p.at("max_cvs").get<std::size_t>();
  d.parameters.cycle_len = p.at("cycle_len").get<std::size_t>();
  d.parameters.bound_len = p.at("bound_len").get<std::size_t>();
  if (!p.at("subset").is_null()) d.parameters.subset = p.at("subset").get<std::vector<std::size_t>>();
  d.parameters.oracle_level = p.at("oracle_level").get<std::size_t>();
  d.parameters.allow_irregular = p.at("allow_irregular").get<bool>();
  d.supported_by_theory = j.at("supported_by_theory").get<bool>();
  d.cv_count = j.at("cv_count").get<std::size_t>();
  d.essential_size = j.at("essential_size").get<std::size_t>();
  d.dim_at_zero = j.at("dim_at_zero").get<double>();
  for (const auto& cj : j.at("classes")) {
    ClassSummary c;
    c.members = cj.at("members").get<std::vector<std::size_t>>();
    const auto& f = cj.at("flags");
    c.maximal = f.at("maximal").get<bool>();
    c.essential = f.at("essential").get<bool>();
    c.simple_loop = f.at("simple_loop").get<bool>();
    c.positivity = f.at("positivity").get<std::string>();
    c.certified_interval = f.at("certified_interval").get<bool>();
    c.isolation = f.at("isolation").get<std::string>();
    c.positivity_witness = cj.at("positivity_witness").get<std::vector<std::size_t>>();
    c.cycle_count = cj.at("cycle_count").get<std::size_t>();
    if (!cj.at("spectral_range_inner").is_null()) c.spectral_range_inner = read_pair(cj.at("spectral_range_inner"));
    c.spectral_range_outer = read_pair(cj.at("spectral_range_outer"));
    if (!cj.at("dim_inner").is_null()) c.dim_inner = read_pair(cj.at("dim_inner"));
    c.dim_outer = read_pair(cj.at("dim_outer"));
    if (!cj.at("exact_point").is_null()) c.exact_point = cj.at("exact_point").get<double>();
    if (!cj.at("bound_depth").is_null()) c.bound_depth = cj.at("bound_depth").get<std::size_t>();
    d.classes.push_back(std::move(c));
  }
  for (const auto& pj : j.at("points"))
    d.points.push_back({pj.at("value").get<double>(), pj.at("status").get<std::string>(),
                        pj.at("classes").get<std::vector<std::size_t>>()});
  d.isolated_points = j.at("isolated_points").get<std::vector<double>>();
  for (const auto& e : j.at("union_inner")) d.union_inner.push_back(read_pair(e));
  for (const auto& e : j.at("union_outer")) d.union_outer.push_back(read_pair(e));
  if (!j.at("oracle_ok").is_null()) d.oracle_ok = j.at("oracle_ok").get<bool>();
  return d;
}

std::string render_text(const Analysis& a, TextOptions options) {
  std::ostringstream os;
  const auto& r = a.report;
  const auto& F = a.model.field();
  if (!a.model.spec().name.empty()) os << a.model.spec().name << "\n";
  os << "rho is the root of " << poly_string(F.minpoly()) << " near " << F.rho().to_decimal(6) << ".\n";
  os << "Translations:";
  for (const auto& d : a.model.translations()) os << " " << d.to_string();
  os << "\nProbabilities:";
  for (const auto& p : a.model.probabilities()) os << " " << rational_to_string(p);
  os << "\n";
  if (!r.supported_by_theory) os << "WARNING: irregular probabilities; results are UNSUPPORTED-BY-THEORY.\n";
  os << "The reduced transition diagram has " << r.cv_count << " reduced characteristic vectors.\n";
  for (CvIndex i = 0; i < a.graph.cvs.size(); ++i) {
    const auto& cv = a.graph.cvs[i];
    os << "  " << display_id(i) << ": (" << cv.length.to_decimal(6) << ", (";
    for (std::size_t k = 0; k < cv.neighbours.size(); ++k) os << (k ? ", " : "") << cv.neighbours[k].to_decimal(6);
    os << "))\n";
  }
  if (options.matrices) {
    os << "Transition matrices:\n";
    for (const auto& e : a.graph.edges)
      os << "  T(" << display_id(e.parent) << "," << display_id(e.child) << ") = " << matrix_text(e.matrix)
         << (e.multiplicity > 1 ? "  x" + std::to_string(e.multiplicity) : "") << "\n";
  }

  auto describe = [&](const ClassDimSet& s, const char* label) {
    os << "\n" << label << ": " << ids(s.cls.members) << ".\n";
    const auto& pv = s.cls.positivity;
    if (pv.status == Positivity::Positive) {
      std::vector<CvIndex> path;
      for (auto e : pv.witness) {
        if (path.empty()) path.push_back(a.graph.edges[e].parent);
        path.push_back(a.graph.edges[e].child);
      }
      os << "It is of positive type. An example is the path " << ids(path) << ".\n";
    } else if (pv.status == Positivity::NotPositive) {
      os << "It is not of positive type (all zero patterns exhausted by length " << pv.length << ").\n";
    } else {
      os << "Positivity is UNKNOWN (search budget exhausted).\n";
    }
    if (s.exact_point) {
      os << "It is a simple loop with per-step spectral value " << fmt10(s.exact_cycle->per_step.mid())
         << " and local dimension " << fmt10(*s.exact_point) << ".\n";
      return;
    }
    os << "It is not a simple loop.\n";
    if (s.has_inner) {
      os << "Spectral range (cycles up to length " << r.options.cycle_len << ", " << s.cycles.cycle_count
         << " cycles) includes " << interval(s.inner_per_step) << ".\n";
      auto verts = [&](const CycleDim& c) {
        auto v = c.vertices;
        v.push_back(v.front());
        return ids(v);
      };
      os << "The minimum comes from the loop " << verts(*s.cycles.min_cycle) << ", the maximum from "
         << verts(*s.cycles.max_cycle) << ".\n";
      os << "These points include local dimensions " << interval(s.dim_inner) << ".\n";
    }
    if (s.norms) {
      os << "Spectral range is contained in " << interval(s.outer_per_step) << " (length " << s.norms->depth
         << " products; lower from the " << to_string(s.norms->lower_kind) << ", upper from the "
         << to_string(s.norms->upper_kind) << ").\n";
      os << "These points have local dimension contained in " << interval(s.dim_outer) << ".\n";
    }
    if (!s.has_inner) os << "outer bounds only (NOT CERTIFIED)\n";
    else if (!s.certified_interval) os << "NOT-CERTIFIED-INTERVAL: only the listed cycle values are guaranteed.\n";
  };

  if (!r.sets.empty()) {
    describe(r.sets[r.essential], "The essential class is");
    os << "\nThere are " << r.sets.size() - 1 << " additional maximal loops.\n";
    for (std::size_t i = 0; i < r.sets.size(); ++i)
      if (i != r.essential) describe(r.sets[i], "Maximal loop class");
  }

  os << "\ndim mu(0) = " << fmt10(r.dim_at_zero) << "\n";
  bool all_points = std::all_of(r.union_outer.begin(), r.union_outer.end(),
                                [](const Enclosure& e) { return e.width() <= kDimTol; });
  if (all_points) {
    os << "The set of local dimensions consists of the " << count_word(r.union_outer.size()) << " distinct points ";
    for (std::size_t i = 0; i < r.union_outer.size(); ++i)
      os << (i ? " u " : "") << "{" << fmt10(r.union_outer[i].mid()) << "}";
    os << ".\n";
  } else {
    os << "Attained local dimensions include:";
    for (const auto& e : r.union_inner) os << " " << (e.width() <= kDimTol ? "{" + fmt10(e.mid()) + "}" : interval(e));
    os << "\nAll local dimensions lie in:";
    for (const auto& e : r.union_outer) os << " " << (e.width() <= kDimTol ? "{" + fmt10(e.mid()) + "}" : interval(e));
    os << "\n";
  }
  auto iso = r.isolated_points();
  if (iso.empty()) {
    os << "No isolated points.\n";
  } else {
    os << "Isolated points:";
    for (double v : iso) os << " " << fmt10(v);
    os << "\n";
  }
  for (const auto& p : r.points)
    if (p.status == Isolation::Undecided) os << "Point " << fmt10(p.value) << " is UNDECIDED.\n";
  if (a.oracle) {
    os << "Oracle check at level " << a.oracle->level << ": "
       << (a.oracle->ok() ? "match" : "MISMATCH") << " (" << a.oracle->intervals_checked << " net intervals).\n";
    for (const auto& m : a.oracle->mismatches)
      os << "  " << m.what << " along " << ids(m.path) << ": expected " << m.expected << ", got " << m.actual << "\n";
  }
  return os.str();
}

}  // namespace finitype
