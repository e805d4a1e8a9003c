#include "finitype/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include <unistd.h>

#include <CLI11.hpp>

#include "finitype/closedforms.hpp"
#include "finitype/report_io.hpp"

namespace finitype::cli {

unsigned worker_count() {
  if (const char* env = std::getenv("FINITYPE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cli: cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("cli: write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cli: cannot move output into " + path + ": " + ec.message());
  }
}

namespace {

struct AnalyzeArgs {
  std::string input;
  RunParameters params;
  std::vector<std::size_t> subset;
  std::string json, dot;
  bool text = false, matrices = false;
};

int do_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  RunParameters params = a.params;
  if (!a.subset.empty()) params.subset = a.subset;
  IfsSpec spec = load_input(a.input);
  Analysis an = analyze(spec, params, worker_count());
  OutputDocument doc = make_output(an, params);
  if (!a.json.empty()) write_atomically(a.json, to_json(doc).dump(2) + "\n");
  if (!a.dot.empty()) {
    const auto& ess = an.report.sets[an.report.essential].cls.members;
    write_atomically(a.dot, export_dot(an.graph, ess));
  }
  if (a.text) out << render_text(an, {a.matrices});
  if (a.json.empty() && !a.text) out << to_json(doc).dump(2) << "\n";
  if (an.oracle && !an.oracle->ok()) {
    out.flush();
    err << "oracle: graph disagrees with brute force at level " << an.oracle->level << "\n";
    return kInternal;
  }
  return kOk;
}

int do_rescale(const std::string& input, std::ostream& out) {
  IfsSpec spec = load_input(input);
  out << input_to_json(rescale(spec)).dump(2) << "\n";
  return kOk;
}

int do_formulas(int R, int m, std::size_t bound_len, std::ostream& out) {
  closedforms::CantorParams c;
  c.R = R;
  c.m = m;
  out << "R = " << R << ", m = " << m << "\n";
  out << "formula min " << fmt10(closedforms::min_formula(c)) << " at x = "
      << rational_to_string(closedforms::x_min(c)) << "\n";
  out << "formula max " << fmt10(closedforms::max_formula(c)) << " at x = "
      << rational_to_string(closedforms::x_max(c)) << "\n";
  if (m >= R) {
    auto [lo, hi] = closedforms::isolated_point_bound(c);
    out << "isolated point " << fmt10(lo) << ", rest of the set at most " << fmt10(hi) << "\n";
  }
  RunParameters params;
  params.bound_len = bound_len;
  Analysis an = analyze(closedforms::cantor_spec(c), params, worker_count());
  const auto& ess = an.report.sets[an.report.essential];
  if (ess.has_inner) {
    out << "min " << fmt10(ess.dim_inner.lo) << "\n";
    out << "max " << fmt10(ess.dim_inner.hi) << "\n";
  }
  out << "outer [" << fmt10(ess.dim_outer.lo) << ", " << fmt10(ess.dim_outer.hi) << "] (depth " << bound_len
      << ")\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"finitype: local dimensions of self-similar measures of finite type"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "build the transition graph and bound local dimensions");
  analyze_cmd->add_option("--input", aa.input, "input JSON document")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--max-cvs", aa.params.max_cvs, "cap on reduced characteristic vectors")
      ->capture_default_str();
  analyze_cmd->add_option("--cycle-len", aa.params.cycle_len, "longest enumerated cycle")->capture_default_str();
  analyze_cmd->add_option("--bound-len", aa.params.bound_len, "product length for norm bounds")
      ->capture_default_str();
  analyze_cmd->add_option("--subset", aa.subset, "1-based index subset for the sub-norm bound")->delimiter(',');
  analyze_cmd->add_option("--oracle-level", aa.params.oracle_level, "check the graph against brute force at level n")
      ->capture_default_str();
  analyze_cmd->add_option("--json", aa.json, "write the JSON report here");
  analyze_cmd->add_option("--dot", aa.dot, "write the transition graph in DOT format");
  analyze_cmd->add_flag("--text", aa.text, "print the text report");
  analyze_cmd->add_flag("--matrices", aa.matrices, "include transition matrices in the text report");
  analyze_cmd->add_flag("--allow-irregular", aa.params.allow_irregular,
                        "accept irregular probabilities (report marked UNSUPPORTED-BY-THEORY)");

  std::string rescale_input;
  auto* rescale_cmd = app.add_subcommand("rescale", "emit the input rescaled to [0,1]");
  rescale_cmd->add_option("--input", rescale_input, "input JSON document")->required()->check(CLI::ExistingFile);

  int R = 3, m = 3;
  std::size_t formula_depth = 8;
  auto* formulas_cmd = app.add_subcommand("formulas", "closed forms for Cantor-like measures");
  formulas_cmd->add_option("--R", R, "contraction 1/R")->required()->check(CLI::Range(2, 1000));
  formulas_cmd->add_option("--m", m, "number of maps minus one")->required()->check(CLI::Range(1, 1000));
  formulas_cmd->add_option("--bound-len", formula_depth, "product length for outer bounds")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*analyze_cmd) return do_analyze(aa, out, err);
    if (*rescale_cmd) return do_rescale(rescale_input, out);
    if (*formulas_cmd) return do_formulas(R, m, formula_depth, out);
  } catch (const InputError& e) {
    err << e.what() << "\n";
    return kInvalidInput;
  } catch (const IfsValidationError& e) {
    err << e.what() << "\n";
    return kInvalidInput;
  } catch (const FieldError& e) {
    err << e.what() << "\n";
    return kInvalidInput;
  } catch (const closedforms::PreconditionViolated& e) {
    err << e.what() << "\n";
    return kInvalidInput;
  } catch (const GraphError& e) {
    err << e.what() << "\n";
    return e.code() == GraphErrc::CapExceeded ? kResourceLimit : kInternal;
  } catch (const BudgetExceeded& e) {
    err << e.what() << "\n";
    return kResourceLimit;
  } catch (const DimError& e) {
    err << e.what() << "\n";
    if (e.code() == DimErrc::PathExplosion) return kResourceLimit;
    if (e.code() == DimErrc::SubsetInvalidForClass) return kInvalidInput;
    return kInternal;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"finitype"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace finitype::cli
