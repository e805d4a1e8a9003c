#include "finitype/ifsmodel.hpp"

#include <algorithm>
#include <numeric>

namespace finitype {

const char* to_string(IfsErrc code) {
  switch (code) {
    case IfsErrc::TooFewMaps: return "TooFewMaps";
    case IfsErrc::CountMismatch: return "CountMismatch";
    case IfsErrc::TranslationsNotIncreasing: return "TranslationsNotIncreasing";
    case IfsErrc::NotRescaled: return "NotRescaled";
    case IfsErrc::SupportNotInterval: return "SupportNotInterval";
    case IfsErrc::NonPositiveProbability: return "NonPositiveProbability";
    case IfsErrc::ProbabilitiesNotNormalized: return "ProbabilitiesNotNormalized";
    case IfsErrc::IrregularProbabilities: return "IrregularProbabilities";
  }
  return "?";
}

namespace {

std::string join_issues(const std::vector<ValidationIssue>& issues) {
  std::string s = "ifsmodel: invalid model";
  for (const auto& i : issues) s += "\n  " + std::string(to_string(i.code)) + " [" + std::to_string(i.index) + "]: " + i.message;
  return s;
}

}  // namespace

IfsValidationError::IfsValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

ValidationResult validate(const IfsSpec& spec, ValidateOptions options) {
  ValidationResult out;
  auto& issues = out.issues;
  const auto& d = spec.translations;
  const auto& p = spec.probabilities;
  if (!spec.field.valid()) throw std::invalid_argument("ifsmodel: field not initialised");
  if (d.size() < 2) {
    issues.push_back({IfsErrc::TooFewMaps, 0, "need at least two maps"});
    return out;
  }
  if (p.size() != d.size()) {
    issues.push_back({IfsErrc::CountMismatch, std::min(p.size(), d.size()),
                      std::to_string(d.size()) + " translations but " + std::to_string(p.size()) + " probabilities"});
    return out;
  }
  const std::size_t m = d.size() - 1;
  FieldElement rho = spec.field.rho();
  for (std::size_t i = 0; i < m; ++i) {
    if (!(d[i] < d[i + 1])) {
      issues.push_back({IfsErrc::TranslationsNotIncreasing, i + 1, "d_" + std::to_string(i + 1) + " <= d_" + std::to_string(i)});
      continue;
    }
    if (d[i + 1] - d[i] > rho)
      issues.push_back({IfsErrc::SupportNotInterval, i + 1,
                        "gap d_" + std::to_string(i + 1) + " - d_" + std::to_string(i) + " exceeds rho"});
  }
  if (!d[0].is_zero()) issues.push_back({IfsErrc::NotRescaled, 0, "d_0 must be 0"});
  if (d[m] != spec.field.one() - rho) issues.push_back({IfsErrc::NotRescaled, m, "d_m must be 1 - rho"});

  Rational total = 0;
  bool positive = true;
  for (std::size_t j = 0; j <= m; ++j) {
    total += p[j];
    if (p[j] <= 0) {
      positive = false;
      issues.push_back({IfsErrc::NonPositiveProbability, j, "p_" + std::to_string(j) + " must be positive"});
    }
  }
  if (total != 1) issues.push_back({IfsErrc::ProbabilitiesNotNormalized, 0, "probabilities sum to " + rational_to_string(total)});

  std::vector<ValidationIssue> warnings;
  if (positive) {
    Rational lo = *std::min_element(p.begin(), p.end());
    if (p[0] != p[m] || p[0] != lo) {
      std::size_t idx = p[0] != p[m] ? m : static_cast<std::size_t>(std::min_element(p.begin(), p.end()) - p.begin());
      ValidationIssue issue{IfsErrc::IrregularProbabilities, idx, "need p_0 = p_m = min p_j"};
      if (options.allow_irregular) warnings.push_back(issue); else issues.push_back(issue);
    }
  }
  if (!issues.empty()) return out;

  IfsModel model;
  model.spec_ = spec;
  model.rho_ = rho;
  model.warnings_ = std::move(warnings);
  for (const auto& pj : p) model.normalized_.push_back(pj / p[0]);
  out.model = std::move(model);
  return out;
}

IfsModel validated(const IfsSpec& spec, ValidateOptions options) {
  auto r = validate(spec, options);
  if (!r.ok()) throw IfsValidationError(std::move(r.issues));
  return std::move(*r.model);
}

std::vector<Rational> uniform_probabilities(int m) {
  if (m < 1) throw std::invalid_argument("ifsmodel: uniform_probabilities needs m >= 1");
  return std::vector<Rational>(m + 1, Rational(1, m + 1));
}

std::vector<Rational> binomial_convolution_probabilities(int m) {
  if (m < 1) throw std::invalid_argument("ifsmodel: binomial_convolution_probabilities needs m >= 1");
  std::vector<Rational> w;
  Integer c = 1, total = Integer(1) << m;
  for (int j = 0; j <= m; ++j) {
    w.emplace_back(c, total);
    c = c * (m - j) / (j + 1);
  }
  return w;
}

IfsSpec rescale(const IfsSpec& spec) {
  if (spec.translations.size() != spec.probabilities.size() || spec.translations.size() < 2)
    throw std::invalid_argument("ifsmodel: rescale needs matching translations and probabilities (at least two)");
  std::vector<std::size_t> order(spec.translations.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return spec.translations[a] < spec.translations[b]; });
  const FieldElement& lo = spec.translations[order.front()];
  const FieldElement& hi = spec.translations[order.back()];
  if (lo == hi) throw std::invalid_argument("ifsmodel: cannot rescale, all translations coincide");
  FieldElement scale = (spec.field.one() - spec.field.rho()) / (hi - lo);
  IfsSpec out;
  out.field = spec.field;
  out.name = spec.name;
  for (auto i : order) {
    out.translations.push_back((spec.translations[i] - lo) * scale);
    out.probabilities.push_back(spec.probabilities[i]);
  }
  return out;
}

}  // namespace finitype
