// ifsmodel.hpp
// Equicontractive IFS S_j(x) = rho x + d_j with probabilities p_j.
#ifndef FINITYPE_IFSMODEL_HPP
#define FINITYPE_IFSMODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "finitype/exactfield.hpp"

namespace finitype {

struct IfsSpec {
  FieldSpec field;
  std::vector<FieldElement> translations;
  std::vector<Rational> probabilities;
  std::string name;
};

enum class IfsErrc {
  TooFewMaps,
  CountMismatch,
  TranslationsNotIncreasing,
  NotRescaled,
  SupportNotInterval,
  NonPositiveProbability,
  ProbabilitiesNotNormalized,
  IrregularProbabilities,
};

const char* to_string(IfsErrc code);

struct ValidationIssue {
  IfsErrc code;
  std::size_t index;  // offending map index
  std::string message;
};

struct ValidateOptions {
  bool allow_irregular = false;  // downgrade IrregularProbabilities to a warning
};

struct ValidationResult;

// Validated model. Construct through validate().
class IfsModel {
 public:
  const FieldSpec& field() const { return spec_.field; }
  const IfsSpec& spec() const { return spec_; }
  const std::vector<FieldElement>& translations() const { return spec_.translations; }
  const std::vector<Rational>& probabilities() const { return spec_.probabilities; }
  // p_j / p_0
  const std::vector<Rational>& normalized() const { return normalized_; }
  const FieldElement& rho() const { return rho_; }
  std::size_t map_count() const { return spec_.translations.size(); }
  // False when the run relies on the irregular-probability override.
  bool supported_by_theory() const { return warnings_.empty(); }
  const std::vector<ValidationIssue>& warnings() const { return warnings_; }

 private:
  friend ValidationResult validate(const IfsSpec&, ValidateOptions);
  IfsSpec spec_;
  std::vector<Rational> normalized_;
  FieldElement rho_;
  std::vector<ValidationIssue> warnings_;
};

struct ValidationResult {
  std::optional<IfsModel> model;
  std::vector<ValidationIssue> issues;
  bool ok() const { return model.has_value(); }
};

ValidationResult validate(const IfsSpec& spec, ValidateOptions options = {});

class IfsValidationError : public std::runtime_error {
 public:
  explicit IfsValidationError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

// validate() that throws IfsValidationError listing every issue.
IfsModel validated(const IfsSpec& spec, ValidateOptions options = {});

// (m+1) copies of 1/(m+1); m >= 1.
std::vector<Rational> uniform_probabilities(int m);
// C(m,j)/2^m, j = 0..m; m >= 1.
std::vector<Rational> binomial_convolution_probabilities(int m);

// Affine rescale so that d_0 = 0 and d_m = 1 - rho (translations sorted, probabilities follow).
IfsSpec rescale(const IfsSpec& spec);

}  // namespace finitype

#endif  // FINITYPE_IFSMODEL_HPP
