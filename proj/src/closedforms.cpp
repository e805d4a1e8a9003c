#include "finitype/closedforms.hpp"

#include <cmath>

namespace finitype::closedforms {

namespace {

double log_choose(int m, int k) { return std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0); }

double p_at(const CantorParams& c, int j) {
  if (j < 0 || j > c.m) return 0.0;
  return c.probabilities[j].convert_to<double>();
}

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

}  // namespace

CantorParams normalized(CantorParams c) {
  if (c.R < 2) throw PreconditionViolated("closedforms: R must be >= 2");
  if (c.m < 1 || c.m < c.R - 1) throw PreconditionViolated("closedforms: need m >= max(1, R-1)");
  if (c.probabilities.empty()) c.probabilities = binomial_convolution_probabilities(c.m);
  if (static_cast<int>(c.probabilities.size()) != c.m + 1)
    throw PreconditionViolated("closedforms: need m+1 probabilities");
  return c;
}

IfsSpec cantor_spec(const CantorParams& params) {
  CantorParams c = normalized(params);
  IfsSpec s;
  s.field = make_field({-1, c.R}, {Rational(1, c.R + 1), Rational(1, c.R - 1)});
  for (int j = 0; j <= c.m; ++j) s.translations.push_back(s.field.from_rational(Rational(j * (c.R - 1), c.m * c.R)));
  s.probabilities = c.probabilities;
  s.name = "cantor R=" + std::to_string(c.R) + " m=" + std::to_string(c.m);
  return s;
}

double min_formula(const CantorParams& params) {
  CantorParams c = normalized(params);
  return (c.m * std::log(2.0) - log_choose(c.m, c.m / 2)) / std::log(static_cast<double>(c.R));
}

double max_formula(const CantorParams& params) {
  CantorParams c = normalized(params);
  const int R = c.R;
  const int r = floor_div(c.m - R, 2);
  double a = p_at(c, r + R + 1), b = p_at(c, r);
  double root = std::sqrt((a - b) * (a - b) + 4.0 * p_at(c, r + 1) * p_at(c, r + R));
  return -std::log((a + b + root) / 2.0) / std::log(static_cast<double>(R));
}

std::pair<double, double> isolated_point_bound(const CantorParams& params) {
  CantorParams c = normalized(params);
  if (c.m < c.R) throw PreconditionViolated("closedforms: need m >= R");
  const auto& p = c.probabilities;
  if (p.front() != p.back()) throw PreconditionViolated("closedforms: need p_0 = p_m");
  Rational low = 2 * p.front();
  for (int j = 1; j < c.m; ++j) {
    if (!(p.front() < p[j])) throw PreconditionViolated("closedforms: need p_0 < p_j for 0 < j < m");
    if (p[j] < low) low = p[j];
  }
  const double lr = std::log(static_cast<double>(c.R));
  return {std::abs(std::log(p.front().convert_to<double>())) / lr, std::abs(std::log(low.convert_to<double>())) / lr};
}

Rational x_min(const CantorParams& params) {
  CantorParams c = normalized(params);
  return Rational(c.m / 2, c.m);
}

Rational x_max(const CantorParams& params) {
  CantorParams c = normalized(params);
  const int R = c.R, m = c.m, r = floor_div(m - R, 2);
  return Rational((m - r - R) * R + r + 1, m * (R + 1));
}

}  // namespace finitype::closedforms
