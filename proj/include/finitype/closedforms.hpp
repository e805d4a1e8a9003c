// closedforms.hpp
// Closed-form dimension predictions for the Cantor-like family
// S_j(x) = x/R + j(R-1)/(mR), j = 0..m.
#ifndef FINITYPE_CLOSEDFORMS_HPP
#define FINITYPE_CLOSEDFORMS_HPP

#include <utility>
#include <vector>

#include "finitype/ifsmodel.hpp"

namespace finitype::closedforms {

struct CantorParams {
  int R = 3;
  int m = 3;
  std::vector<Rational> probabilities;  // empty means binomial C(m,j)/2^m
};

class PreconditionViolated : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Binomial weights filled in, checks R >= 2 and m >= R - 1.
CantorParams normalized(CantorParams params);

IfsSpec cantor_spec(const CantorParams& params);

// (m log 2 - log C(m, floor(m/2))) / log R
double min_formula(const CantorParams& params);
// -log((p_{r+R+1} + p_r + sqrt((p_{r+R+1} - p_r)^2 + 4 p_{r+1} p_{r+R})) / 2) / log R, r = floor((m-R)/2)
double max_formula(const CantorParams& params);
// (dim at zero, upper bound for every other local dimension)
std::pair<double, double> isolated_point_bound(const CantorParams& params);

// floor(m/2)/m
Rational x_min(const CantorParams& params);
// ((m - r - R) R + r + 1) / (m (R + 1)), r = floor((m-R)/2)
Rational x_max(const CantorParams& params);

}  // namespace finitype::closedforms

#endif  // FINITYPE_CLOSEDFORMS_HPP
