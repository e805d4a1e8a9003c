// exactfield.hpp
// Exact arithmetic in Q(rho) for a real algebraic rho in (0,1).
#ifndef FINITYPE_EXACTFIELD_HPP
#define FINITYPE_EXACTFIELD_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace finitype {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

// Parses "p/q", "p" or a plain decimal like "0.25". Throws std::invalid_argument.
Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& q);

enum class FieldErrc {
  InvalidPolynomial,
  NotSquareFree,
  InvalidInterval,
  NoRootInInterval,
  MultipleRootsInInterval,
  RootNotInUnitInterval,
  FieldMismatch,
  DivisionByZero,
};

class FieldError : public std::runtime_error {
 public:
  FieldError(FieldErrc code, const std::string& what)
      : std::runtime_error("exactfield: " + what), code_(code) {}
  FieldErrc code() const noexcept { return code_; }

 private:
  FieldErrc code_;
};

struct RationalInterval {
  Rational lo;
  Rational hi;
};

class FieldElement;

namespace detail {
struct FieldData;
}

// Q(rho) where rho is the unique root of minpoly in the isolating interval.
// Copies share the same immutable data; elements keep it alive.
class FieldSpec {
 public:
  FieldSpec() = default;

  int degree() const;
  const std::vector<std::int64_t>& minpoly() const;
  const RationalInterval& isolating_interval() const;
  // Enclosure of rho of width at most 2^-bits.
  RationalInterval enclosure(unsigned bits) const;
  double approx() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement rho() const;
  FieldElement rho_inverse() const;
  FieldElement from_rational(const Rational& q) const;
  // Coefficients c_0..c_{k-1}; shorter input is zero padded, longer input is reduced.
  FieldElement element(std::vector<Rational> coeffs) const;

  bool valid() const noexcept { return static_cast<bool>(data_); }
  bool same_as(const FieldSpec& other) const noexcept { return data_ == other.data_; }

  const detail::FieldData* data() const noexcept { return data_.get(); }

 private:
  friend FieldSpec make_field(const std::vector<std::int64_t>&, const RationalInterval&);
  friend class FieldElement;
  explicit FieldSpec(std::shared_ptr<const detail::FieldData> d) : data_(std::move(d)) {}
  std::shared_ptr<const detail::FieldData> data_;
};

// Validates minpoly (ascending integer coefficients) and the isolating interval.
FieldSpec make_field(const std::vector<std::int64_t>& minpoly, const RationalInterval& interval);

class FieldElement {
 public:
  FieldElement() = default;

  const FieldSpec& field() const { return field_; }
  std::span<const Rational> coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  // Value as a rational; only meaningful when is_rational().
  const Rational& constant_term() const { return coeffs_.front(); }

  int sign() const;
  double to_double() const;
  // Correctly rounded to `digits` places after the decimal point.
  std::string to_decimal(int digits) const;
  // Readable polynomial form, e.g. "1 - rho".
  std::string to_string() const;
  RationalInterval enclose(unsigned bits) const;
  std::size_t hash() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& b);
  FieldElement& operator-=(const FieldElement& b);
  FieldElement& operator*=(const FieldElement& b);
  FieldElement& operator/=(const FieldElement& b);
  FieldElement& operator*=(const Rational& q);
  FieldElement inverse() const;

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend FieldElement operator*(FieldElement a, const Rational& q) { return a *= q; }
  friend FieldElement operator*(const Rational& q, FieldElement a) { return a *= q; }

  // Exact structural equality (canonical form makes this value equality).
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b);

 private:
  friend class FieldSpec;
  FieldElement(FieldSpec f, std::vector<Rational> c) : field_(std::move(f)), coeffs_(std::move(c)) {}
  void check_same(const FieldElement& b) const;

  FieldSpec field_;
  std::vector<Rational> coeffs_;
};

std::strong_ordering compare(const FieldElement& a, const FieldElement& b);

struct FieldElementHash {
  std::size_t operator()(const FieldElement& a) const { return a.hash(); }
};

// Sign of a polynomial in rho with the given coefficients (no reduction needed).
int sign_of(const FieldSpec& field, std::span<const Rational> coeffs);

}  // namespace finitype

#endif  // FINITYPE_EXACTFIELD_HPP
