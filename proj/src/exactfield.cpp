#include "finitype/exactfield.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace finitype {

namespace detail {

// Bits of the cached enclosure of rho. The fixed point filter uses 2^62 scaling,
// so anything well past 64 keeps its rounding noise at one unit.
constexpr unsigned kCachedBits = 140;
constexpr int kFixedShift = 62;

struct FieldData {
  std::vector<std::int64_t> minpoly;
  RationalInterval isolating;
  RationalInterval tight;  // width <= 2^-kCachedBits
  int k = 0;               // degree
  // reduce[j - k] holds x^j mod minpoly, j = k .. 2k-2
  std::vector<std::vector<Rational>> reduce;
  std::vector<Rational> rho_inv;
  // floor/ceil(rho^i * 2^62), i = 0..k-1
  std::vector<std::int64_t> pow_lo, pow_hi;
  double approx = 0.0;
};

}  // namespace detail

using detail::FieldData;

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Rational eval(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sgn(const Rational& q) { return q.sign(); }

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
  trim(d);
  return d;
}

// Remainder of a divided by b (b nonzero, trimmed).
Poly remainder(Poly a, const Poly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain{p, derivative(p)};
  while (chain.back().size() > 1) {
    Poly r = remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

int variations(const std::vector<Poly>& chain, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& q : chain) {
    int s = sgn(eval(q, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// Number of distinct roots in the open interval (a, b).
int roots_in_open(const std::vector<Poly>& chain, const Rational& a, const Rational& b) {
  if (!(a < b)) return 0;
  int n = variations(chain, a) - variations(chain, b);
  if (eval(chain.front(), b) == 0) --n;
  return n;
}

Rational pow_int(const Rational& x, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

Rational mid(const RationalInterval& iv) { return (iv.lo + iv.hi) / 2; }

// Halve the enclosure until its width is at most 2^-bits; requires opposite signs at ends.
void refine(const Poly& p, RationalInterval& iv, unsigned bits) {
  Rational target = Rational(1);
  for (unsigned i = 0; i < bits; ++i) target /= 2;
  int slo = sgn(eval(p, iv.lo));
  while (iv.hi - iv.lo > target) {
    Rational m = mid(iv);
    int s = sgn(eval(p, m));
    if (s == 0) {  // only possible for a rational root, excluded at construction
      iv.lo = iv.hi = m;
      return;
    }
    if (s == slo) iv.lo = m; else iv.hi = m;
  }
}

Poly to_poly(const std::vector<std::int64_t>& mp) {
  Poly p;
  for (auto c : mp) p.emplace_back(static_cast<long long>(c));
  return p;
}

std::int64_t floor_scaled(const Rational& x) {
  Rational s = x * Rational(Integer(1) << detail::kFixedShift);
  Integer q = numerator(s) / denominator(s);  // truncation == floor for x >= 0
  return q.convert_to<std::int64_t>();
}

std::int64_t ceil_scaled(const Rational& x) {
  Rational s = x * Rational(Integer(1) << detail::kFixedShift);
  Integer q = numerator(s) / denominator(s);
  if (Rational(q) != s) q += 1;
  return q.convert_to<std::int64_t>();
}

// Interval evaluation of sum c_i rho^i with rho in iv (iv.lo >= 0).
RationalInterval eval_interval(std::span<const Rational> c, const RationalInterval& iv) {
  Rational lo = 0, hi = 0, plo = 1, phi = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0) {
      plo *= iv.lo;
      phi *= iv.hi;
    }
    if (c[i] == 0) continue;
    if (c[i] > 0) {
      lo += c[i] * plo;
      hi += c[i] * phi;
    } else {
      lo += c[i] * phi;
      hi += c[i] * plo;
    }
  }
  return {lo, hi};
}

__int128 floor_div(__int128 a, __int128 b) {  // b > 0
  __int128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

__int128 ceil_div(__int128 a, __int128 b) {
  __int128 q = a / b;
  if ((a % b != 0) && (a > 0)) ++q;
  return q;
}

// 0 when undecided.
int fixed_point_sign(const FieldData& d, std::span<const Rational> c) {
  __int128 lo = 0, hi = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const mpq_t& q = c[i].backend().data();
    if (mpq_sgn(q) == 0) continue;
    if (mpz_sizeinbase(mpq_numref(q), 2) > 62 || mpz_sizeinbase(mpq_denref(q), 2) > 62) return 0;
    __int128 n = mpz_get_si(mpq_numref(q));
    __int128 den = mpz_get_si(mpq_denref(q));
    __int128 L = d.pow_lo[i], U = d.pow_hi[i];
    if (n > 0) {
      lo += floor_div(n * L, den);
      hi += ceil_div(n * U, den);
    } else {
      lo += floor_div(n * U, den);
      hi += ceil_div(n * L, den);
    }
  }
  if (lo > 0) return 1;
  if (hi < 0) return -1;
  return 0;
}

std::vector<Rational> reduce_product(const FieldData& d, std::vector<Rational>& prod) {
  const int k = d.k;
  for (int j = static_cast<int>(prod.size()) - 1; j >= k; --j) {
    if (prod[j] == 0) continue;
    const auto& r = d.reduce[j - k];
    for (int i = 0; i < k; ++i)
      if (r[i] != 0) prod[i] += prod[j] * r[i];
  }
  prod.resize(k);
  return std::move(prod);
}

[[noreturn]] void fail(FieldErrc c, const std::string& msg) { throw FieldError(c, msg); }

bool same_field(const FieldSpec& a, const FieldSpec& b) {
  if (a.same_as(b)) return true;
  if (!a.valid() || !b.valid()) return false;
  return a.minpoly() == b.minpoly() && a.isolating_interval().lo == b.isolating_interval().lo &&
         a.isolating_interval().hi == b.isolating_interval().hi;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto check_int = [&](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("bad rational '" + raw + "'");
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw std::invalid_argument("bad rational '" + raw + "'");
  };
  // decimal digits only; strip zeros so GMP does not read "025" as octal
  auto to_int = [](std::string s) {
    bool neg = s[0] == '-';
    if (s[0] == '-' || s[0] == '+') s = s.substr(1);
    std::size_t nz = s.find_first_not_of('0');
    s = nz == std::string::npos ? "0" : s.substr(nz);
    Integer v(s);
    return neg ? Integer(-v) : v;
  };
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    check_int(a);
    check_int(b);
    Integer den = to_int(b);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + raw + "'");
    return Rational(to_int(a), den);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string ip = text.substr(0, dot), fp = text.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
    if (ip.empty()) ip = "0";
    check_int(ip);
    if (!fp.empty()) check_int(fp);
    Integer scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    Rational r(to_int(ip + fp), scale);
    return neg ? Rational(-r) : r;
  }
  check_int(text);
  return Rational(to_int(text));
}

std::string rational_to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

FieldSpec make_field(const std::vector<std::int64_t>& minpoly, const RationalInterval& interval) {
  if (minpoly.size() < 2 || minpoly.back() == 0)
    fail(FieldErrc::InvalidPolynomial, "minimal polynomial must have degree >= 1 and a nonzero leading coefficient");
  if (!(interval.lo < interval.hi))
    fail(FieldErrc::InvalidInterval, "isolating interval needs lo < hi");
  Poly p = to_poly(minpoly);
  Poly g = poly_gcd(p, derivative(p));
  if (g.size() > 1) fail(FieldErrc::NotSquareFree, "minimal polynomial is not square-free");

  auto chain = sturm_chain(p);
  int n = roots_in_open(chain, interval.lo, interval.hi);
  if (n == 0) fail(FieldErrc::NoRootInInterval, "no root of the minimal polynomial in the isolating interval");
  if (n > 1) fail(FieldErrc::MultipleRootsInInterval, "isolating interval contains " + std::to_string(n) + " roots");
  RationalInterval iv{std::max(interval.lo, Rational(0)), std::min(interval.hi, Rational(1))};
  if (roots_in_open(chain, iv.lo, iv.hi) != 1)
    fail(FieldErrc::RootNotInUnitInterval, "the isolated root is not in (0,1)");

  // Shrink with Sturm counts until both ends are non-roots, then bisect on sign.
  while (eval(p, iv.lo) == 0 || eval(p, iv.hi) == 0) {
    Rational m = mid(iv);
    if (eval(p, m) == 0) {
      if (p.size() > 2)
        fail(FieldErrc::InvalidPolynomial, "root " + rational_to_string(m) +
                                               " is rational; use the linear polynomial instead");
      iv.lo = iv.hi = m;
      break;
    }
    if (roots_in_open(chain, iv.lo, m) == 1) iv.hi = m; else iv.lo = m;
  }
  if (p.size() > 2) {
    // A rational root would make the representation non-canonical.
    RationalInterval probe = iv;
    refine(p, probe, 24);
    if (probe.lo == probe.hi)
      fail(FieldErrc::InvalidPolynomial, "root is rational; use the linear polynomial instead");
  }

  auto d = std::make_shared<FieldData>();
  d->minpoly = minpoly;
  d->isolating = interval;
  d->k = static_cast<int>(minpoly.size()) - 1;
  if (d->k == 1) {
    Rational r = Rational(-minpoly[0]) / Rational(minpoly[1]);
    d->tight = {r, r};
  } else {
    d->tight = iv;
    refine(p, d->tight, detail::kCachedBits);
  }
  const int k = d->k;
  // x^k = -(a_0 + ... + a_{k-1} x^{k-1}) / a_k
  std::vector<Rational> top(k);
  for (int i = 0; i < k; ++i) top[i] = Rational(-minpoly[i]) / Rational(minpoly[k]);
  if (k >= 2) {
    std::vector<Rational> cur = top;
    d->reduce.push_back(cur);
    for (int j = k + 1; j <= 2 * k - 2; ++j) {
      std::vector<Rational> nxt(k);
      Rational hi = cur[k - 1];
      for (int i = k - 1; i >= 1; --i) nxt[i] = cur[i - 1];
      nxt[0] = 0;
      for (int i = 0; i < k; ++i) nxt[i] += hi * top[i];
      d->reduce.push_back(nxt);
      cur = std::move(nxt);
    }
  }
  for (int i = 0; i < k; ++i) {
    d->pow_lo.push_back(floor_scaled(pow_int(d->tight.lo, i)));
    d->pow_hi.push_back(ceil_scaled(pow_int(d->tight.hi, i)));
  }
  d->approx = mid(d->tight).convert_to<double>();

  FieldSpec spec(d);
  FieldElement inv = spec.rho().inverse();
  d->rho_inv.assign(inv.coeffs().begin(), inv.coeffs().end());
  return spec;
}

int FieldSpec::degree() const { return data_->k; }
const std::vector<std::int64_t>& FieldSpec::minpoly() const { return data_->minpoly; }
const RationalInterval& FieldSpec::isolating_interval() const { return data_->isolating; }
double FieldSpec::approx() const { return data_->approx; }

RationalInterval FieldSpec::enclosure(unsigned bits) const {
  RationalInterval iv = data_->tight;
  if (bits > detail::kCachedBits && iv.lo != iv.hi) refine(to_poly(data_->minpoly), iv, bits);
  return iv;
}

FieldElement FieldSpec::zero() const { return FieldElement(*this, std::vector<Rational>(data_->k)); }

FieldElement FieldSpec::one() const {
  std::vector<Rational> c(data_->k);
  c[0] = 1;
  return FieldElement(*this, std::move(c));
}

FieldElement FieldSpec::rho() const {
  if (data_->k == 1) return from_rational(data_->tight.lo);
  std::vector<Rational> c(data_->k);
  c[1] = 1;
  return FieldElement(*this, std::move(c));
}

FieldElement FieldSpec::rho_inverse() const { return FieldElement(*this, data_->rho_inv); }

FieldElement FieldSpec::from_rational(const Rational& q) const {
  std::vector<Rational> c(data_->k);
  c[0] = q;
  return FieldElement(*this, std::move(c));
}

FieldElement FieldSpec::element(std::vector<Rational> coeffs) const {
  const int k = data_->k;
  if (static_cast<int>(coeffs.size()) <= k) {
    coeffs.resize(k);
    return FieldElement(*this, std::move(coeffs));
  }
  // Reduce arbitrary length by repeated multiplication by rho (Horner).
  FieldElement acc = zero();
  FieldElement r = rho();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc *= r;
    acc += from_rational(*it);
  }
  return acc;
}

int sign_of(const FieldSpec& field, std::span<const Rational> c) {
  const FieldData& d = *field.data();
  std::size_t last = c.size();
  while (last > 0 && c[last - 1] == 0) --last;
  if (last == 0) return 0;
  if (last == 1) return sgn(c[0]);
  if (d.k == 1) return sgn(eval_interval(c, d.tight).lo);
  if (int s = fixed_point_sign(d, c.first(last))) return s;
  RationalInterval iv = d.tight;
  Poly p = to_poly(d.minpoly);
  int slo = sgn(eval(p, iv.lo));
  for (;;) {
    RationalInterval v = eval_interval(c.first(last), iv);
    if (v.lo > 0) return 1;
    if (v.hi < 0) return -1;
    // Four bisections per round.
    for (int i = 0; i < 4; ++i) {
      Rational m = mid(iv);
      if (sgn(eval(p, m)) == slo) iv.lo = m; else iv.hi = m;
    }
  }
}

void FieldElement::check_same(const FieldElement& b) const {
  if (!same_field(field_, b.field_)) throw FieldError(FieldErrc::FieldMismatch, "elements belong to different fields");
}

bool FieldElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return q == 0; });
}

bool FieldElement::is_rational() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& q) { return q == 0; });
}

int FieldElement::sign() const { return sign_of(field_, coeffs_); }

RationalInterval FieldElement::enclose(unsigned bits) const {
  if (is_rational()) return {coeffs_[0], coeffs_[0]};
  Rational target = 1;
  for (unsigned i = 0; i < bits; ++i) target /= 2;
  unsigned b = std::max(bits + 8, detail::kCachedBits);
  for (;;) {
    RationalInterval v = eval_interval(coeffs_, field_.enclosure(b));
    if (v.hi - v.lo <= target) return v;
    b *= 2;
  }
}

double FieldElement::to_double() const {
  if (is_rational()) return coeffs_[0].convert_to<double>();
  return mid(enclose(64)).convert_to<double>();
}

std::string FieldElement::to_decimal(int digits) const {
  if (digits < 1) digits = 1;
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  int s = sign();
  FieldElement a = s < 0 ? -*this : *this;
  // Round half away from zero: floor(a*10^d + 1/2).
  auto round_at = [&](const Rational& x) {
    Rational y = x * Rational(scale) + Rational(1, 2);
    Integer q = numerator(y) / denominator(y);  // y >= 0
    return q;
  };
  Integer n;
  if (a.is_rational()) {
    n = round_at(a.coeffs_[0]);
  } else {
    unsigned bits = 64;
    for (;;) {
      RationalInterval v = a.enclose(bits);
      Integer lo = round_at(v.lo), hi = round_at(v.hi);
      if (lo == hi) {
        n = lo;
        break;
      }
      bits *= 2;
    }
  }
  std::string digs = n.str();
  if (static_cast<int>(digs.size()) <= digits) digs.insert(0, digits + 1 - digs.size(), '0');
  std::string out = digs.substr(0, digs.size() - digits) + "." + digs.substr(digs.size() - digits);
  if (s < 0 && n != 0) out.insert(0, "-");
  return out;
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational a = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << rational_to_string(a);
      continue;
    }
    if (a != 1) os << rational_to_string(a) << "*";
    os << "rho";
    if (i > 1) os << "^" << i;
  }
  if (first) return "0";
  return os.str();
}

std::size_t FieldElement::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& c : coeffs_) {
    const mpq_t& q = c.backend().data();
    std::size_t v = mpz_get_ui(mpq_numref(q)) * 0x100000001b3ull ^ mpz_get_ui(mpq_denref(q));
    v ^= static_cast<std::size_t>(mpq_sgn(q) + 1) << 61;
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& b) {
  check_same(b);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& b) {
  check_same(b);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= b.coeffs_[i];
  return *this;
}

FieldElement& FieldElement::operator*=(const Rational& q) {
  for (auto& c : coeffs_) c *= q;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& b) {
  check_same(b);
  const std::size_t k = coeffs_.size();
  if (k == 1) {
    coeffs_[0] *= b.coeffs_[0];
    return *this;
  }
  std::vector<Rational> prod(2 * k - 1);
  for (std::size_t i = 0; i < k; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j)
      if (b.coeffs_[j] != 0) prod[i + j] += coeffs_[i] * b.coeffs_[j];
  }
  coeffs_ = reduce_product(*field_.data(), prod);
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw FieldError(FieldErrc::DivisionByZero, "division by zero");
  const std::size_t k = coeffs_.size();
  if (k == 1) return FieldElement(field_, {Rational(1) / coeffs_[0]});
  // Column i of M holds the coefficients of a * rho^i; solve M x = e_0.
  std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k + 1));
  FieldElement col = *this;
  FieldElement r = field_.rho();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t row = 0; row < k; ++row) m[row][i] = col.coeffs_[row];
    col *= r;
  }
  m[0][k] = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    while (piv < k && m[piv][c] == 0) ++piv;
    if (piv == k)
      throw FieldError(FieldErrc::DivisionByZero, "element is not invertible (minimal polynomial reducible?)");
    std::swap(m[piv], m[c]);
    Rational inv = Rational(1) / m[c][c];
    for (std::size_t j = c; j <= k; ++j) m[c][j] *= inv;
    for (std::size_t row = 0; row < k; ++row) {
      if (row == c || m[row][c] == 0) continue;
      Rational f = m[row][c];
      for (std::size_t j = c; j <= k; ++j) m[row][j] -= f * m[c][j];
    }
  }
  std::vector<Rational> x(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = m[i][k];
  return FieldElement(field_, std::move(x));
}

FieldElement& FieldElement::operator/=(const FieldElement& b) {
  check_same(b);
  return *this *= b.inverse();
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  a.check_same(b);
  return a.coeffs_ == b.coeffs_;
}

std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
  a.check_same(b);
  std::vector<Rational> diff(a.coeffs_.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a.coeffs_[i] - b.coeffs_[i];
  int s = sign_of(a.field_, diff);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering compare(const FieldElement& a, const FieldElement& b) { return a <=> b; }

}  // namespace finitype
