#include "lds/algebraic.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace lds {

Rational rational_from_double(double x) {
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

Rational rational_from_decimal(const std::string& s) {
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
  std::string int_part, frac_part;
  while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) int_part += s[i++];
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) frac_part += s[i++];
  }
  if (i != s.size() || (int_part.empty() && frac_part.empty()))
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  Integer num(int_part.empty() ? "0" : int_part);
  Integer scale = 1;
  for (char c : frac_part) {
    num = num * 10 + (c - '0');
    scale *= 10;
  }
  Rational q(num, scale);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::string decimal_string(const Rational& q, int digits) {
  if (digits < 0) digits = 0;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Integer num = q.get_num() * scale;
  Integer den = q.get_den();
  Integer t, rem;
  mpz_tdiv_qr(t.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  // round half away from zero
  if (2 * abs(rem) >= den) t += (sgn(num) < 0 ? -1 : 1);
  bool neg = sgn(t) < 0;
  Integer tabs = abs(t);
  std::string body = tabs.get_str();
  if ((int)body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
  if (digits > 0) {
    body.insert(body.size() - digits, ".");
    while (body.back() == '0') body.pop_back();
    if (body.back() == '.') body.pop_back();
  }
  if (body == "0") return "0";
  return neg ? "-" + body : body;
}

}  // namespace lds

namespace lds::field {

namespace {

// dense univariate polynomials over Q, low-to-high, normalized (back() != 0)
using Poly = std::vector<Rational>;

void normalize(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const Poly& p) { return (int)p.size() - 1; }  // -1 for zero

Poly poly_sub_scaled(Poly a, const Poly& b, const Rational& c, size_t shift) {
  // a - c * x^shift * b
  if (a.size() < b.size() + shift) a.resize(b.size() + shift, Rational(0));
  for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
  normalize(a);
  return a;
}

// division with remainder: returns {quotient, remainder}
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
  Poly q;
  normalize(a);
  if (deg(b) < 0) throw std::domain_error("polynomial division by zero");
  if (deg(a) < deg(b)) return {Poly{}, a};
  q.assign(deg(a) - deg(b) + 1, Rational(0));
  while (deg(a) >= deg(b)) {
    Rational c = a.back() / b.back();
    size_t shift = deg(a) - deg(b);
    q[shift] = c;
    a = poly_sub_scaled(std::move(a), b, c, shift);
  }
  normalize(q);
  return {q, a};
}

Poly poly_gcd(Poly a, Poly b) {
  normalize(a);
  normalize(b);
  while (deg(b) >= 0) {
    auto [q, r] = poly_divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (deg(a) >= 0) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

// extended euclid: g = gcd(a,b), u*a + v*b = g (only u is needed here)
std::pair<Poly, Poly> poly_ext_gcd_u(Poly a, Poly b) {
  Poly u0{Rational(1)}, u1{};
  normalize(a);
  normalize(b);
  while (deg(b) >= 0) {
    auto [q, r] = poly_divmod(a, b);
    // u_next = u0 - q*u1
    Poly un = u0;
    for (size_t i = 0; i < q.size(); ++i)
      if (q[i] != 0) un = poly_sub_scaled(std::move(un), u1, q[i], i);
    a = std::move(b);
    b = std::move(r);
    u0 = std::move(u1);
    u1 = std::move(un);
  }
  return {a, u0};  // g = a, u = u0
}

int sign_at(const Poly& p, const Rational& x) {
  Rational acc(0);
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return sgn(acc);
}

// value interval of p over [lo, hi], assuming 0 <= lo <= hi
std::pair<Rational, Rational> interval_eval(const Poly& p, const Rational& lo,
                                            const Rational& hi) {
  Rational vlo(0), vhi(0), plo(1), phi(1);
  for (size_t k = 0; k < p.size(); ++k) {
    if (k > 0) {
      plo *= lo;
      phi *= hi;
    }
    if (p[k] >= 0) {
      vlo += p[k] * plo;
      vhi += p[k] * phi;
    } else {
      vlo += p[k] * phi;
      vhi += p[k] * plo;
    }
  }
  return {vlo, vhi};
}

constexpr int kGcdCheckPeriod = 48;
constexpr int kMaxRefine = 4096;

}  // namespace

FieldPtr FieldSpec::make(std::vector<Rational> coeffs, Rational bracket_lo,
                         Rational bracket_hi, std::string symbol) {
  if (coeffs.empty()) throw std::invalid_argument("empty reduction polynomial");
  auto spec = std::shared_ptr<FieldSpec>(new FieldSpec());
  spec->coeffs_ = std::move(coeffs);
  spec->degree_ = (int)spec->coeffs_.size();
  spec->symbol_ = std::move(symbol);
  if (spec->degree_ == 1) {
    spec->lo_ = spec->hi_ = -spec->coeffs_[0];
    spec->tight_lo_ = spec->tight_hi_ = spec->lo_;
    spec->embedding_ = mpq_get_d(spec->lo_.get_mpq_t());
    return spec;
  }
  if (bracket_lo < 0 || bracket_lo >= bracket_hi)
    throw std::invalid_argument("root bracket must satisfy 0 <= lo < hi");
  if (spec->reduction_sign_at(bracket_lo) * spec->reduction_sign_at(bracket_hi) >= 0)
    throw std::invalid_argument("reduction polynomial must change sign on the bracket");
  spec->lo_ = std::move(bracket_lo);
  spec->hi_ = std::move(bracket_hi);

  // rows for x^d .. x^{2d-2} reduced mod p
  int d = spec->degree_;
  std::vector<Rational> row(d);
  for (int i = 0; i < d; ++i) row[i] = -spec->coeffs_[i];
  spec->power_table_.push_back(row);
  for (int j = 1; j <= d - 2; ++j) {
    std::vector<Rational> next(d, Rational(0));
    Rational top = row[d - 1];
    for (int i = d - 1; i > 0; --i) next[i] = row[i - 1];
    next[0] = 0;
    for (int i = 0; i < d; ++i) next[i] += top * spec->power_table_[0][i];
    spec->power_table_.push_back(next);
    row = std::move(next);
  }
  // pre-refine the bracket so later sign decisions need few bisections
  {
    Rational lo = spec->lo_, hi = spec->hi_;
    int slo = spec->reduction_sign_at(lo);
    for (int it = 0; it < 160; ++it) {
      Rational mid = (lo + hi) / 2;
      int sm = spec->reduction_sign_at(mid);
      if (sm == 0) {
        lo = hi = mid;
        break;
      }
      if (sm == slo)
        lo = mid;
      else
        hi = mid;
    }
    spec->tight_lo_ = lo;
    spec->tight_hi_ = hi;
  }
  spec->embedding_ = AlgExt::root(spec).to_double();
  return spec;
}

FieldPtr FieldSpec::rationals(Rational root, std::string symbol) {
  return make({-root}, 0, 0, std::move(symbol));
}

Rational FieldSpec::rational_root() const {
  if (degree_ != 1) throw std::logic_error("rational_root on a nontrivial field");
  return -coeffs_[0];
}

int FieldSpec::reduction_sign_at(const Rational& x) const {
  Rational acc(1);
  for (int i = degree_ - 1; i >= 0; --i) acc = acc * x + coeffs_[i];
  return sgn(acc);
}

AlgExt::AlgExt(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  if ((int)coords_.size() > field_->degree()) reduce_();
  coords_.resize(field_->degree(), Rational(0));
}

AlgExt AlgExt::from_rational(const FieldPtr& field, Rational value) {
  std::vector<Rational> c(field->degree(), Rational(0));
  c[0] = std::move(value);
  return AlgExt(field, std::move(c));
}

AlgExt AlgExt::root(const FieldPtr& field) {
  if (field->degree() == 1) return from_rational(field, field->rational_root());
  std::vector<Rational> c(field->degree(), Rational(0));
  c[1] = 1;
  return AlgExt(field, std::move(c));
}

void AlgExt::reduce_() {
  int d = field_->degree();
  for (int k = (int)coords_.size() - 1; k >= d; --k) {
    Rational c = coords_[k];
    if (c == 0) continue;
    const auto& row = field_->power_table_[k - d];
    for (int i = 0; i < d; ++i) coords_[i] += c * row[i];
    coords_[k] = 0;
  }
  coords_.resize(d);
}

bool AlgExt::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool AlgExt::is_rational() const {
  for (size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

Rational AlgExt::rational_value() const {
  if (!is_rational()) throw std::logic_error("element is not rational");
  return coords_[0];
}

static void check_same_field(const AlgExt& a, const AlgExt& b) {
  if (a.field() != b.field()) throw FieldMismatch();
}

AlgExt AlgExt::operator-() const {
  auto c = coords_;
  for (auto& x : c) x = -x;
  return AlgExt(field_, std::move(c));
}

AlgExt AlgExt::operator+(const AlgExt& o) const {
  check_same_field(*this, o);
  auto c = coords_;
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
  return AlgExt(field_, std::move(c));
}

AlgExt AlgExt::operator-(const AlgExt& o) const {
  check_same_field(*this, o);
  auto c = coords_;
  for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
  return AlgExt(field_, std::move(c));
}

AlgExt AlgExt::operator*(const AlgExt& o) const {
  check_same_field(*this, o);
  std::vector<Rational> prod(2 * coords_.size() - 1, Rational(0));
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    for (size_t j = 0; j < o.coords_.size(); ++j) {
      if (o.coords_[j] == 0) continue;
      prod[i + j] += coords_[i] * o.coords_[j];
    }
  }
  return AlgExt(field_, std::move(prod));
}

AlgExt AlgExt::operator+(const Rational& r) const {
  auto c = coords_;
  c[0] += r;
  return AlgExt(field_, std::move(c));
}

AlgExt AlgExt::operator-(const Rational& r) const {
  auto c = coords_;
  c[0] -= r;
  return AlgExt(field_, std::move(c));
}

AlgExt AlgExt::operator*(const Rational& r) const {
  auto c = coords_;
  for (auto& x : c) x *= r;
  return AlgExt(field_, std::move(c));
}

AlgExt operator*(const Rational& r, const AlgExt& a) { return a * r; }

AlgExt AlgExt::inverse() const {
  if (is_zero()) throw DivisionByZero();
  int d = field_->degree();
  if (d == 1) {
    return from_rational(field_, Rational(1) / coords_[0]);
  }
  Poly z(coords_.begin(), coords_.end());
  normalize(z);
  Poly p = field_->reduction();
  p.push_back(Rational(1));  // monic leading coefficient

  Poly modulus = p;
  for (;;) {
    auto [g, u] = poly_ext_gcd_u(z, modulus);
    if (deg(g) == 0) {
      Rational lead = g[0];
      std::vector<Rational> c(d, Rational(0));
      for (size_t i = 0; i < u.size() && i < (size_t)d; ++i) c[i] = u[i] / lead;
      // u may exceed degree d-1 when the modulus was reduced; fold it in
      if ((int)u.size() > d) {
        std::vector<Rational> full(u.size());
        for (size_t i = 0; i < u.size(); ++i) full[i] = u[i] / lead;
        return AlgExt(field_, std::move(full));
      }
      return AlgExt(field_, std::move(c));
    }
    // reducible reduction polynomial: z and the modulus share a factor g.
    // If the designated root is a root of g the value is zero.
    Rational lo = field_->bracket_lo(), hi = field_->bracket_hi();
    int slo = sign_at(p, lo);
    for (int it = 0; it < 256; ++it) {
      auto [vlo, vhi] = interval_eval(g, lo, hi);
      if (sgn(vlo) > 0 || sgn(vhi) < 0) break;
      Rational mid = (lo + hi) / 2;
      int sm = sign_at(p, mid);
      if (sm == 0) {
        if (sign_at(g, mid) == 0) throw DivisionByZero();
        break;
      }
      if (sm == slo)
        lo = mid;
      else
        hi = mid;
      if (it == 255) throw DivisionByZero();
    }
    auto [vlo, vhi] = interval_eval(g, lo, hi);
    if (!(sgn(vlo) > 0 || sgn(vhi) < 0)) throw DivisionByZero();
    modulus = poly_divmod(modulus, g).first;
  }
}

AlgExt AlgExt::operator/(const AlgExt& o) const {
  check_same_field(*this, o);
  return *this * o.inverse();
}

AlgExt AlgExt::pow(unsigned long e) const {
  AlgExt base = *this;
  AlgExt acc = from_rational(field_, 1);
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool AlgExt::operator==(const AlgExt& o) const {
  if (field_ != o.field_) return false;
  if (coords_ == o.coords_) return true;
  return (*this - o).sign() == 0;
}

int AlgExt::sign() const {
  if (is_zero()) return 0;
  if (field_->degree() == 1) return sgn(coords_[0]);
  if (is_rational()) return sgn(coords_[0]);

  Poly z(coords_.begin(), coords_.end());
  normalize(z);
  Poly p = field_->reduction();
  p.push_back(Rational(1));

  Rational lo = field_->tight_lo(), hi = field_->tight_hi();
  int slo = sign_at(p, lo);
  for (int it = 0; it < kMaxRefine; ++it) {
    auto [vlo, vhi] = interval_eval(z, lo, hi);
    if (sgn(vlo) > 0) return 1;
    if (sgn(vhi) < 0) return -1;
    if ((it + 1) % kGcdCheckPeriod == 0) {
      Poly g = poly_gcd(z, p);
      if (deg(g) >= 1) {
        int a = sign_at(g, lo), b = sign_at(g, hi);
        if (a == 0 || b == 0 || a != b) return 0;
      }
    }
    Rational mid = (lo + hi) / 2;
    int sm = sign_at(p, mid);
    if (sm == 0) return sign_at(z, mid);  // the root happens to be rational
    if (sm == slo)
      lo = mid;
    else
      hi = mid;
  }
  throw std::runtime_error("sign refinement did not converge");
}

std::strong_ordering AlgExt::operator<=>(const AlgExt& o) const {
  check_same_field(*this, o);
  int s = (*this - o).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::pair<Rational, Rational> AlgExt::enclosure(const Rational& width) const {
  if (field_->degree() == 1 || is_rational()) return {coords_[0], coords_[0]};
  Poly z(coords_.begin(), coords_.end());
  normalize(z);
  Poly p = field_->reduction();
  p.push_back(Rational(1));
  Rational lo = field_->tight_lo(), hi = field_->tight_hi();
  int slo = sign_at(p, lo);
  for (int it = 0; it < kMaxRefine; ++it) {
    auto [vlo, vhi] = interval_eval(z, lo, hi);
    if (vhi - vlo < width) return {vlo, vhi};
    Rational mid = (lo + hi) / 2;
    int sm = sign_at(p, mid);
    if (sm == 0) {
      Rational v(0);
      for (size_t i = z.size(); i-- > 0;) v = v * mid + z[i];
      return {v, v};
    }
    if (sm == slo)
      lo = mid;
    else
      hi = mid;
  }
  throw std::runtime_error("enclosure refinement did not converge");
}

static Rational inv_power(unsigned base, unsigned exp) {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), base, exp);
  return Rational(Integer(1), den);
}

double AlgExt::to_double() const {
  if (field_->degree() == 1 || is_rational()) return mpq_get_d(coords_[0].get_mpq_t());
  auto [lo, hi] = enclosure(inv_power(2, 100));
  double dlo = mpq_get_d(lo.get_mpq_t());
  double dhi = mpq_get_d(hi.get_mpq_t());
  if (dlo == dhi) return dlo;
  Rational mid = (lo + hi) / 2;
  return mpq_get_d(mid.get_mpq_t());
}

std::string AlgExt::to_decimal(int digits) const {
  if (field_->degree() == 1 || is_rational()) return decimal_string(coords_[0], digits);
  auto [lo, hi] = enclosure(inv_power(10, digits + 3));
  return decimal_string((lo + hi) / 2, digits);
}

std::string AlgExt::to_exact_string() const {
  const std::string& sym = field_->symbol();
  std::string out;
  for (size_t k = 0; k < coords_.size(); ++k) {
    if (coords_[k] == 0) continue;
    Rational mag = abs(coords_[k]);
    std::string term = mag.get_str();
    if (k >= 1) term += "·" + sym;
    if (k >= 2) term += "^" + std::to_string(k);
    if (out.empty())
      out = sgn(coords_[k]) < 0 ? "-" + term : term;
    else
      out += (sgn(coords_[k]) < 0 ? " - " : " + ") + term;
  }
  if (out.empty()) out = "0";
  return out;
}

AlgExt AlgExt::embed(const AlgExt& root_image) const {
  const FieldPtr& target = root_image.field();
  AlgExt acc = AlgExt::from_rational(target, 0);
  for (size_t k = coords_.size(); k-- > 0;) acc = acc * root_image + coords_[k];
  return acc;
}

bool AlgExt::verify_embedding(const FieldPtr& src, const AlgExt& root_image) {
  AlgExt acc = AlgExt::from_rational(root_image.field(), 1);
  for (int k = src->degree() - 1; k >= 0; --k) acc = acc * root_image + src->reduction()[k];
  return acc.is_zero();
}

AlgExt field_arith(const AlgExt& a, const AlgExt& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw std::logic_error("unreachable");
}

std::strong_ordering field_cmp(const AlgExt& a, const AlgExt& b) { return a <=> b; }

double to_float(const AlgExt& a) { return a.to_double(); }

std::string to_float_string(const AlgExt& a, int digits) { return a.to_decimal(digits); }

}  // namespace lds::field
