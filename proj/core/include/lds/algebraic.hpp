#pragma once

#include <compare>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "lds/rational.hpp"

namespace lds::field {

struct FieldMismatch : std::invalid_argument {
  FieldMismatch() : std::invalid_argument("operands belong to different fields") {}
};
struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero field element") {}
};

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

/// Description of the real number field Q(beta): a monic rational polynomial
/// p with p(beta) = 0 together with an isolating interval for the designated
/// real root. Elements are coordinate vectors over the power basis
/// 1, beta, ..., beta^{d-1}.
///
/// Only positive roots are supported (every root used here lies in (0,1) or
/// (1,oo)), which keeps the interval arithmetic monotone.
class FieldSpec : public std::enable_shared_from_this<FieldSpec> {
 public:
  /// p = x^d + coeffs[d-1] x^{d-1} + ... + coeffs[0]; the bracket must
  /// satisfy p(lo) * p(hi) < 0 and 0 <= lo. For degree 1 the root is exactly
  /// -coeffs[0].
  static FieldPtr make(std::vector<Rational> coeffs, Rational bracket_lo,
                       Rational bracket_hi, std::string symbol = "x");

  /// Degree-1 field carrying a rational "root" r (used when a construction
  /// degenerates to rational arithmetic).
  static FieldPtr rationals(Rational root = 0, std::string symbol = "x");

  int degree() const { return degree_; }
  const std::vector<Rational>& reduction() const { return coeffs_; }
  const Rational& bracket_lo() const { return lo_; }
  const Rational& bracket_hi() const { return hi_; }
  /// Pre-refined isolating interval (width ~2^-160), the starting point for
  /// all sign decisions.
  const Rational& tight_lo() const { return tight_lo_; }
  const Rational& tight_hi() const { return tight_hi_; }
  double real_embedding() const { return embedding_; }
  const std::string& symbol() const { return symbol_; }

  /// Rational value of the root when degree() == 1.
  Rational rational_root() const;

  /// Sign of p at a rational point.
  int reduction_sign_at(const Rational& x) const;

 private:
  FieldSpec() = default;
  friend class AlgExt;

  std::vector<Rational> coeffs_;  // p minus its leading monomial, low to high
  int degree_ = 1;
  Rational lo_, hi_;
  Rational tight_lo_, tight_hi_;
  double embedding_ = 0;
  std::string symbol_;
  // x^{d+k} reduced mod p for k = 0..d-2, used by multiplication
  std::vector<std::vector<Rational>> power_table_;
};

/// Element of Q(beta) as exact rational coordinates over the power basis.
/// Value semantics; all operations are referentially transparent.
class AlgExt {
 public:
  AlgExt() = default;
  AlgExt(FieldPtr field, std::vector<Rational> coords);
  static AlgExt from_rational(const FieldPtr& field, Rational value);
  static AlgExt root(const FieldPtr& field);  // beta itself

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_rational() const;  // all coordinates above the constant vanish
  Rational rational_value() const;

  AlgExt operator-() const;
  AlgExt operator+(const AlgExt& o) const;
  AlgExt operator-(const AlgExt& o) const;
  AlgExt operator*(const AlgExt& o) const;
  AlgExt operator/(const AlgExt& o) const;
  AlgExt inverse() const;
  AlgExt pow(unsigned long e) const;

  AlgExt operator+(const Rational& r) const;
  AlgExt operator-(const Rational& r) const;
  AlgExt operator*(const Rational& r) const;

  bool operator==(const AlgExt& o) const;
  bool operator!=(const AlgExt& o) const { return !(*this == o); }

  /// Exact sign of the real value under the designated embedding, decided by
  /// isolating-interval refinement (never by floating point).
  int sign() const;
  std::strong_ordering operator<=>(const AlgExt& o) const;
  bool operator<(const AlgExt& o) const { return (*this <=> o) == std::strong_ordering::less; }
  bool operator<=(const AlgExt& o) const { return (*this <=> o) != std::strong_ordering::greater; }
  bool operator>(const AlgExt& o) const { return (*this <=> o) == std::strong_ordering::greater; }
  bool operator>=(const AlgExt& o) const { return (*this <=> o) != std::strong_ordering::less; }

  /// Rational enclosure of the value with hi - lo < width.
  std::pair<Rational, Rational> enclosure(const Rational& width) const;

  /// Correctly rounded conversions. `to_decimal` is within 10^{-digits} of
  /// the exact real.
  double to_double() const;
  std::string to_decimal(int digits) const;

  /// Exact string form, e.g. "1/2 + 3/4·a" with the field's symbol.
  std::string to_exact_string() const;

  /// Image under the embedding that sends this field's root to `root_image`
  /// (an element of the target field). The caller asserts that root_image is
  /// a root of this field's reduction polynomial; verify_embedding checks it.
  AlgExt embed(const AlgExt& root_image) const;
  static bool verify_embedding(const FieldPtr& src, const AlgExt& root_image);

 private:
  void reduce_();
  FieldPtr field_;
  std::vector<Rational> coords_;
};

AlgExt operator*(const Rational& r, const AlgExt& a);

/// field_arith / field_cmp / to_float in operation form.
enum class ArithOp { add, sub, mul, div };
AlgExt field_arith(const AlgExt& a, const AlgExt& b, ArithOp op);
std::strong_ordering field_cmp(const AlgExt& a, const AlgExt& b);
double to_float(const AlgExt& a);                    // correctly rounded double
std::string to_float_string(const AlgExt& a, int digits);

}  // namespace lds::field
