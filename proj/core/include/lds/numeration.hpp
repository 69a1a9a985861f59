#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "lds/algebraic.hpp"

namespace lds::numeration {

struct EmptyCoeffs : std::invalid_argument {
  EmptyCoeffs() : std::invalid_argument("numeration system needs at least one coefficient") {}
};
struct LeadingZero : std::invalid_argument {
  LeadingZero() : std::invalid_argument("leading recurrence coefficient must be >= 1") {}
};
struct InadmissiblePrefix : std::invalid_argument {
  InadmissiblePrefix() : std::invalid_argument("cylinder prefix is not admissible") {}
};
struct OutOfRange : std::domain_error {
  OutOfRange() : std::domain_error("argument outside [0,1)") {}
};

/// Finite greedy expansion, least significant digit first.
struct DigitString {
  std::vector<int> digits;

  void trim();
  bool is_zero() const;
  size_t support() const { return digits.size(); }  // after trim
  std::string to_string() const;                    // "1,0,1"
  static DigitString parse(const std::string& s);
  bool operator==(const DigitString& o) const;
};

/// Linear-recurrence numeration system G with G_0 = 1,
///   G_n = sum_{k=1..n} a_{k-1} G_{n-k} + 1   for 1 <= n < d,
///   G_n = sum_{k=1..d} a_{k-1} G_{n-k}       for n >= d,
/// and characteristic root beta of x^d - a_0 x^{d-1} - ... - a_{d-1}.
///
/// The base sequence extends lazily under an internal mutex; everything else
/// is immutable after construction.
class NumerationSystem {
 public:
  explicit NumerationSystem(std::vector<int> coeffs);

  const std::vector<int>& coeffs() const { return coeffs_; }
  int order() const { return (int)coeffs_.size(); }
  const field::FieldPtr& beta_field() const { return field_; }
  field::AlgExt beta() const { return field::AlgExt::root(field_); }
  field::AlgExt beta_inv() const;  // 1/beta, cached

  /// Whether the coefficient vector matches one of the digit patterns for
  /// which the Monna image is known to stay inside [0,1): the constant
  /// pattern (a,...,a), the pattern (a, a-1, ..., a-1, a), or (1,0,1).
  bool pattern_accepted() const { return accepted_; }
  const std::string& pattern_note() const { return note_; }

  const Integer& base(size_t k) const;  // G_k
  int alphabet_max(size_t k) const;     // ceil(G_{k+1}/G_k) - 1

 private:
  std::vector<int> coeffs_;
  field::FieldPtr field_;
  field::AlgExt beta_inv_;
  bool accepted_ = false;
  std::string note_;
  mutable std::mutex mu_;
  mutable std::vector<Integer> bases_;
};

using SystemPtr = std::shared_ptr<const NumerationSystem>;

SystemPtr build_system(std::vector<int> coeffs);

DigitString greedy_expand(const Integer& n, const NumerationSystem& sys);
Integer digit_value(const DigitString& d, const NumerationSystem& sys);
bool is_admissible(const DigitString& d, const NumerationSystem& sys);

/// Add-one map on finite admissible strings (carry propagation); equals
/// greedy_expand(digit_value(d) + 1).
DigitString odometer_step(const DigitString& d, const NumerationSystem& sys);

/// phi_beta: sum eps_j beta^{-j-1}, exact.
field::AlgExt monna_map(const DigitString& d, const NumerationSystem& sys);

/// Greedy admissible beta-expansion of x in [0,1), truncated to `depth`
/// digits. Ties resolve to the finite (non-tail) expansion.
DigitString monna_pseudo_inverse(const field::AlgExt& x, const NumerationSystem& sys, int depth);
DigitString monna_pseudo_inverse(const Rational& x, const NumerationSystem& sys, int depth);

struct Cylinder {
  std::vector<int> fixed_digits;
  size_t length() const { return fixed_digits.size(); }
};

/// Invariant odometer measure of a cylinder, computed with exact counts
/// F_{k,r} (direct enumeration of n < G_{k+r}) and exact beta-arithmetic.
field::AlgExt cylinder_measure(const Cylinder& z, const NumerationSystem& sys);

/// Counts F_{k,r} for all admissible prefixes of length k at once, indexed by
/// prefix value (admissible length-k prefixes biject with {0,...,G_k-1}).
/// counts[v][r] = #{ n < G_{k+r} : first k digits of n have value v }.
std::vector<std::vector<uint64_t>> cylinder_counts(const NumerationSystem& sys, int k);

/// Evaluates the invariant-measure formula from a precomputed count row.
field::AlgExt cylinder_measure_from_counts(const std::vector<uint64_t>& f_row, int k,
                                           const NumerationSystem& sys);

/// Digits of the admissible prefix of length k with value v (v < G_k).
std::vector<int> prefix_digits(uint64_t v, int k, const NumerationSystem& sys);

}  // namespace lds::numeration
