#include "lds/numeration.hpp"

#include <algorithm>
#include <sstream>

namespace lds::numeration {

using field::AlgExt;
using field::FieldPtr;
using field::FieldSpec;

void DigitString::trim() {
  while (!digits.empty() && digits.back() == 0) digits.pop_back();
}

bool DigitString::is_zero() const {
  for (int d : digits)
    if (d != 0) return false;
  return true;
}

std::string DigitString::to_string() const {
  std::string out;
  for (size_t i = 0; i < digits.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(digits[i]);
  }
  return out;
}

DigitString DigitString::parse(const std::string& s) {
  DigitString d;
  if (s.empty()) return d;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) d.digits.push_back(std::stoi(tok));
  return d;
}

bool DigitString::operator==(const DigitString& o) const {
  DigitString a = *this, b = o;
  a.trim();
  b.trim();
  return a.digits == b.digits;
}

namespace {

bool all_equal(const std::vector<int>& a) {
  return std::all_of(a.begin(), a.end(), [&](int x) { return x == a[0]; });
}

bool is_case2(const std::vector<int>& a) {
  // (a0, a0-1, ..., a0-1, a0)
  if (a.size() < 2) return false;
  if (a.front() != a.back()) return false;
  for (size_t i = 1; i + 1 < a.size(); ++i)
    if (a[i] != a[0] - 1) return false;
  return true;
}

// Quadratic x^2 - a0 x - a1 has rational roots iff a0^2 + 4 a1 is a square.
bool square_root_exact(const Integer& n, Integer& r) {
  if (sgn(n) < 0) return false;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r * r == n;
}

FieldPtr make_beta_field(const std::vector<int>& a) {
  int d = (int)a.size();
  if (d == 1) return FieldSpec::rationals(a[0], "β");
  if (d == 2) {
    Integer disc = Integer(a[0]) * a[0] + 4 * Integer(a[1]);
    Integer r;
    if (square_root_exact(disc, r))
      return FieldSpec::rationals(Rational(a[0] + r, 2), "β");
  }
  // p = x^d - a0 x^{d-1} - ... - a_{d-1}; coefficients low-to-high
  std::vector<Rational> coeffs(d);
  for (int i = 0; i < d; ++i) coeffs[i] = Rational(-a[d - 1 - i]);
  int amax = *std::max_element(a.begin(), a.end());
  Rational lo(a[0]), hi(amax + 1);
  // p(a0) <= 0 always; bump lo down if it happens to be a root of p
  Rational acc(1);
  for (int i = d - 1; i >= 0; --i) acc = acc * lo + coeffs[i];
  if (acc == 0) lo -= Rational(1, 2);
  return FieldSpec::make(coeffs, lo, hi, "β");
}

}  // namespace

NumerationSystem::NumerationSystem(std::vector<int> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw EmptyCoeffs();
  if (coeffs_[0] < 1) throw LeadingZero();
  for (int c : coeffs_)
    if (c < 0) throw std::invalid_argument("negative recurrence coefficient");
  field_ = make_beta_field(coeffs_);
  beta_inv_ = AlgExt::root(field_).inverse();
  if (all_equal(coeffs_)) {
    accepted_ = true;
  } else if (is_case2(coeffs_)) {
    accepted_ = true;
  } else if (coeffs_ == std::vector<int>{1, 0, 1}) {
    accepted_ = true;
  } else {
    accepted_ = false;
    note_ =
        "coefficient pattern outside the accepted families; the Monna image "
        "may leave [0,1) and uniform-distribution claims do not apply";
  }
  bases_.push_back(1);
}

AlgExt NumerationSystem::beta_inv() const { return beta_inv_; }

const Integer& NumerationSystem::base(size_t k) const {
  std::lock_guard<std::mutex> lock(mu_);
  int d = order();
  while (bases_.size() <= k) {
    size_t n = bases_.size();
    Integer g = 0;
    size_t terms = std::min<size_t>(n, d);
    for (size_t j = 1; j <= terms; ++j) g += Integer(coeffs_[j - 1]) * bases_[n - j];
    if (n < (size_t)d) g += 1;
    bases_.push_back(g);
  }
  return bases_[k];
}

int NumerationSystem::alphabet_max(size_t k) const {
  Integer q, r;
  mpz_cdiv_q(q.get_mpz_t(), base(k + 1).get_mpz_t(), base(k).get_mpz_t());
  return (int)q.get_si() - 1;
}

SystemPtr build_system(std::vector<int> coeffs) {
  return std::make_shared<const NumerationSystem>(std::move(coeffs));
}

DigitString greedy_expand(const Integer& n, const NumerationSystem& sys) {
  DigitString out;
  if (sgn(n) < 0) throw std::invalid_argument("greedy_expand needs n >= 0");
  if (sgn(n) == 0) return out;
  size_t i = 0;
  while (sys.base(i + 1) <= n) ++i;
  out.digits.assign(i + 1, 0);
  Integer rest = n;
  for (size_t j = i + 1; j-- > 0;) {
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rest.get_mpz_t(), sys.base(j).get_mpz_t());
    out.digits[j] = (int)q.get_si();
    rest = r;
  }
  return out;
}

Integer digit_value(const DigitString& d, const NumerationSystem& sys) {
  Integer v = 0;
  for (size_t j = 0; j < d.digits.size(); ++j)
    if (d.digits[j] != 0) v += Integer(d.digits[j]) * sys.base(j);
  return v;
}

bool is_admissible(const DigitString& d, const NumerationSystem& sys) {
  Integer prefix = 0;
  for (size_t k = 0; k < d.digits.size(); ++k) {
    if (d.digits[k] < 0) return false;
    prefix += Integer(d.digits[k]) * sys.base(k);
    if (prefix >= sys.base(k + 1)) return false;
  }
  return true;
}

DigitString odometer_step(const DigitString& d, const NumerationSystem& sys) {
  // largest l with x(l-1) + 1 = G_l decides how far the carry reaches
  size_t len = d.digits.size();
  Integer prefix = 0;
  long carry_to = -1;
  for (size_t l = 0; l <= len + 1; ++l) {
    if (prefix + 1 == sys.base(l)) carry_to = (long)l;
    if (l < len) prefix += Integer(d.digits[l]) * sys.base(l);
  }
  DigitString out = d;
  size_t l = (size_t)carry_to;  // l = 0 always qualifies since G_0 = 1
  if (out.digits.size() < l + 1) out.digits.resize(l + 1, 0);
  for (size_t j = 0; j < l; ++j) out.digits[j] = 0;
  out.digits[l] += 1;
  return out;
}

field::AlgExt monna_map(const DigitString& d, const NumerationSystem& sys) {
  AlgExt gamma = sys.beta_inv();
  AlgExt acc = AlgExt::from_rational(sys.beta_field(), 0);
  for (size_t j = d.digits.size(); j-- > 0;) acc = (acc + Rational(d.digits[j])) * gamma;
  return acc;
}

DigitString monna_pseudo_inverse(const field::AlgExt& x, const NumerationSystem& sys, int depth) {
  AlgExt zero = AlgExt::from_rational(sys.beta_field(), 0);
  AlgExt one = AlgExt::from_rational(sys.beta_field(), 1);
  if (x < zero || x >= one) throw OutOfRange();
  DigitString out;
  out.digits.assign(depth, 0);
  AlgExt rest = x;
  AlgExt power = sys.beta_inv();  // beta^{-(j+1)}
  Integer prefix = 0;
  for (int j = 0; j < depth; ++j) {
    // admissibility cap: prefix + v G_j <= G_{j+1} - 1
    Integer cap_int;
    Integer room = sys.base(j + 1) - 1 - prefix;
    mpz_fdiv_q(cap_int.get_mpz_t(), room.get_mpz_t(), sys.base(j).get_mpz_t());
    long cap = cap_int.get_si();
    int v = 0;
    AlgExt acc = rest;
    while (v < cap && acc >= power) {
      acc = acc - power;
      ++v;
    }
    out.digits[j] = v;
    rest = acc;
    prefix += Integer(v) * sys.base(j);
    power = power * sys.beta_inv();
  }
  return out;
}

DigitString monna_pseudo_inverse(const Rational& x, const NumerationSystem& sys, int depth) {
  return monna_pseudo_inverse(AlgExt::from_rational(sys.beta_field(), x), sys, depth);
}

namespace {

// enumerates n = 0 .. limit-1 by odometer increments, invoking fn(digits)
template <typename F>
void enumerate_digits(const NumerationSystem& sys, const Integer& limit, F&& fn) {
  std::vector<int> cur;  // digits of n, LSF
  for (Integer n = 0; n < limit; ++n) {
    fn(cur);
    // add one with carries: largest l with x(l-1)+1 == G_l
    Integer prefix = 0;
    long carry_to = -1;
    for (size_t l = 0; l <= cur.size() + 1; ++l) {
      if (prefix + 1 == sys.base(l)) carry_to = (long)l;
      if (l < cur.size()) prefix += Integer(cur[l]) * sys.base(l);
    }
    size_t l = carry_to < 0 ? 0 : (size_t)carry_to;
    if (cur.size() < l + 1) cur.resize(l + 1, 0);
    for (size_t j = 0; j < l; ++j) cur[j] = 0;
    cur[l] += 1;
  }
}

}  // namespace

field::AlgExt cylinder_measure_from_counts(const std::vector<uint64_t>& f_row, int k,
                                           const NumerationSystem& sys) {
  int d = sys.order();
  const auto& a = sys.coeffs();
  AlgExt beta = sys.beta();
  // numerator: sum_r c_r beta^{d-1-r}, c_r = F_r - sum_{i<r} a_i F_{r-1-i}
  AlgExt num = AlgExt::from_rational(sys.beta_field(), 0);
  for (int r = 0; r < d; ++r) {
    Rational c((long)f_row[r]);
    for (int i = 0; i < r; ++i) c -= Rational(a[i]) * Rational((long)f_row[r - 1 - i]);
    num = num + beta.pow(d - 1 - r) * c;
  }
  AlgExt den = AlgExt::from_rational(sys.beta_field(), 0);
  for (int j = 0; j < d; ++j) den = den + beta.pow(j);
  AlgExt scale = sys.beta_inv().pow(k);
  return num * scale / den;
}

field::AlgExt cylinder_measure(const Cylinder& z, const NumerationSystem& sys) {
  DigitString prefix{z.fixed_digits};
  if (!is_admissible(prefix, sys)) throw InadmissiblePrefix();
  int k = (int)z.length();
  int d = sys.order();
  std::vector<uint64_t> f(d, 0);
  Integer limit = sys.base(k + d - 1);
  enumerate_digits(sys, limit, [&](const std::vector<int>& cur) {
    // prefix match on the first k digits
    for (int i = 0; i < k; ++i) {
      int di = i < (int)cur.size() ? cur[i] : 0;
      if (di != z.fixed_digits[i]) return;
    }
    Integer v = 0;
    for (size_t i = 0; i < cur.size(); ++i)
      if (cur[i]) v += Integer(cur[i]) * sys.base(i);
    for (int r = 0; r < d; ++r)
      if (v < sys.base(k + r)) ++f[r];
  });
  return cylinder_measure_from_counts(f, k, sys);
}

std::vector<std::vector<uint64_t>> cylinder_counts(const NumerationSystem& sys, int k) {
  int d = sys.order();
  if (!sys.base(k).fits_ulong_p() || !sys.base(k + d - 1).fits_ulong_p())
    throw std::overflow_error("cylinder_counts: base sequence too large for bulk enumeration");
  uint64_t gk = sys.base(k).get_ui();
  Integer limit = sys.base(k + d - 1);
  std::vector<std::vector<uint64_t>> counts(gk, std::vector<uint64_t>(d, 0));
  std::vector<uint64_t> gsmall(k);
  for (int i = 0; i < k; ++i) gsmall[i] = sys.base(i).get_ui();
  std::vector<Integer> thresholds(d);
  for (int r = 0; r < d; ++r) thresholds[r] = sys.base(k + r);
  Integer n = 0;
  enumerate_digits(sys, limit, [&](const std::vector<int>& cur) {
    uint64_t v = 0;
    for (int i = 0; i < k && i < (int)cur.size(); ++i) v += (uint64_t)cur[i] * gsmall[i];
    for (int r = 0; r < d; ++r)
      if (n < thresholds[r]) ++counts[v][r];
    n += 1;
  });
  return counts;
}

std::vector<int> prefix_digits(uint64_t v, int k, const NumerationSystem& sys) {
  DigitString d = greedy_expand(Integer((unsigned long)v), sys);
  d.digits.resize(k, 0);
  return d.digits;
}

}  // namespace lds::numeration
