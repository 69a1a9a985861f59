#include "lds/partitions.hpp"

#include <ostream>

namespace lds::partitions {

using field::AlgExt;
using field::FieldPtr;
using field::FieldSpec;

std::vector<AlgExt> Partition::lengths() const {
  std::vector<AlgExt> out;
  out.reserve(interval_count());
  for (size_t i = 0; i + 1 < breaks.size(); ++i) out.push_back(breaks[i + 1] - breaks[i]);
  return out;
}

Partition Partition::trivial(const FieldPtr& f) {
  return {f, {AlgExt::from_rational(f, 0), AlgExt::from_rational(f, 1)}};
}

LSParams make_ls_params(int L, int S) {
  if (L < 1 || S < 0 || L + S < 2)
    throw std::invalid_argument("LS parameters need L >= 1, S >= 0, L + S >= 2");
  if (S == 0) {
    FieldPtr f = FieldSpec::rationals(Rational(1, L), "α");
    return {L, S, f, AlgExt::from_rational(f, Rational(1, L))};
  }
  // root of S x^2 + L x - 1 in (0,1); monic form x^2 + (L/S) x - 1/S
  Integer disc = Integer(L) * L + 4 * Integer(S);
  Integer r;
  mpz_sqrt(r.get_mpz_t(), disc.get_mpz_t());
  if (r * r == disc) {
    Rational alpha(r - L, 2 * S);
    alpha.canonicalize();
    FieldPtr f = FieldSpec::rationals(alpha, "α");
    return {L, S, f, AlgExt::from_rational(f, alpha)};
  }
  std::vector<Rational> coeffs = {Rational(-1, S), Rational(L, S)};
  FieldPtr f = FieldSpec::make(coeffs, Rational(0), Rational(1), "α");
  return {L, S, f, AlgExt::root(f)};
}

Partition ls_template(const LSParams& p) {
  Partition out;
  out.field = p.field;
  AlgExt alpha2 = p.alpha * p.alpha;
  AlgExt t = AlgExt::from_rational(p.field, 0);
  out.breaks.push_back(t);
  for (int i = 0; i < p.L; ++i) {
    t = t + p.alpha;
    out.breaks.push_back(t);
  }
  for (int j = 0; j < p.S; ++j) {
    t = t + alpha2;
    out.breaks.push_back(t);
  }
  // last breakpoint is L alpha + S alpha^2 = 1 exactly; normalize it
  out.breaks.back() = AlgExt::from_rational(p.field, 1);
  return out;
}

Partition rho_refine(const Partition& pi, const Partition& rho) {
  if (pi.field != rho.field) throw field::FieldMismatch();
  if (rho.interval_count() < 2)
    throw std::invalid_argument("rho must be a nontrivial partition");
  auto lens = pi.lengths();
  const AlgExt* maxlen = &lens[0];
  for (const auto& l : lens)
    if (l > *maxlen) maxlen = &l;
  Partition out;
  out.field = pi.field;
  out.breaks.push_back(pi.breaks.front());
  for (size_t i = 0; i + 1 < pi.breaks.size(); ++i) {
    if (lens[i] == *maxlen) {
      // affine image a + (b-a) * rho over the interior breakpoints of rho
      for (size_t j = 1; j + 1 < rho.breaks.size(); ++j)
        out.breaks.push_back(pi.breaks[i] + lens[i] * rho.breaks[j]);
    }
    out.breaks.push_back(pi.breaks[i + 1]);
  }
  return out;
}

Partition kakutani_refine(const Partition& pi, const AlgExt& alpha) {
  auto lens = pi.lengths();
  const AlgExt* maxlen = &lens[0];
  for (const auto& l : lens)
    if (l > *maxlen) maxlen = &l;
  Partition out;
  out.field = pi.field;
  out.breaks.push_back(pi.breaks.front());
  for (size_t i = 0; i + 1 < pi.breaks.size(); ++i) {
    if (lens[i] == *maxlen) out.breaks.push_back(pi.breaks[i] + lens[i] * alpha);
    out.breaks.push_back(pi.breaks[i + 1]);
  }
  return out;
}

LSCounts ls_counts(const LSParams& p, int level) {
  LSCounts c{1, 1, 0};
  if (level == 0) return c;
  Integer t_prev = 1, t = p.L + p.S, l = p.L, s = p.S;
  for (int n = 2; n <= level; ++n) {
    Integer t_next = p.L * t + p.S * t_prev;
    Integer l_next = p.L * l + s;
    s = p.S * l;
    l = l_next;
    t_prev = t;
    t = t_next;
  }
  return {t, l, s};
}

LSPartitionResult ls_partition(const LSParams& p, int level) {
  if (level < 0) throw std::invalid_argument("level must be >= 0");
  Partition pi = Partition::trivial(p.field);
  Partition rho = ls_template(p);
  for (int i = 0; i < level; ++i) pi = rho_refine(pi, rho);
  return {pi, ls_counts(p, level)};
}

void write_partition_csv(std::ostream& os, const Partition& p, int float_digits) {
  os << "exact,float\n";
  for (const auto& b : p.breaks)
    os << b.to_exact_string() << "," << b.to_decimal(float_digits) << "\n";
}

}  // namespace lds::partitions
