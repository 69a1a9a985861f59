#pragma once

#include <iosfwd>
#include <vector>

#include "lds/algebraic.hpp"

namespace lds::partitions {

/// Partition of [0,1) by strictly increasing exact breakpoints
/// 0 = t_0 < t_1 < ... < t_k = 1 (both endpoints stored).
struct Partition {
  field::FieldPtr field;
  std::vector<field::AlgExt> breaks;

  size_t interval_count() const { return breaks.size() - 1; }
  std::vector<field::AlgExt> lengths() const;

  static Partition trivial(const field::FieldPtr& f);  // omega = {[0,1)}
};

/// L long intervals of length alpha and S short ones of length alpha^2 with
/// L alpha + S alpha^2 = 1. alpha lives in a quadratic field (or Q when the
/// discriminant is a perfect square, e.g. S = 0 gives alpha = 1/L).
struct LSParams {
  int L = 1;
  int S = 0;
  field::FieldPtr field;
  field::AlgExt alpha;
};

LSParams make_ls_params(int L, int S);

/// The template partition rho_{L,S} itself (level 1).
Partition ls_template(const LSParams& p);

/// Replaces every maximal-length interval of pi by the affine image of rho.
/// Maximal length is detected exactly.
Partition rho_refine(const Partition& pi, const Partition& rho);

/// Kakutani alpha-refinement: splits each maximal interval in proportions
/// alpha : 1-alpha. Coincides with rho_refine for rho = {[0,alpha),[alpha,1)}.
Partition kakutani_refine(const Partition& pi, const field::AlgExt& alpha);

struct LSCounts {
  Integer total, longs, shorts;  // t_n, l_n, s_n
};

/// Counts from t_n = L t_{n-1} + S t_{n-2}, t_0 = 1, t_1 = L + S.
LSCounts ls_counts(const LSParams& p, int level);

struct LSPartitionResult {
  Partition partition;
  LSCounts counts;
};

/// n-fold rho_{L,S}-refinement of the trivial partition.
LSPartitionResult ls_partition(const LSParams& p, int level);

/// CSV export: one breakpoint per row, exact form plus float column.
void write_partition_csv(std::ostream& os, const Partition& p, int float_digits = 17);

}  // namespace lds::partitions
