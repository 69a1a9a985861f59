#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lds/algebraic.hpp"
#include "lds/sequences.hpp"

namespace lds::discrepancy {

struct EmptyInput : std::invalid_argument {
  EmptyInput() : std::invalid_argument("discrepancy of an empty point set") {}
};
struct BudgetExceeded : std::invalid_argument {
  BudgetExceeded() : std::invalid_argument("point set too large for exact grid enumeration") {}
};
struct NotAPartitionOfSet : std::invalid_argument {
  NotAPartitionOfSet() : std::invalid_argument("subsets do not partition the point set") {}
};

struct DiscrepancyReport {
  size_t N = 0;
  double dn = 0;        // D_N
  double dn_star = 0;   // D*_N
  double argmax_a = 0;  // extremal interval/box lower corner data
  double argmax_b = 0;
  std::string method;  // "exact-1d" | "grid-exact" | "oracle"
};

/// Exact 1-D discrepancy of a finite point set via the sorted closed forms
///   D_N  = 1/N + max_n(n/N - x_n) - min_n(n/N - x_n)
///   D*_N = max_n max(n/N - x_n, x_n - (n-1)/N).
/// argmax_a/argmax_b report the extremal interval [a, b) for D_N.
DiscrepancyReport discrepancy_1d(std::vector<double> points);

/// Same computation in exact rational arithmetic (points are consumed as
/// exact rationals); returns {D_N, D*_N}.
std::pair<Rational, Rational> discrepancy_1d_exact(std::vector<Rational> points);

/// Exact s-dimensional star discrepancy, s <= 3, by enumerating anchored
/// boxes with corners on the coordinate grid (strict and closed counts).
/// Budget: N <= 4096 for s = 2, N <= 256 for s = 3.
DiscrepancyReport star_discrepancy_multi(const std::vector<std::vector<double>>& points);

/// Evaluates the Halton star-discrepancy upper bound
///   s/N + (1/N) prod_i ((b_i-1)/(2 log b_i) log N + (b_i+1)/2).
double halton_bound(size_t N, const std::vector<unsigned>& bases);

/// sum_j (N_j/N) D_{N_j}(subset_j); requires the subsets to partition
/// `whole` as multisets.
double decomposition_bound(const std::vector<double>& whole,
                           const std::vector<std::vector<double>>& subsets);

/// Plain QMC estimate (1/N) sum f(x_n) over the first N stream points.
double qmc_integrate(const std::function<double(const std::vector<double>&)>& f,
                     sequences::PointStream& stream, size_t N);

}  // namespace lds::discrepancy
