#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "lds/rational.hpp"

namespace lds::copula {

struct NonSquare : std::invalid_argument {
  NonSquare() : std::invalid_argument("cost matrix must be square") {}
};
struct NonFinite : std::invalid_argument {
  NonFinite() : std::invalid_argument("cost matrix entries must be finite") {}
};

enum class Sense { min, max };

struct AssignmentResult {
  std::vector<int> sigma;  // row i -> column sigma[i]
  double value = 0;        // sum of selected original entries
};

/// O(n^3) shortest-augmenting-path solver (Jonker-Volgenant style
/// potentials). Rows are augmented in increasing index order and Dijkstra
/// ties resolve to the smallest column, so the result is deterministic.
/// Sense::max is handled by negation; `value` is the sum of the selected
/// original entries either way.
AssignmentResult hungarian(const std::vector<double>& cost, size_t n, Sense sense);

/// Literal matrix-reduction form (row/column reduction, minimum zero cover,
/// uncovered-minimum adjustment). Kept as a slow reference for
/// cross-checking; intended for integer-valued matrices where the zero tests
/// are exact.
AssignmentResult hungarian_five_step(const std::vector<double>& cost, size_t n, Sense sense);

/// Piecewise-constant function on a rows x cols breakpoint grid (uniform by
/// default), row index i along x, column index j along y.
struct GridFunction {
  size_t rows = 0, cols = 0;
  std::vector<double> values;  // row-major
  std::vector<Rational> row_breaks, col_breaks;

  double at(size_t i, size_t j) const { return values[i * cols + j]; }
  static GridFunction uniform(size_t n, std::vector<double> values);
};

/// Copula supported on one diagonal or antidiagonal segment per cell
/// (s_{i-1},s_i) x (t_{sigma(i)-1},t_{sigma(i)}); the companion partition t
/// is determined by squareness.
struct ShuffleOfM {
  size_t n = 0;
  std::vector<Rational> s;   // 0 = s_0 < ... < s_n = 1
  std::vector<int> sigma;    // 0-based permutation
  std::vector<int> omega;    // +1 diagonal, -1 antidiagonal

  std::vector<Rational> t() const;
  static ShuffleOfM M();  // comonotone copula
  static ShuffleOfM W();  // countermonotone copula
};

struct ExtremalResult {
  double value = 0;
  ShuffleOfM shuffle;
};

/// Sharp bound of int f dC over all copulas for a piecewise-constant f on a
/// uniform square grid: the LSAP optimum (1/n) sum a_{i,sigma*(i)}, attained
/// by the shuffle {n, pi_n, sigma*, +1}.
ExtremalResult copula_extremal(const GridFunction& f, Sense sense);

using Integrand = std::function<double(double, double)>;

/// Cell-extremum strategy: returns {min, max} of f over the closed cell
/// [x0,x1] x [y0,y1]. Must be side-effect free (cells are evaluated
/// concurrently; set LDS_THREADS to control the worker count).
using CellExtrema = std::function<std::pair<double, double>(double, double, double, double)>;

double sin_sum(double x, double y);     // sin(pi(x+y))
double product_xy(double x, double y);  // x*y

CellExtrema exact_extrema_sin_sum();
CellExtrema exact_extrema_product();
/// min/max over a g x g per-cell sample grid including the cell corners
/// (offsets k/(g-1)). Not a hard sandwich.
CellExtrema grid_sampler(Integrand f, int g);

struct SandwichResult {
  double lb = 0, ub = 0;
  ShuffleOfM lb_shuffle, ub_shuffle;
};

/// Dyadic sandwich at level n (2^n x 2^n cells): lb optimizes the grid of
/// cell minima, ub the grid of cell maxima, both in the requested sense.
/// With exact cell extrema this brackets the true optimum for every n.
SandwichResult sandwich_bounds(const CellExtrema& cells, int level, Sense sense);

/// Integral of f against a shuffle-of-M copula by composite midpoint
/// quadrature along the support segments.
double shuffle_integrate(const Integrand& f, const ShuffleOfM& sh, size_t quad_points);

/// Frechet-Hoeffding bounds (W(u,v), M(u,v)).
std::pair<double, double> frechet(double u, double v);

/// Checks a doubly stochastic cell-mass grid: row/column sums 1 and
/// nonnegative entries (discrete two-increasing at grid resolution).
bool copula_axioms_check(const std::vector<double>& B, size_t n, double tol = 1e-12);

struct FtdParams {
  double lambda1 = 1.0 / 3, lambda2 = 0.5;  // default intensities
  double R1 = 0.5, R2 = 0.7;                // recovery rates
  double T = 2.0;                           // maturity
  double r = 0.05;                          // risk-free rate
  std::vector<double> payment_times = {0.0, 1.0, 2.0};
  void validate() const;  // t_0 = 0, lambda_i > 0, R_i in [0,1]
};

/// Spread integrand of the first-to-default swap. Tie rule: the asset-1 loss
/// indicator is inclusive, the asset-2 one strict, so at most one fires; the
/// t_0 = 0 premium term always counts, keeping the denominator >= 1.
double ftd_integrand(double x, double y, const FtdParams& p);

/// Sandwich-gap guarantee L*sqrt(2)/2^n for L-Lipschitz integrands under
/// exact cell extrema.
double lipschitz_gap(double lipschitz_const, int n);

}  // namespace lds::copula
