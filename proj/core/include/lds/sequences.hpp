#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lds/numeration.hpp"
#include "lds/partitions.hpp"

namespace lds::sequences {

struct BadPermutation : std::invalid_argument {
  BadPermutation() : std::invalid_argument("sigma is not a permutation of {0..b-1}") {}
};
struct NotInDomain : std::domain_error {
  NotInDomain() : std::domain_error("point has no branch under the interval exchange") {}
};

/// Radical inverse of n in base b >= 2, optionally with a digit permutation
/// sigma (generalized van der Corput). Exact rational.
Rational radical_inverse(uint64_t n, unsigned b,
                         const std::vector<unsigned>* sigma = nullptr);

bool pairwise_coprime(const std::vector<unsigned>& bases);

/// Componentwise radical inverses.
std::vector<Rational> halton_point(uint64_t n, const std::vector<unsigned>& bases);

/// Hammersley point set of size N: first coordinate n/N, n = 0..N-1.
std::vector<std::vector<Rational>> hammersley(uint64_t N, const std::vector<unsigned>& bases);

/// Fractional part of n*theta computed exactly.
Rational kronecker_coord(uint64_t n, const Rational& theta);
std::vector<Rational> kronecker_point(uint64_t n, const std::vector<Rational>& thetas);

/// First N points of the LS-sequence, exact, via the recursive block
/// construction (memoized levels).
std::vector<field::AlgExt> ls_points(const partitions::LSParams& params, size_t N);

/// Incremental LS point generator (same construction, stream form).
class LsGenerator {
 public:
  explicit LsGenerator(partitions::LSParams params);
  const field::AlgExt& point(size_t index);  // 0-based
  const partitions::LSParams& params() const { return params_; }

 private:
  void extend_();
  partitions::LSParams params_;
  std::vector<field::AlgExt> points_;
  Integer longs_, shorts_;  // l_n, s_n of the current level
  int level_ = 1;
  field::AlgExt alpha_pow_;  // alpha^{level+1}
};

/// The Kakutani-Fibonacci interval exchange (LS parameters fixed to (1,1)).
/// Branch domains are generated on demand and cached.
class KFMap {
 public:
  KFMap();
  const partitions::LSParams& ls() const { return ls_; }
  field::AlgExt apply(const field::AlgExt& x) const;
  std::vector<field::AlgExt> orbit(const field::AlgExt& x0, size_t N) const;

  struct Branch {
    field::AlgExt lo, hi;  // domain [lo, hi)
    field::AlgExt shift;   // T(x) = x + shift
  };
  const Branch& branch(size_t k) const;  // 1-based per the construction

 private:
  void extend_branches_() const;
  partitions::LSParams ls_;
  mutable std::vector<Branch> branches_;
  mutable std::vector<field::AlgExt> alpha_pows_;
};

/// n-th point of the beta-adic Halton sequence for the given systems:
/// coordinate i is monna_map(greedy_expand(n, sys_i)).
std::vector<field::AlgExt> beta_halton_point(const Integer& n,
                                             const std::vector<numeration::SystemPtr>& systems);

/// Outcome of the two-dimensional LS degeneracy search: a pair (k, m) with
/// alpha1^{k+1} / alpha2^{m+1} rational makes the pair not u.d. (not even
/// dense). Absence of a witness up to K certifies nothing.
struct DegeneracyVerdict {
  bool degenerate = false;
  int k = -1, m = -1;
  Rational ratio;  // the rational value when degenerate
};

DegeneracyVerdict ls_pair_degenerate(const partitions::LSParams& p1,
                                     const partitions::LSParams& p2, int K);

/// A generated point: double coordinates plus exact strings when the
/// generator is exact-valued.
struct StreamPoint {
  std::vector<double> x;
  std::vector<std::string> exact;  // empty when not exact
};

/// Uniform interface over all generators for the CLI and the QMC harness.
/// Families indexed from their natural first element (phi(0) = 0 for digit
/// families, {1*theta} for Kronecker). Streams carry memoized state and must
/// be confined to one thread; the stateless point functions above are pure.
class PointStream {
 public:
  virtual ~PointStream() = default;
  virtual int dimension() const = 0;
  virtual StreamPoint next() = 0;
};

std::unique_ptr<PointStream> make_vdc_stream(unsigned base,
                                             std::vector<unsigned> sigma = {});
std::unique_ptr<PointStream> make_halton_stream(std::vector<unsigned> bases);
std::unique_ptr<PointStream> make_hammersley_stream(uint64_t N, std::vector<unsigned> bases);
std::unique_ptr<PointStream> make_kronecker_stream(std::vector<Rational> thetas);
std::unique_ptr<PointStream> make_ls_stream(int L, int S);
std::unique_ptr<PointStream> make_beta_halton_stream(std::vector<std::vector<int>> coeff_lists);
std::unique_ptr<PointStream> make_kf_orbit_stream();
std::unique_ptr<PointStream> make_ls_pair_stream(int L1, int S1, int L2, int S2);

}  // namespace lds::sequences
