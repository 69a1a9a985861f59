#include "lds/sequences.hpp"

#include <algorithm>
#include <numeric>

namespace lds::sequences {

using field::AlgExt;
using field::FieldPtr;

Rational radical_inverse(uint64_t n, unsigned b, const std::vector<unsigned>* sigma) {
  if (b < 2) throw std::invalid_argument("radical inverse needs base >= 2");
  if (sigma) {
    if (sigma->size() != b) throw BadPermutation();
    std::vector<bool> seen(b, false);
    for (unsigned v : *sigma) {
      if (v >= b || seen[v]) throw BadPermutation();
      seen[v] = true;
    }
  }
  std::vector<unsigned> digits;
  while (n) {
    digits.push_back((unsigned)(n % b));
    n /= b;
  }
  Rational acc(0);
  for (size_t k = digits.size(); k-- > 0;) {
    unsigned d = sigma ? (*sigma)[digits[k]] : digits[k];
    acc = (acc + d) / b;
  }
  return acc;
}

bool pairwise_coprime(const std::vector<unsigned>& bases) {
  for (size_t i = 0; i < bases.size(); ++i)
    for (size_t j = i + 1; j < bases.size(); ++j)
      if (std::gcd(bases[i], bases[j]) != 1) return false;
  return true;
}

std::vector<Rational> halton_point(uint64_t n, const std::vector<unsigned>& bases) {
  std::vector<Rational> out;
  out.reserve(bases.size());
  for (unsigned b : bases) out.push_back(radical_inverse(n, b));
  return out;
}

std::vector<std::vector<Rational>> hammersley(uint64_t N, const std::vector<unsigned>& bases) {
  if (N < 1) throw std::invalid_argument("hammersley needs N >= 1");
  std::vector<std::vector<Rational>> out;
  out.reserve(N);
  for (uint64_t n = 0; n < N; ++n) {
    std::vector<Rational> p;
    p.reserve(bases.size() + 1);
    p.emplace_back(Integer((unsigned long)n), Integer((unsigned long)N));
    p.back().canonicalize();
    for (unsigned b : bases) p.push_back(radical_inverse(n, b));
    out.push_back(std::move(p));
  }
  return out;
}

Rational kronecker_coord(uint64_t n, const Rational& theta) {
  Rational v = theta * Rational((unsigned long)n);
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  return v - Rational(fl);
}

std::vector<Rational> kronecker_point(uint64_t n, const std::vector<Rational>& thetas) {
  std::vector<Rational> out;
  out.reserve(thetas.size());
  for (const auto& t : thetas) out.push_back(kronecker_coord(n, t));
  return out;
}

LsGenerator::LsGenerator(partitions::LSParams params) : params_(std::move(params)) {
  // level 1: left endpoints of rho^1 by magnitude
  AlgExt alpha = params_.alpha;
  AlgExt alpha2 = alpha * alpha;
  AlgExt t = AlgExt::from_rational(params_.field, 0);
  points_.push_back(t);
  for (int i = 1; i < params_.L; ++i) points_.push_back(points_.back() + alpha);
  if (params_.S > 0) {
    points_.push_back(points_.back() + alpha);  // L*alpha, first short endpoint
    for (int j = 1; j < params_.S; ++j) points_.push_back(points_.back() + alpha2);
  }
  longs_ = params_.L;
  shorts_ = params_.S;
  level_ = 1;
  alpha_pow_ = alpha2;  // alpha^{level+1}
}

void LsGenerator::extend_() {
  if (!longs_.fits_ulong_p())
    throw std::length_error("LS block construction exceeded addressable size");
  size_t l_n = (size_t)longs_.get_ui();
  AlgExt next_pow = alpha_pow_ * params_.alpha;  // alpha^{level+2}
  int long_maps = params_.S == 0 ? params_.L - 1 : params_.L;
  AlgExt offset = AlgExt::from_rational(params_.field, 0);
  for (int i = 1; i <= long_maps; ++i) {
    offset = offset + alpha_pow_;  // i * alpha^{level+1}
    for (size_t idx = 0; idx < l_n; ++idx) points_.push_back(points_[idx] + offset);
  }
  AlgExt short_offset = offset;  // L * alpha^{level+1} when S >= 1
  for (int j = 1; j <= params_.S - 1; ++j) {
    short_offset = short_offset + next_pow;
    for (size_t idx = 0; idx < l_n; ++idx) points_.push_back(points_[idx] + short_offset);
  }
  Integer new_longs = Integer(params_.L) * longs_ + shorts_;
  shorts_ = Integer(params_.S) * longs_;
  longs_ = new_longs;
  level_ += 1;
  alpha_pow_ = next_pow;
}

const AlgExt& LsGenerator::point(size_t index) {
  while (points_.size() <= index) extend_();
  return points_[index];
}

std::vector<AlgExt> ls_points(const partitions::LSParams& params, size_t N) {
  if (N < 1) throw std::invalid_argument("ls_points needs N >= 1");
  LsGenerator gen(params);
  gen.point(N - 1);
  std::vector<AlgExt> out;
  out.reserve(N);
  for (size_t i = 0; i < N; ++i) out.push_back(gen.point(i));
  return out;
}

KFMap::KFMap() : ls_(partitions::make_ls_params(1, 1)) {
  alpha_pows_ = {AlgExt::from_rational(ls_.field, 1), ls_.alpha};
}

const KFMap::Branch& KFMap::branch(size_t k) const {
  while (branches_.size() < k) extend_branches_();
  return branches_[k - 1];
}

void KFMap::extend_branches_() const {
  size_t n = branches_.size() + 1;  // next branch index
  auto pow = [&](size_t e) -> const AlgExt& {
    while (alpha_pows_.size() <= e) alpha_pows_.push_back(alpha_pows_.back() * ls_.alpha);
    return alpha_pows_[e];
  };
  if (n == 1) {
    branches_.push_back({AlgExt::from_rational(ls_.field, 0), pow(2), pow(1)});
    return;
  }
  // Same-parity branches tile contiguously: each domain starts where the
  // previous one of its parity ended.
  if (n % 2 == 0) {
    size_t k = n / 2;  // T_{2k} on [sum_{j<k} a^{2j+1}, sum_{j<=k} a^{2j+1})
    AlgExt lo = (n == 2) ? pow(1) : branches_[n - 3].hi;
    AlgExt hi = lo + pow(2 * k + 1);
    branches_.push_back({lo, hi, pow(2 * k) - lo});
  } else {
    size_t k = (n - 1) / 2;  // T_{2k+1} on [sum_{j<k} a^{2j+2}, sum_{j<=k} a^{2j+2})
    AlgExt lo = (n == 3) ? pow(2) : branches_[n - 3].hi;
    AlgExt hi = lo + pow(2 * k + 2);
    branches_.push_back({lo, hi, pow(2 * k + 1) - lo});
  }
}

AlgExt KFMap::apply(const AlgExt& x) const {
  AlgExt zero = AlgExt::from_rational(ls_.field, 0);
  AlgExt one = AlgExt::from_rational(ls_.field, 1);
  if (x < zero || x >= one) throw NotInDomain();
  const Branch& b1 = branch(1);
  if (x < b1.hi) return x + b1.shift;
  // odd branches tile [alpha^2, alpha), even branches tile [alpha, 1)
  size_t idx = (x < b1.shift) ? 3 : 2;  // b1.shift == alpha
  for (;;) {
    const Branch& b = branch(idx);
    if (x < b.hi) return x + b.shift;
    idx += 2;
  }
}

std::vector<AlgExt> KFMap::orbit(const AlgExt& x0, size_t N) const {
  std::vector<AlgExt> out;
  out.reserve(N);
  AlgExt x = x0;
  for (size_t i = 0; i < N; ++i) {
    out.push_back(x);
    if (i + 1 < N) x = apply(x);
  }
  return out;
}

std::vector<AlgExt> beta_halton_point(const Integer& n,
                                      const std::vector<numeration::SystemPtr>& systems) {
  std::vector<AlgExt> out;
  out.reserve(systems.size());
  for (const auto& sys : systems)
    out.push_back(numeration::monna_map(numeration::greedy_expand(n, *sys), *sys));
  return out;
}

namespace {

// squarefree part of a positive integer by trial division
Integer squarefree_part(Integer n) {
  Integer out = 1;
  for (Integer p = 2; p * p <= n; p += 1) {
    int e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      n /= p;
      ++e;
    }
    if (e % 2) out *= p;
  }
  return out * n;
}

// representation u + w*sqrt(s) of an element a + b*alpha of the quadratic
// field of alpha = (-L + sqrt(L^2+4S)) / (2S); s is the squarefree part.
struct QuadRep {
  Rational u, w;
  Integer s;  // 1 when the element is rational
};

QuadRep quad_rep(const partitions::LSParams& p, const AlgExt& v) {
  if (p.field->degree() == 1 || v.is_rational()) {
    return {v.coords()[0], Rational(0), Integer(1)};
  }
  Rational a = v.coords()[0], b = v.coords()[1];
  Integer disc = Integer(p.L) * p.L + 4 * Integer(p.S);
  Integer s = squarefree_part(disc);
  Integer f2 = disc / s;
  Integer f;
  mpz_sqrt(f.get_mpz_t(), f2.get_mpz_t());
  // alpha = -L/(2S) + (f/(2S)) sqrt(s)
  Rational half_l(Integer(p.L), Integer(2) * p.S);
  half_l.canonicalize();
  Rational fs(f, Integer(2) * p.S);
  fs.canonicalize();
  return {a - b * half_l, b * fs, s};
}

}  // namespace

DegeneracyVerdict ls_pair_degenerate(const partitions::LSParams& p1,
                                     const partitions::LSParams& p2, int K) {
  if (K < 1) throw std::invalid_argument("K >= 1 required");
  for (int k = 0; k <= K; ++k) {
    AlgExt g = p1.alpha.pow(k + 1);
    QuadRep rg = quad_rep(p1, g);
    for (int m = 0; m <= K; ++m) {
      AlgExt d = p2.alpha.pow(m + 1);
      QuadRep rd = quad_rep(p2, d);
      bool grat = rg.w == 0, drat = rd.w == 0;
      Rational ratio;
      bool hit = false;
      if (grat && drat) {
        ratio = rg.u / rd.u;
        hit = true;
      } else if (!grat && !drat && rg.s == rd.s) {
        // (u1 + w1 sqrt s) / (u2 + w2 sqrt s) rational iff u1 w2 == u2 w1,
        // i.e. the resultant of the two minimal polynomials has the rational
        // linear factor x - ratio
        if (rg.u * rd.w == rd.u * rg.w) {
          ratio = rd.w != 0 ? Rational(rg.w / rd.w) : Rational(rg.u / rd.u);
          hit = true;
        }
      }
      if (hit) return {true, k, m, ratio};
    }
  }
  return {false, -1, -1, Rational(0)};
}

namespace {

std::string rational_exact(const Rational& q) { return q.get_str(); }

class VdcStream : public PointStream {
 public:
  VdcStream(unsigned base, std::vector<unsigned> sigma)
      : base_(base), sigma_(std::move(sigma)) {}
  int dimension() const override { return 1; }
  StreamPoint next() override {
    Rational r = radical_inverse(n_++, base_, sigma_.empty() ? nullptr : &sigma_);
    return {{mpq_get_d(r.get_mpq_t())}, {rational_exact(r)}};
  }

 private:
  unsigned base_;
  std::vector<unsigned> sigma_;
  uint64_t n_ = 0;
};

class HaltonStream : public PointStream {
 public:
  explicit HaltonStream(std::vector<unsigned> bases) : bases_(std::move(bases)) {}
  int dimension() const override { return (int)bases_.size(); }
  StreamPoint next() override {
    StreamPoint p;
    for (unsigned b : bases_) {
      Rational r = radical_inverse(n_, b);
      p.x.push_back(mpq_get_d(r.get_mpq_t()));
      p.exact.push_back(rational_exact(r));
    }
    ++n_;
    return p;
  }

 private:
  std::vector<unsigned> bases_;
  uint64_t n_ = 0;
};

class HammersleyStream : public PointStream {
 public:
  HammersleyStream(uint64_t N, std::vector<unsigned> bases)
      : N_(N), bases_(std::move(bases)) {}
  int dimension() const override { return (int)bases_.size() + 1; }
  StreamPoint next() override {
    if (n_ >= N_) throw std::out_of_range("hammersley point set exhausted");
    StreamPoint p;
    Rational first(Integer((unsigned long)n_), Integer((unsigned long)N_));
    first.canonicalize();
    p.x.push_back(mpq_get_d(first.get_mpq_t()));
    p.exact.push_back(rational_exact(first));
    for (unsigned b : bases_) {
      Rational r = radical_inverse(n_, b);
      p.x.push_back(mpq_get_d(r.get_mpq_t()));
      p.exact.push_back(rational_exact(r));
    }
    ++n_;
    return p;
  }

 private:
  uint64_t N_;
  std::vector<unsigned> bases_;
  uint64_t n_ = 0;
};

class KroneckerStream : public PointStream {
 public:
  explicit KroneckerStream(std::vector<Rational> thetas) : thetas_(std::move(thetas)) {}
  int dimension() const override { return (int)thetas_.size(); }
  StreamPoint next() override {
    ++n_;  // Kronecker indexing starts at {1*theta}
    StreamPoint p;
    for (const auto& t : thetas_) {
      Rational r = kronecker_coord(n_, t);
      p.x.push_back(mpq_get_d(r.get_mpq_t()));
      p.exact.push_back(rational_exact(r));
    }
    return p;
  }

 private:
  std::vector<Rational> thetas_;
  uint64_t n_ = 0;
};

class LsStream : public PointStream {
 public:
  LsStream(int L, int S) : gen_(partitions::make_ls_params(L, S)) {}
  int dimension() const override { return 1; }
  StreamPoint next() override {
    const AlgExt& v = gen_.point(n_++);
    return {{v.to_double()}, {v.to_exact_string()}};
  }

 private:
  LsGenerator gen_;
  size_t n_ = 0;
};

class BetaHaltonStream : public PointStream {
 public:
  explicit BetaHaltonStream(std::vector<std::vector<int>> coeff_lists) {
    for (auto& c : coeff_lists) systems_.push_back(numeration::build_system(std::move(c)));
  }
  int dimension() const override { return (int)systems_.size(); }
  StreamPoint next() override {
    StreamPoint p;
    for (const auto& sys : systems_) {
      AlgExt v = numeration::monna_map(numeration::greedy_expand(n_, *sys), *sys);
      p.x.push_back(v.to_double());
      p.exact.push_back(v.to_exact_string());
    }
    n_ += 1;
    return p;
  }
  const std::vector<numeration::SystemPtr>& systems() const { return systems_; }

 private:
  std::vector<numeration::SystemPtr> systems_;
  Integer n_ = 0;
};

class KfOrbitStream : public PointStream {
 public:
  KfOrbitStream() : x_(AlgExt::from_rational(map_.ls().field, 0)) {}
  int dimension() const override { return 1; }
  StreamPoint next() override {
    AlgExt cur = x_;
    x_ = map_.apply(x_);
    return {{cur.to_double()}, {cur.to_exact_string()}};
  }

 private:
  KFMap map_;
  AlgExt x_;
};

class LsPairStream : public PointStream {
 public:
  LsPairStream(int L1, int S1, int L2, int S2)
      : a_(partitions::make_ls_params(L1, S1)), b_(partitions::make_ls_params(L2, S2)) {}
  int dimension() const override { return 2; }
  StreamPoint next() override {
    const AlgExt& u = a_.point(n_);
    const AlgExt& v = b_.point(n_);
    ++n_;
    return {{u.to_double(), v.to_double()}, {u.to_exact_string(), v.to_exact_string()}};
  }

 private:
  LsGenerator a_, b_;
  size_t n_ = 0;
};

}  // namespace

std::unique_ptr<PointStream> make_vdc_stream(unsigned base, std::vector<unsigned> sigma) {
  return std::make_unique<VdcStream>(base, std::move(sigma));
}
std::unique_ptr<PointStream> make_halton_stream(std::vector<unsigned> bases) {
  return std::make_unique<HaltonStream>(std::move(bases));
}
std::unique_ptr<PointStream> make_hammersley_stream(uint64_t N, std::vector<unsigned> bases) {
  return std::make_unique<HammersleyStream>(N, std::move(bases));
}
std::unique_ptr<PointStream> make_kronecker_stream(std::vector<Rational> thetas) {
  return std::make_unique<KroneckerStream>(std::move(thetas));
}
std::unique_ptr<PointStream> make_ls_stream(int L, int S) {
  return std::make_unique<LsStream>(L, S);
}
std::unique_ptr<PointStream> make_beta_halton_stream(std::vector<std::vector<int>> coeff_lists) {
  return std::make_unique<BetaHaltonStream>(std::move(coeff_lists));
}
std::unique_ptr<PointStream> make_kf_orbit_stream() { return std::make_unique<KfOrbitStream>(); }
std::unique_ptr<PointStream> make_ls_pair_stream(int L1, int S1, int L2, int S2) {
  return std::make_unique<LsPairStream>(L1, S1, L2, S2);
}

}  // namespace lds::sequences
