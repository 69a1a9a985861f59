#include "lds/copula.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <thread>

namespace lds::copula {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_matrix(const std::vector<double>& cost, size_t n) {
  if (cost.size() != n * n) throw NonSquare();
  for (double v : cost)
    if (!std::isfinite(v)) throw NonFinite();
}

// minimization core; cost is row-major n x n
std::vector<int> solve_min(const std::vector<double>& cost, size_t n) {
  // potentials u, v and column assignment p over a virtual 0 column
  std::vector<double> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (size_t i = 1; i <= n; ++i) {
    p[0] = (int)i;
    size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      size_t i0 = (size_t)p[j0], j1 = 0;
      double delta = kInf;
      for (size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = (int)j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[(size_t)p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      size_t j1 = (size_t)way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> sigma(n, -1);
  for (size_t j = 1; j <= n; ++j)
    if (p[j]) sigma[(size_t)p[j] - 1] = (int)j - 1;
  return sigma;
}

}  // namespace

AssignmentResult hungarian(const std::vector<double>& cost, size_t n, Sense sense) {
  check_matrix(cost, n);
  std::vector<int> sigma;
  if (sense == Sense::min) {
    sigma = solve_min(cost, n);
  } else {
    std::vector<double> neg(cost.size());
    for (size_t i = 0; i < cost.size(); ++i) neg[i] = -cost[i];
    sigma = solve_min(neg, n);
  }
  double value = 0;
  for (size_t i = 0; i < n; ++i) value += cost[i * n + (size_t)sigma[i]];
  return {std::move(sigma), value};
}

namespace {

// Kuhn matching on the zero entries of the reduced matrix.
bool try_kuhn(size_t i, const std::vector<double>& a, size_t n, std::vector<char>& used,
              std::vector<int>& match_col) {
  for (size_t j = 0; j < n; ++j) {
    if (a[i * n + j] != 0.0 || used[j]) continue;
    used[j] = 1;
    if (match_col[j] < 0 || try_kuhn((size_t)match_col[j], a, n, used, match_col)) {
      match_col[j] = (int)i;
      return true;
    }
  }
  return false;
}

}  // namespace

AssignmentResult hungarian_five_step(const std::vector<double>& cost, size_t n, Sense sense) {
  check_matrix(cost, n);
  std::vector<double> a(cost);
  if (sense == Sense::max)
    for (auto& x : a) x = -x;

  // step 1: row reduction
  for (size_t i = 0; i < n; ++i) {
    double m = *std::min_element(a.begin() + i * n, a.begin() + (i + 1) * n);
    for (size_t j = 0; j < n; ++j) a[i * n + j] -= m;
  }
  // step 2: column reduction
  for (size_t j = 0; j < n; ++j) {
    double m = a[j];
    for (size_t i = 1; i < n; ++i) m = std::min(m, a[i * n + j]);
    for (size_t i = 0; i < n; ++i) a[i * n + j] -= m;
  }

  for (;;) {
    // steps 3-4: cover all zeros with a minimum number of lines (Koenig)
    std::vector<int> match_col(n, -1);
    size_t matched = 0;
    for (size_t i = 0; i < n; ++i) {
      std::vector<char> used(n, 0);
      if (try_kuhn(i, a, n, used, match_col)) ++matched;
    }
    if (matched == n) {
      std::vector<int> sigma(n, -1);
      for (size_t j = 0; j < n; ++j)
        if (match_col[j] >= 0) sigma[(size_t)match_col[j]] = (int)j;
      double value = 0;
      for (size_t i = 0; i < n; ++i) value += cost[i * n + (size_t)sigma[i]];
      return {std::move(sigma), value};
    }
    // vertex cover from the matching: unmatched rows start alternating paths
    std::vector<int> match_row(n, -1);
    for (size_t j = 0; j < n; ++j)
      if (match_col[j] >= 0) match_row[(size_t)match_col[j]] = (int)j;
    std::vector<char> row_seen(n, 0), col_seen(n, 0);
    std::vector<size_t> queue;
    for (size_t i = 0; i < n; ++i)
      if (match_row[i] < 0) {
        row_seen[i] = 1;
        queue.push_back(i);
      }
    while (!queue.empty()) {
      size_t i = queue.back();
      queue.pop_back();
      for (size_t j = 0; j < n; ++j) {
        if (a[i * n + j] != 0.0 || col_seen[j]) continue;
        col_seen[j] = 1;
        int i2 = match_col[j];
        if (i2 >= 0 && !row_seen[(size_t)i2]) {
          row_seen[(size_t)i2] = 1;
          queue.push_back((size_t)i2);
        }
      }
    }
    // cover: rows not seen, columns seen
    // step 5: smallest uncovered entry
    double delta = kInf;
    for (size_t i = 0; i < n; ++i) {
      if (!row_seen[i]) continue;  // covered row
      for (size_t j = 0; j < n; ++j) {
        if (col_seen[j]) continue;  // covered column
        delta = std::min(delta, a[i * n + j]);
      }
    }
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        if (row_seen[i] && !col_seen[j]) a[i * n + j] -= delta;      // uncovered
        if (!row_seen[i] && col_seen[j]) a[i * n + j] += delta;      // doubly covered
      }
  }
}

GridFunction GridFunction::uniform(size_t n, std::vector<double> values) {
  if (values.size() != n * n) throw NonSquare();
  GridFunction g;
  g.rows = g.cols = n;
  g.values = std::move(values);
  g.row_breaks.reserve(n + 1);
  for (size_t i = 0; i <= n; ++i) {
    Rational b(Integer((unsigned long)i), Integer((unsigned long)n));
    b.canonicalize();
    g.row_breaks.push_back(b);
  }
  g.col_breaks = g.row_breaks;
  return g;
}

std::vector<Rational> ShuffleOfM::t() const {
  std::vector<int> inv(n);
  for (size_t i = 0; i < n; ++i) inv[(size_t)sigma[i]] = (int)i;
  std::vector<Rational> out;
  out.reserve(n + 1);
  out.push_back(Rational(0));
  for (size_t j = 0; j < n; ++j) {
    size_t i = (size_t)inv[j];
    out.push_back(out.back() + (s[i + 1] - s[i]));
  }
  return out;
}

ShuffleOfM ShuffleOfM::M() { return {1, {Rational(0), Rational(1)}, {0}, {1}}; }
ShuffleOfM ShuffleOfM::W() { return {1, {Rational(0), Rational(1)}, {0}, {-1}}; }

ExtremalResult copula_extremal(const GridFunction& f, Sense sense) {
  if (f.rows != f.cols) throw NonSquare();
  size_t n = f.rows;
  AssignmentResult asg = hungarian(f.values, n, sense);
  ExtremalResult out;
  out.value = asg.value / (double)n;
  out.shuffle.n = n;
  out.shuffle.s = f.row_breaks;
  out.shuffle.sigma = asg.sigma;
  out.shuffle.omega.assign(n, 1);  // the value is independent of omega
  return out;
}

double sin_sum(double x, double y) { return std::sin(std::numbers::pi * (x + y)); }
double product_xy(double x, double y) { return x * y; }

CellExtrema exact_extrema_sin_sum() {
  return [](double x0, double x1, double y0, double y1) {
    double s0 = x0 + y0, s1 = x1 + y1;
    double a = std::sin(std::numbers::pi * s0), b = std::sin(std::numbers::pi * s1);
    double mx = std::max(a, b), mn = std::min(a, b);
    if (s0 <= 0.5 && 0.5 <= s1) mx = 1.0;
    if (s0 <= 1.5 && 1.5 <= s1) mn = -1.0;
    return std::make_pair(mn, mx);
  };
}

CellExtrema exact_extrema_product() {
  return [](double x0, double x1, double y0, double y1) {
    return std::make_pair(x0 * y0, x1 * y1);  // monotone on [0,1]^2
  };
}

CellExtrema grid_sampler(Integrand f, int g) {
  if (g < 2) throw std::invalid_argument("grid sampler needs g >= 2");
  return [f = std::move(f), g](double x0, double x1, double y0, double y1) {
    double mn = kInf, mx = -kInf;
    for (int a = 0; a < g; ++a) {
      double x = x0 + (x1 - x0) * a / (g - 1);
      for (int b = 0; b < g; ++b) {
        double y = y0 + (y1 - y0) * b / (g - 1);
        double v = f(x, y);
        mn = std::min(mn, v);
        mx = std::max(mx, v);
      }
    }
    return std::make_pair(mn, mx);
  };
}

namespace {

unsigned worker_count() {
  if (const char* env = std::getenv("LDS_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 256) return (unsigned)v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

void parallel_rows(size_t rows, const std::function<void(size_t)>& body) {
  unsigned workers = worker_count();
  if (workers <= 1 || rows < 2) {
    for (size_t i = 0; i < rows; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= rows) return;
        body(i);
      }
    });
  for (auto& t : pool) t.join();
}

}  // namespace

SandwichResult sandwich_bounds(const CellExtrema& cells, int level, Sense sense) {
  if (level < 1) throw std::invalid_argument("sandwich level must be >= 1");
  size_t m = (size_t)1 << level;
  std::vector<double> under(m * m), over(m * m);
  parallel_rows(m, [&](size_t i) {
    double x0 = (double)i / m, x1 = (double)(i + 1) / m;
    for (size_t j = 0; j < m; ++j) {
      auto [mn, mx] = cells(x0, x1, (double)j / m, (double)(j + 1) / m);
      under[i * m + j] = mn;
      over[i * m + j] = mx;
    }
  });
  ExtremalResult lo = copula_extremal(GridFunction::uniform(m, std::move(under)), sense);
  ExtremalResult hi = copula_extremal(GridFunction::uniform(m, std::move(over)), sense);
  return {lo.value, hi.value, std::move(lo.shuffle), std::move(hi.shuffle)};
}

double shuffle_integrate(const Integrand& f, const ShuffleOfM& sh, size_t quad_points) {
  if (quad_points < 2) throw std::invalid_argument("quad_points must be >= 2");
  std::vector<Rational> t = sh.t();
  double acc = 0;
  for (size_t i = 0; i < sh.n; ++i) {
    double s0 = mpq_get_d(sh.s[i].get_mpq_t());
    double s1 = mpq_get_d(sh.s[i + 1].get_mpq_t());
    double w = s1 - s0;
    size_t j = (size_t)sh.sigma[i];
    double t0 = mpq_get_d(t[j].get_mpq_t());
    double t1 = mpq_get_d(t[j + 1].get_mpq_t());
    size_t k = std::max<size_t>(1, (size_t)std::llround((double)quad_points * w));
    for (size_t q = 0; q < k; ++q) {
      double tt = (q + 0.5) / k;
      double x = s0 + tt * w;
      double y = sh.omega[i] > 0 ? t0 + tt * (t1 - t0) : t1 - tt * (t1 - t0);
      acc += f(x, y) * (w / k);
    }
  }
  return acc;
}

std::pair<double, double> frechet(double u, double v) {
  return {std::max(u + v - 1.0, 0.0), std::min(u, v)};
}

bool copula_axioms_check(const std::vector<double>& B, size_t n, double tol) {
  if (B.size() != n * n) throw NonSquare();
  for (double v : B)
    if (!(v >= -tol)) return false;
  for (size_t i = 0; i < n; ++i) {
    double rs = 0, cs = 0;
    for (size_t j = 0; j < n; ++j) {
      rs += B[i * n + j];
      cs += B[j * n + i];
    }
    if (std::abs(rs - 1.0) > tol || std::abs(cs - 1.0) > tol) return false;
  }
  return true;
}

void FtdParams::validate() const {
  if (lambda1 <= 0 || lambda2 <= 0) throw std::invalid_argument("intensities must be positive");
  if (R1 < 0 || R1 > 1 || R2 < 0 || R2 > 1)
    throw std::invalid_argument("recovery rates must lie in [0,1]");
  if (payment_times.empty() || payment_times.front() != 0.0)
    throw std::invalid_argument("first payment time must be t_0 = 0");
  for (size_t i = 1; i < payment_times.size(); ++i)
    if (payment_times[i] <= payment_times[i - 1])
      throw std::invalid_argument("payment times must increase");
}

double ftd_integrand(double x, double y, const FtdParams& p) {
  auto inv_exp = [](double u, double lambda) {
    return u >= 1.0 ? kInf : -std::log1p(-u) / lambda;
  };
  double t1 = inv_exp(x, p.lambda1);
  double t2 = inv_exp(y, p.lambda2);
  if (t1 == kInf && t2 == kInf) return 0.0;
  double num = 0;
  if (t1 <= std::min(t2, p.T)) num += 1.0 - p.R1;
  if (t2 < std::min(t1, p.T)) num += 1.0 - p.R2;
  num *= std::exp(-p.r * std::min(t1, t2));
  double den = 1.0;  // the t_0 = 0 term
  for (size_t i = 1; i < p.payment_times.size(); ++i) {
    double ti = p.payment_times[i];
    if (t1 > ti && t2 > ti) den += std::exp(-p.r * ti);
  }
  return num / den;
}

double lipschitz_gap(double lipschitz_const, int n) {
  if (lipschitz_const < 0) throw std::invalid_argument("Lipschitz constant must be >= 0");
  return lipschitz_const * std::numbers::sqrt2 / std::pow(2.0, n);
}

}  // namespace lds::copula
