#include "lds/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace lds::discrepancy {

DiscrepancyReport discrepancy_1d(std::vector<double> points) {
  if (points.empty()) throw EmptyInput();
  std::sort(points.begin(), points.end());
  size_t N = points.size();
  double max_dev = -2.0, min_dev = 2.0, dstar = 0.0;
  size_t arg_max = 0, arg_min = 0;
  for (size_t n = 1; n <= N; ++n) {
    double x = points[n - 1];
    double dev = (double)n / N - x;        // n/N - x_n
    double left = x - (double)(n - 1) / N; // x_n - (n-1)/N
    if (dev > max_dev) {
      max_dev = dev;
      arg_max = n - 1;
    }
    if (dev < min_dev) {
      min_dev = dev;
      arg_min = n - 1;
    }
    dstar = std::max(dstar, std::max(dev, left));
  }
  DiscrepancyReport rep;
  rep.N = N;
  rep.dn = 1.0 / N + max_dev - min_dev;
  rep.dn_star = dstar;
  // the sup over intervals is approached at [x_{argmin}, x_{argmax})
  rep.argmax_a = points[arg_min];
  rep.argmax_b = points[arg_max];
  rep.method = "exact-1d";
  return rep;
}

std::pair<Rational, Rational> discrepancy_1d_exact(std::vector<Rational> points) {
  if (points.empty()) throw EmptyInput();
  std::sort(points.begin(), points.end());
  size_t N = points.size();
  Rational nn((unsigned long)N);
  Rational max_dev(-2), min_dev(2), dstar(0);
  for (size_t n = 1; n <= N; ++n) {
    Rational dev = Rational((unsigned long)n) / nn - points[n - 1];
    Rational left = points[n - 1] - Rational((unsigned long)(n - 1)) / nn;
    max_dev = std::max(max_dev, dev);
    min_dev = std::min(min_dev, dev);
    dstar = std::max(dstar, std::max(dev, left));
  }
  Rational dn = Rational(1) / nn + max_dev - min_dev;
  return {dn, dstar};
}

namespace {

// coordinate grid per axis: sorted unique point values plus 1
std::vector<double> grid_values(const std::vector<std::vector<double>>& pts, int dim) {
  std::vector<double> v;
  v.reserve(pts.size() + 1);
  for (const auto& p : pts) v.push_back(p[dim]);
  v.push_back(1.0);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Anchored-box sup: at each grid corner c both limits matter,
//   vol(c) - #{p < c}/N   (boxes shrinking onto c from above)
//   #{p <= c}/N - vol(c)  (boxes growing onto c from below).
DiscrepancyReport star_2d(const std::vector<std::vector<double>>& pts) {
  size_t N = pts.size();
  auto gx = grid_values(pts, 0), gy = grid_values(pts, 1);
  std::vector<std::vector<double>> sorted = pts;
  std::sort(sorted.begin(), sorted.end());
  auto yindex = [&](double y) {
    return (size_t)(std::lower_bound(gy.begin(), gy.end(), y) - gy.begin());
  };
  std::vector<size_t> ylt(gy.size(), 0), yle(gy.size(), 0);
  size_t pi_lt = 0, pi_le = 0;
  double best = 0, ba = 0, bb = 0;
  for (size_t i = 0; i < gx.size(); ++i) {
    double ax = gx[i];
    while (pi_le < sorted.size() && sorted[pi_le][0] <= ax) {
      yle[yindex(sorted[pi_le][1])] += 1;
      ++pi_le;
    }
    while (pi_lt < sorted.size() && sorted[pi_lt][0] < ax) {
      ylt[yindex(sorted[pi_lt][1])] += 1;
      ++pi_lt;
    }
    size_t run_lt = 0, run_le = 0;
    for (size_t j = 0; j < gy.size(); ++j) {
      double ay = gy[j];
      double vol = ax * ay;
      double d1 = vol - (double)run_lt / N;             // count with y < ay
      double d2 = (double)(run_le + yle[j]) / N - vol;  // count with y <= ay
      if (d1 > best) {
        best = d1;
        ba = ax;
        bb = ay;
      }
      if (d2 > best) {
        best = d2;
        ba = ax;
        bb = ay;
      }
      run_lt += ylt[j];
      run_le += yle[j];
    }
  }
  DiscrepancyReport rep;
  rep.N = N;
  rep.dn = std::numeric_limits<double>::quiet_NaN();  // not computed for s >= 2
  rep.dn_star = best;
  rep.argmax_a = ba;
  rep.argmax_b = bb;
  rep.method = "grid-exact";
  return rep;
}

DiscrepancyReport star_3d(const std::vector<std::vector<double>>& pts) {
  size_t N = pts.size();
  auto gx = grid_values(pts, 0), gy = grid_values(pts, 1), gz = grid_values(pts, 2);
  auto index_in = [](const std::vector<double>& g, double v) {
    return (size_t)(std::lower_bound(g.begin(), g.end(), v) - g.begin());
  };
  std::vector<std::vector<double>> sorted = pts;
  std::sort(sorted.begin(), sorted.end());
  size_t ny = gy.size(), nz = gz.size();
  std::vector<uint32_t> mlt(ny * nz, 0), mle(ny * nz, 0);
  std::vector<uint32_t> cumlt(ny * nz), cumle(ny * nz);
  size_t pi_lt = 0, pi_le = 0;
  double best = 0, ba = 0, bb = 0;
  for (size_t i = 0; i < gx.size(); ++i) {
    double ax = gx[i];
    while (pi_le < sorted.size() && sorted[pi_le][0] <= ax) {
      mle[index_in(gy, sorted[pi_le][1]) * nz + index_in(gz, sorted[pi_le][2])] += 1;
      ++pi_le;
    }
    while (pi_lt < sorted.size() && sorted[pi_lt][0] < ax) {
      mlt[index_in(gy, sorted[pi_lt][1]) * nz + index_in(gz, sorted[pi_lt][2])] += 1;
      ++pi_lt;
    }
    for (size_t j = 0; j < ny; ++j) {
      for (size_t k = 0; k < nz; ++k) {
        uint32_t v_lt = mlt[j * nz + k], v_le = mle[j * nz + k];
        if (j) {
          v_lt += cumlt[(j - 1) * nz + k];
          v_le += cumle[(j - 1) * nz + k];
        }
        if (k) {
          v_lt += cumlt[j * nz + k - 1];
          v_le += cumle[j * nz + k - 1];
        }
        if (j && k) {
          v_lt -= cumlt[(j - 1) * nz + k - 1];
          v_le -= cumle[(j - 1) * nz + k - 1];
        }
        cumlt[j * nz + k] = v_lt;
        cumle[j * nz + k] = v_le;
      }
    }
    for (size_t j = 0; j < ny; ++j) {
      for (size_t k = 0; k < nz; ++k) {
        double vol = ax * gy[j] * gz[k];
        uint32_t c_lt = (j && k) ? cumlt[(j - 1) * nz + k - 1] : 0;
        uint32_t c_le = cumle[j * nz + k];
        double d1 = vol - (double)c_lt / N;
        double d2 = (double)c_le / N - vol;
        if (d1 > best || d2 > best) {
          best = std::max(d1, d2);
          ba = ax;
          bb = gy[j];
        }
      }
    }
  }
  DiscrepancyReport rep;
  rep.N = N;
  rep.dn = std::numeric_limits<double>::quiet_NaN();
  rep.dn_star = best;
  rep.argmax_a = ba;
  rep.argmax_b = bb;
  rep.method = "grid-exact";
  return rep;
}

}  // namespace

DiscrepancyReport star_discrepancy_multi(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw EmptyInput();
  size_t s = points[0].size();
  size_t N = points.size();
  for (const auto& p : points)
    if (p.size() != s) throw std::invalid_argument("inconsistent point dimensions");
  if (s == 1) {
    std::vector<double> flat;
    flat.reserve(N);
    for (const auto& p : points) flat.push_back(p[0]);
    return discrepancy_1d(std::move(flat));
  }
  if (s == 2) {
    if (N > 4096) throw BudgetExceeded();
    return star_2d(points);
  }
  if (s == 3) {
    if (N > 256) throw BudgetExceeded();
    return star_3d(points);
  }
  throw BudgetExceeded();  // s > 3 unsupported by design
}

double halton_bound(size_t N, const std::vector<unsigned>& bases) {
  if (N < 1) throw std::invalid_argument("halton_bound needs N >= 1");
  double s = (double)bases.size();
  double prod = 1.0;
  for (unsigned b : bases)
    prod *= (b - 1.0) / (2.0 * std::log((double)b)) * std::log((double)N) + (b + 1.0) / 2.0;
  return s / N + prod / N;
}

double decomposition_bound(const std::vector<double>& whole,
                           const std::vector<std::vector<double>>& subsets) {
  std::multiset<double> all(whole.begin(), whole.end());
  size_t total = 0;
  for (const auto& sub : subsets) {
    for (double x : sub) {
      auto it = all.find(x);
      if (it == all.end()) throw NotAPartitionOfSet();
      all.erase(it);
    }
    total += sub.size();
  }
  if (!all.empty() || total != whole.size()) throw NotAPartitionOfSet();
  double bound = 0;
  for (const auto& sub : subsets) {
    if (sub.empty()) continue;
    bound += ((double)sub.size() / whole.size()) * discrepancy_1d(sub).dn;
  }
  return bound;
}

double qmc_integrate(const std::function<double(const std::vector<double>&)>& f,
                     sequences::PointStream& stream, size_t N) {
  double acc = 0;
  for (size_t i = 0; i < N; ++i) acc += f(stream.next().x);
  return acc / N;
}

}  // namespace lds::discrepancy
