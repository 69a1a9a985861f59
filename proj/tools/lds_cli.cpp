// lds: generate low-discrepancy sequences, measure discrepancy, and compute
// copula integral bounds. Machine-readable output: CSV for points, JSON for
// reports; errors go to stderr as single-line JSON.
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lds/copula.hpp"
#include "lds/discrepancy.hpp"
#include "lds/numeration.hpp"
#include "lds/sequences.hpp"

using json = nlohmann::ordered_json;
using namespace lds;

namespace {

std::string format_double(double v, int precision) {
  char buf[128];
  std::to_chars_result res;
  if (precision >= 17)
    res = std::to_chars(buf, buf + sizeof buf, v);  // shortest round-trip
  else
    res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

std::vector<unsigned> parse_unsigned_list(const std::string& s) {
  std::vector<unsigned> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back((unsigned)std::stoul(tok));
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

struct GenerateConfig {
  std::string family;
  uint64_t n = 0;
  unsigned base = 2;
  std::string bases = "2,3";
  std::string thetas = "0.6180339887498949";
  std::string sigma;
  int L = 1, S = 1;
  int L1 = 1, S1 = 1, L2 = 4, S2 = 1;
  std::vector<std::string> systems;
  int precision = 17;
  std::string output;
  bool exact = false;
};

std::unique_ptr<sequences::PointStream> build_stream(const GenerateConfig& cfg,
                                                     std::string* warning) {
  if (cfg.family == "vdc") {
    std::vector<unsigned> sigma;
    if (!cfg.sigma.empty()) sigma = parse_unsigned_list(cfg.sigma);
    return sequences::make_vdc_stream(cfg.base, std::move(sigma));
  }
  if (cfg.family == "halton") {
    auto bases = parse_unsigned_list(cfg.bases);
    if (!sequences::pairwise_coprime(bases) && warning)
      *warning = "halton bases are not pairwise coprime";
    return sequences::make_halton_stream(bases);
  }
  if (cfg.family == "hammersley")
    return sequences::make_hammersley_stream(cfg.n, parse_unsigned_list(cfg.bases));
  if (cfg.family == "kronecker") {
    std::vector<Rational> thetas;
    std::stringstream ss(cfg.thetas);
    std::string tok;
    while (std::getline(ss, tok, ',')) thetas.push_back(rational_from_decimal(tok));
    return sequences::make_kronecker_stream(std::move(thetas));
  }
  if (cfg.family == "ls") return sequences::make_ls_stream(cfg.L, cfg.S);
  if (cfg.family == "beta-halton") {
    std::vector<std::vector<int>> lists;
    for (const auto& s : cfg.systems) lists.push_back(parse_int_list(s));
    if (lists.empty()) lists.push_back({1, 1});
    std::string notes;
    for (const auto& c : lists) {
      auto sys = numeration::build_system(c);
      if (!sys->pattern_accepted()) notes = sys->pattern_note();
    }
    if (!notes.empty() && warning) *warning = notes;
    return sequences::make_beta_halton_stream(std::move(lists));
  }
  if (cfg.family == "kf-orbit") return sequences::make_kf_orbit_stream();
  if (cfg.family == "ls-pair")
    return sequences::make_ls_pair_stream(cfg.L1, cfg.S1, cfg.L2, cfg.S2);
  throw CLI::ValidationError("--family", "unknown family '" + cfg.family + "'");
}

void write_points_csv(std::ostream& os, sequences::PointStream& stream, uint64_t n,
                      int precision, bool exact) {
  for (uint64_t i = 0; i < n; ++i) {
    auto p = stream.next();
    for (size_t d = 0; d < p.x.size(); ++d) {
      if (d) os << ',';
      os << format_double(p.x[d], precision);
    }
    if (exact)
      for (const auto& e : p.exact) os << ',' << e;
    os << '\n';
  }
}

std::vector<std::vector<double>> read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::vector<std::vector<double>> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      double v = 0;
      auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw std::runtime_error("non-numeric CSV field: '" + tok + "'");
      row.push_back(v);
    }
    if (!pts.empty() && row.size() != pts[0].size())
      throw std::runtime_error("ragged CSV rows");
    pts.push_back(std::move(row));
  }
  if (pts.empty()) throw std::runtime_error("empty input");
  return pts;
}

json cycles_of(const std::vector<int>& sigma) {
  json cycles = json::array();
  std::vector<char> seen(sigma.size(), 0);
  for (size_t i = 0; i < sigma.size(); ++i) {
    if (seen[i]) continue;
    json cyc = json::array();
    size_t j = i;
    while (!seen[j]) {
      seen[j] = 1;
      cyc.push_back(j);
      j = (size_t)sigma[j];
    }
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

copula::CellExtrema pick_sampler(const std::string& integrand, const std::string& sampler,
                                 const copula::FtdParams& ftd) {
  copula::Integrand f;
  if (integrand == "sin-sum")
    f = copula::sin_sum;
  else if (integrand == "product")
    f = copula::product_xy;
  else if (integrand == "ftd")
    f = [ftd](double x, double y) { return copula::ftd_integrand(x, y, ftd); };
  else
    throw CLI::ValidationError("--integrand", "unknown integrand '" + integrand + "'");

  if (sampler == "exact") {
    if (integrand == "sin-sum") return copula::exact_extrema_sin_sum();
    if (integrand == "product") return copula::exact_extrema_product();
    throw CLI::ValidationError("--sampler",
                               "no exact cell extrema for '" + integrand + "'; use grid:g");
  }
  if (sampler.rfind("grid:", 0) == 0) {
    int g = std::stoi(sampler.substr(5));
    return copula::grid_sampler(std::move(f), g);
  }
  throw CLI::ValidationError("--sampler", "expected 'exact' or 'grid:g'");
}

void write_support_csv(const std::string& path, const copula::ShuffleOfM& sh) {
  std::ofstream os(path);
  os << "x0,y0,x1,y1\n";
  auto t = sh.t();
  for (size_t i = 0; i < sh.n; ++i) {
    double s0 = mpq_get_d(sh.s[i].get_mpq_t()), s1 = mpq_get_d(sh.s[i + 1].get_mpq_t());
    size_t j = (size_t)sh.sigma[i];
    double t0 = mpq_get_d(t[j].get_mpq_t()), t1 = mpq_get_d(t[j + 1].get_mpq_t());
    if (sh.omega[i] > 0)
      os << s0 << ',' << t0 << ',' << s1 << ',' << t1 << '\n';
    else
      os << s0 << ',' << t1 << ',' << s1 << ',' << t0 << '\n';
  }
}

int run_verify(uint64_t n, std::ostream& os) {
  using field::AlgExt;
  bool ok = true;

  sequences::KFMap T;
  auto pts = sequences::ls_points(T.ls(), n);
  auto orb = T.orbit(AlgExt::from_rational(T.ls().field, 0), n);
  bool orbit_ok = true;
  for (size_t i = 0; i < n && orbit_ok; ++i) orbit_ok = orb[i] == pts[i];
  os << (orbit_ok ? "PASS" : "FAIL") << " orbit-identity: T^n(0) vs LS(1,1) points, n = " << n
     << "\n";
  ok = ok && orbit_ok;

  auto sys = numeration::build_system({1, 1});
  AlgExt image = T.ls().alpha + Rational(1);
  bool conj_ok = AlgExt::verify_embedding(sys->beta_field(), image);
  numeration::DigitString digits;
  for (uint64_t i = 0; i < n && conj_ok; ++i) {
    AlgExt lhs = T.apply(numeration::monna_map(digits, *sys).embed(image));
    auto next = numeration::odometer_step(digits, *sys);
    AlgExt rhs = numeration::monna_map(next, *sys).embed(image);
    conj_ok = lhs == rhs;
    digits = std::move(next);
  }
  os << (conj_ok ? "PASS" : "FAIL")
     << " conjugacy: T after Monna vs Monna after odometer, n = " << n << "\n";
  ok = ok && conj_ok;
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"low-discrepancy sequence and copula-bound toolkit"};
  app.require_subcommand(1);

  GenerateConfig gen;
  auto* cmd_gen = app.add_subcommand("generate", "emit points as CSV");
  cmd_gen->add_option("--family", gen.family,
                      "vdc|halton|hammersley|kronecker|ls|beta-halton|kf-orbit|ls-pair")
      ->required();
  cmd_gen->add_option("--n", gen.n, "number of points")->required()->check(CLI::PositiveNumber);
  cmd_gen->add_option("--base", gen.base, "vdc base");
  cmd_gen->add_option("--bases", gen.bases, "comma-separated bases (halton/hammersley)");
  cmd_gen->add_option("--thetas", gen.thetas, "comma-separated decimals (kronecker)");
  cmd_gen->add_option("--sigma", gen.sigma, "digit permutation for vdc, comma-separated");
  cmd_gen->add_option("--L", gen.L, "LS long-interval count");
  cmd_gen->add_option("--S", gen.S, "LS short-interval count");
  cmd_gen->add_option("--L1", gen.L1);
  cmd_gen->add_option("--S1", gen.S1);
  cmd_gen->add_option("--L2", gen.L2);
  cmd_gen->add_option("--S2", gen.S2);
  cmd_gen->add_option("--system", gen.systems,
                      "beta-halton recurrence coefficients, e.g. --system 1,0,1 (repeatable)");
  cmd_gen->add_option("--precision", gen.precision)->check(CLI::Range(6, 50));
  cmd_gen->add_option("--output", gen.output, "output file (default stdout)");
  cmd_gen->add_flag("--exact", gen.exact, "append exact-form columns");

  std::string disc_input, disc_output;
  GenerateConfig disc_gen;
  auto* cmd_disc = app.add_subcommand("discrepancy", "discrepancy report as JSON");
  cmd_disc->add_option("--input", disc_input, "CSV of points, one per row");
  cmd_disc->add_option("--family", disc_gen.family, "generate in-process instead of --input");
  cmd_disc->add_option("--n", disc_gen.n);
  cmd_disc->add_option("--base", disc_gen.base);
  cmd_disc->add_option("--bases", disc_gen.bases);
  cmd_disc->add_option("--thetas", disc_gen.thetas);
  cmd_disc->add_option("--L", disc_gen.L);
  cmd_disc->add_option("--S", disc_gen.S);
  cmd_disc->add_option("--system", disc_gen.systems);
  cmd_disc->add_option("--output", disc_output);

  std::string cb_integrand = "sin-sum", cb_sense = "max", cb_sampler = "exact";
  std::string cb_support_csv, cb_output;
  int cb_level = 5;
  copula::FtdParams ftd_params;
  std::string ftd_times = "0,1,2";
  auto add_ftd_flags = [&](CLI::App* cmd) {
    cmd->add_option("--lambda1", ftd_params.lambda1);
    cmd->add_option("--lambda2", ftd_params.lambda2);
    cmd->add_option("--R1", ftd_params.R1);
    cmd->add_option("--R2", ftd_params.R2);
    cmd->add_option("--T", ftd_params.T);
    cmd->add_option("--r", ftd_params.r);
    cmd->add_option("--payment-times", ftd_times, "comma-separated, first must be 0");
  };
  auto* cmd_cb = app.add_subcommand("copula-bound", "sharp integral bounds over copulas");
  cmd_cb->add_option("--integrand", cb_integrand, "sin-sum|product|ftd");
  cmd_cb->add_option("--sense", cb_sense, "min|max")->check(CLI::IsMember({"min", "max"}));
  cmd_cb->add_option("--level", cb_level, "dyadic level n (grid 2^n)")->check(CLI::Range(1, 12));
  cmd_cb->add_option("--sampler", cb_sampler, "exact|grid:g");
  cmd_cb->add_option("--support-csv", cb_support_csv, "write UB shuffle support segments");
  cmd_cb->add_option("--output", cb_output);
  add_ftd_flags(cmd_cb);

  std::string ftd_sense = "both", ftd_sampler = "grid:8", ftd_output;
  int ftd_level = 10;
  auto* cmd_ftd = app.add_subcommand("ftd", "first-to-default spread bounds");
  cmd_ftd->add_option("--level", ftd_level)->check(CLI::Range(1, 12));
  cmd_ftd->add_option("--sampler", ftd_sampler);
  cmd_ftd->add_option("--sense", ftd_sense, "min|max|both");
  cmd_ftd->add_option("--output", ftd_output);
  add_ftd_flags(cmd_ftd);

  uint64_t verify_n = 10000;
  auto* cmd_verify = app.add_subcommand("verify", "run the orbit and conjugacy identities");
  cmd_verify->add_option("--n", verify_n);

  try {
    app.parse(argc, argv);

    if (*cmd_gen) {
      std::string warning;
      auto stream = build_stream(gen, &warning);
      if (!warning.empty())
        std::cerr << json{{"warning", warning}}.dump() << "\n";
      if (gen.output.empty()) {
        write_points_csv(std::cout, *stream, gen.n, gen.precision, gen.exact);
      } else {
        std::ofstream os(gen.output);
        if (!os) throw std::runtime_error("cannot open output file: " + gen.output);
        write_points_csv(os, *stream, gen.n, gen.precision, gen.exact);
      }
      return 0;
    }

    if (*cmd_disc) {
      std::vector<std::vector<double>> pts;
      if (!disc_input.empty()) {
        pts = read_points_csv(disc_input);
      } else {
        if (disc_gen.family.empty() || disc_gen.n == 0)
          throw CLI::ValidationError("discrepancy", "need --input or --family with --n");
        auto stream = build_stream(disc_gen, nullptr);
        for (uint64_t i = 0; i < disc_gen.n; ++i) pts.push_back(stream->next().x);
      }
      discrepancy::DiscrepancyReport rep;
      if (pts[0].size() == 1) {
        std::vector<double> flat;
        for (auto& p : pts) flat.push_back(p[0]);
        rep = discrepancy::discrepancy_1d(std::move(flat));
      } else {
        rep = discrepancy::star_discrepancy_multi(pts);
      }
      json out{{"N", rep.N},
               {"dn", std::isnan(rep.dn) ? json(nullptr) : json(rep.dn)},
               {"dn_star", rep.dn_star},
               {"argmax", {rep.argmax_a, rep.argmax_b}},
               {"method", rep.method}};
      if (disc_output.empty()) {
        std::cout << out.dump() << "\n";
      } else {
        std::ofstream os(disc_output);
        os << out.dump() << "\n";
      }
      return 0;
    }

    if (*cmd_cb) {
      ftd_params.payment_times = parse_double_list(ftd_times);
      if (cb_integrand == "ftd") ftd_params.validate();
      if (cb_integrand == "ftd" && cb_sampler == "exact") cb_sampler = "grid:8";
      auto cells = pick_sampler(cb_integrand, cb_sampler, ftd_params);
      auto t0 = std::chrono::steady_clock::now();
      auto res = copula::sandwich_bounds(
          cells, cb_level, cb_sense == "max" ? copula::Sense::max : copula::Sense::min);
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      if (!cb_support_csv.empty()) write_support_csv(cb_support_csv, res.ub_shuffle);
      json out{{"n", cb_level},
               {"lb", res.lb},
               {"ub", res.ub},
               {"sigma", cycles_of(res.ub_shuffle.sigma)},
               {"runtime_ms", ms}};
      if (cb_output.empty()) {
        std::cout << out.dump() << "\n";
      } else {
        std::ofstream os(cb_output);
        os << out.dump() << "\n";
      }
      return 0;
    }

    if (*cmd_ftd) {
      ftd_params.payment_times = parse_double_list(ftd_times);
      ftd_params.validate();
      auto cells = pick_sampler("ftd", ftd_sampler, ftd_params);
      auto t0 = std::chrono::steady_clock::now();
      json out{{"n", ftd_level}};
      if (ftd_sense == "max" || ftd_sense == "both") {
        auto r = copula::sandwich_bounds(cells, ftd_level, copula::Sense::max);
        out["max"] = {{"lb", r.lb}, {"ub", r.ub}};
      }
      if (ftd_sense == "min" || ftd_sense == "both") {
        auto r = copula::sandwich_bounds(cells, ftd_level, copula::Sense::min);
        out["min"] = {{"lb", r.lb}, {"ub", r.ub}};
      }
      out["runtime_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
      if (ftd_output.empty()) {
        std::cout << out.dump() << "\n";
      } else {
        std::ofstream os(ftd_output);
        os << out.dump() << "\n";
      }
      return 0;
    }

    if (*cmd_verify) return run_verify(verify_n, std::cout);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
