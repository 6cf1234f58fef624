// qdtool: build qd tables and run the table-based experiments from the
// command line. See README.md for the file formats.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qd/analysis.hpp"
#include "qd/apps.hpp"
#include "qd/io.hpp"
#include "qd/oracle.hpp"
#include "qd/progressive.hpp"
#include "qd/table.hpp"

#include <json.hpp>

namespace {

using qd::BigReal;
using ojson = nlohmann::ordered_json;

constexpr int kExitParse = 2;
constexpr int kExitBreakdown = 3;
constexpr int kExitNotConverged = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

// Builtin generators: exp_over_poly:a,b,c,d:N | laguerre:k | random:N:seed
std::vector<BigReal> run_generator(const std::string& spec) {
  const auto parts = split_on(spec, ':');
  if (parts.empty()) throw UsageError("empty generator spec");
  if (parts[0] == "exp_over_poly") {
    if (parts.size() != 3) throw UsageError("expected exp_over_poly:a,b,...:N");
    std::vector<BigReal> factors;
    for (const auto& t : split_on(parts[1], ',')) {
      BigReal v;
      if (!qd::exact::parse(t, v)) throw UsageError("bad factor '" + t + "'");
      factors.push_back(v);
    }
    return qd::oracle::gen_taylor_exp_rational(factors, std::stoi(parts[2]));
  }
  if (parts[0] == "laguerre") {
    if (parts.size() != 2) throw UsageError("expected laguerre:k");
    return qd::oracle::gen_laguerre(std::stoi(parts[1]));
  }
  if (parts[0] == "random") {
    if (parts.size() != 3) throw UsageError("expected random:N:seed");
    return qd::oracle::gen_random_poly(std::stoi(parts[1]),
                                       std::stoull(parts[2]));
  }
  throw UsageError("unknown generator '" + parts[0] + "'");
}

struct InputOpts {
  std::string file;
  std::string gen;

  std::vector<BigReal> load() const {
    if (file.empty() == gen.empty())
      throw UsageError("exactly one of --input or --gen is required");
    return file.empty() ? run_generator(gen) : qd::io::read_coefficients(file);
  }
};

void add_input_opts(CLI::App* cmd, InputOpts& in) {
  cmd->add_option("--input", in.file, "coefficient file, one value per line");
  cmd->add_option("--gen", in.gen,
                  "builtin generator: exp_over_poly:a,b,..:N | laguerre:k | "
                  "random:N:seed");
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error(out_path + ": cannot open for writing");
  f << text;
}

qd::QdTable build(const std::string& algo, const qd::SeriesInput& s,
                  const std::string& init) {
  if (algo == "qd") return qd::build_qd(s);
  if (algo == "compqd")
    return qd::build_compqd(s, init == "float" ? qd::InitMode::float_divrem
                                               : qd::InitMode::real_dd);
  if (algo == "ddqd") return qd::build_ddqd(s);
  throw UsageError("unknown algorithm '" + algo + "'");
}

int threads_from_env() {
  if (const char* v = std::getenv("QD_THREADS")) {
    const int n = std::atoi(v);
    if (n >= 1) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

qd::io::FloatFormat g_csv_format = qd::io::FloatFormat::shortest;

std::string format_full(double v) { return qd::io::format_double(v, g_csv_format); }

// ---------------------------------------------------------------- table

int cmd_table(const InputOpts& in, const std::string& algo,
              const std::string& init, bool hex, const std::string& out) {
  const auto coeffs = in.load();
  if (algo == "exact") {
    const auto xt = qd::oracle::exact_qd(coeffs);
    emit(out, qd::io::table_to_json(xt));
    for (int m = 1; m <= xt.rows(); ++m) {
      for (int n = 0; n < xt.q_row_size(m); ++n)
        if (!xt.q_ok[m][n]) return kExitBreakdown;
      for (int n = 0; n < xt.e_row_size(m); ++n)
        if (!xt.e_ok[m][n]) return kExitBreakdown;
    }
    return 0;
  }
  const qd::SeriesInput s = qd::oracle::split_series(coeffs);
  const qd::QdTable t = build(algo, s, init);
  emit(out, qd::io::table_to_json(
                t, hex ? qd::io::FloatFormat::hex : qd::io::FloatFormat::shortest));
  return t.breakdowns.empty() ? 0 : kExitBreakdown;
}

// ---------------------------------------------------------------- conds

std::string conds_case_csv(const std::vector<BigReal>& coeffs,
                           const std::string& algo, const std::string& init) {
  const auto xt = qd::oracle::exact_qd(coeffs);
  const auto conds = qd::analysis::condition_table(xt);
  const qd::SeriesInput s = qd::oracle::split_series(coeffs);
  const qd::QdTable t = build(algo, s, init);
  const auto factors = qd::analysis::stability_factors(t, xt);
  const auto rep = qd::analysis::bound_check(
      t, xt, conds, factors,
      init == "float" ? qd::analysis::CoeffKind::floating
                      : qd::analysis::CoeffKind::real);
  std::string csv = "m,n,kind,cond,rel_err,bound,pass\n";
  for (const auto& c : rep.cells) {
    csv += std::to_string(c.m) + ',' + std::to_string(c.n) + ',' + c.kind + ',' +
           format_full(c.cond) + ',' + format_full(c.rel_err) + ',' +
           format_full(c.bound) + ',' + (c.pass ? "1" : "0") + '\n';
  }
  return csv;
}

int cmd_conds(const InputOpts& in, const std::string& algo, const std::string& init,
              const std::string& sweep, std::uint64_t seed, const std::string& out) {
  if (sweep.empty()) {
    emit(out, conds_case_csv(in.load(), algo, init));
    return 0;
  }
  const auto parts = split_on(sweep, ':');
  if (parts.size() != 3) throw UsageError("expected --sweep N0:STEP:N1");
  const int n0 = std::stoi(parts[0]), step = std::stoi(parts[1]),
            n1 = std::stoi(parts[2]);
  if (step <= 0 || n1 < n0) throw UsageError("empty sweep range");

  std::vector<int> cases;
  for (int n = n0; n <= n1; n += step) cases.push_back(n);
  std::vector<std::string> rows(cases.size());

  const int workers = std::min<int>(threads_from_env(), cases.size());
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < cases.size();
         i = next.fetch_add(1)) {
      const int ncoeff = cases[i];
      // the sweep draws ncoeff coefficients (degree ncoeff - 1)
      const auto coeffs = qd::oracle::gen_random_poly(ncoeff - 1, seed + ncoeff);
      const auto xt = qd::oracle::exact_qd(coeffs);
      const qd::SeriesInput s = qd::oracle::split_series(coeffs);
      const auto qd_err = qd::analysis::table_errors(qd::build_qd(s), xt);
      const auto comp_err = qd::analysis::table_errors(
          qd::build_compqd(s, qd::InitMode::float_divrem), xt);
      const BigReal maxc = qd::analysis::max_cond_q_upper(xt);
      const bool in_gate = maxc < qd::exact::pow2(53);
      rows[i] = std::to_string(ncoeff) + ',' +
                qd::exact::to_decimal_string(maxc, 6) + ',' +
                (in_gate ? "1" : "0") + ',' + format_full(qd_err.max_q_rel) + ',' +
                format_full(comp_err.max_q_rel);
    }
  };
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();

  std::string csv = "ncoeff,max_cond_q,cond_lt_inv_u,qd_max_q_rel,compqd_max_q_rel\n";
  for (const auto& r : rows) csv += r + '\n';
  emit(out, csv);
  return 0;
}

// ---------------------------------------------------------------- cfrac

int cmd_cfrac(const InputOpts& in, const std::string& algo,
              const std::string& init, const std::string& out,
              const std::string& errors_csv) {
  const auto coeffs = in.load();
  if (coeffs.size() < 3) throw UsageError("need at least three coefficients");
  const std::vector<BigReal> shifted(coeffs.begin() + 1, coeffs.end());
  const auto xt = qd::oracle::exact_qd(shifted);
  const auto exact_a = qd::apps::cfrac_exact(xt, coeffs[0], coeffs[1]);

  ojson j;
  j["method"] = "cfrac";
  if (algo == "exact") {
    j["algorithm"] = "exact";
    ojson arr = ojson::array();
    for (const auto& v : exact_a) arr.push_back(v.get_str());
    j["a"] = arr;
    emit(out, j.dump(1));
    return 0;
  }

  const qd::SeriesInput s = qd::oracle::split_series(shifted);
  const qd::QdTable t = build(algo, s, init);
  const auto f = qd::apps::cfrac(t, qd::exact::to_double(coeffs[0]),
                                 qd::exact::to_double(coeffs[1]));
  j["algorithm"] = algo;
  j["a"] = f.a;
  emit(out, j.dump(1));

  if (!errors_csv.empty()) {
    std::string csv = "i,a,rel_err\n";
    const std::size_t upto = std::min(f.a.size(), exact_a.size());
    for (std::size_t i = 0; i < upto; ++i) {
      const auto r = qd::oracle::rel_error(f.a[i], exact_a[i]);
      csv += std::to_string(i) + ',' + format_full(f.a[i]) + ',' +
             (r.exact_zero ? "exact-zero" : format_full(r.value)) + '\n';
    }
    emit(errors_csv, csv);
  }
  return t.breakdowns.empty() ? 0 : kExitBreakdown;
}

// ---------------------------------------------------------------- poles

int cmd_poles(const InputOpts& in, const std::string& algo,
              const std::string& init, const std::string& method,
              std::vector<int> which, int mstart, int j, int n,
              const std::string& out) {
  const auto coeffs = in.load();
  const auto xt = qd::oracle::exact_qd(coeffs);
  const qd::SeriesInput s = qd::oracle::split_series(coeffs);
  const qd::QdTable t = build(algo, s, init);

  ojson rep;
  rep["method"] = method;
  rep["algorithm"] = algo;
  rep["degree"] = t.degree;
  ojson poles = ojson::array();

  if (method == "direct") {
    if (which.empty())
      for (int m = 1; m <= t.rows(); ++m) which.push_back(m);
    const auto got = qd::apps::poles_direct(t, which);
    const auto oracle_poles = qd::apps::poles_direct_exact(xt, which);
    for (std::size_t i = 0; i < got.poles.size(); ++i) {
      const auto& p = got.poles[i];
      ojson jp;
      jp["m"] = p.m;
      jp["n"] = p.n;
      jp["value"] = p.value;
      jp["converged"] = p.converged;
      if (i < oracle_poles.size()) {
        jp["oracle"] = qd::exact::to_double(oracle_poles[i]);
        jp["rel_err"] = qd::oracle::rel_error(p.value, oracle_poles[i]).value;
      }
      poles.push_back(jp);
    }
  } else if (method == "critical") {
    const auto got = qd::apps::poles_critical(t, mstart, j, n);
    const auto oracle_poles = qd::apps::poles_critical_exact(xt, mstart, j, n);
    rep["note"] = got.note;
    for (std::size_t i = 0; i < got.poles.size(); ++i) {
      const auto& p = got.poles[i];
      ojson jp;
      jp["m"] = p.m;
      jp["n"] = p.n;
      jp["value"] = p.value;
      jp["converged"] = p.converged;
      if (i < oracle_poles.size()) {
        jp["oracle"] = qd::exact::to_double(oracle_poles[i]);
        jp["rel_err"] = qd::oracle::rel_error(p.value, oracle_poles[i]).value;
      }
      poles.push_back(jp);
    }
  } else {
    throw UsageError("method must be direct or critical");
  }
  rep["poles"] = poles;
  emit(out, rep.dump(1));
  return t.breakdowns.empty() ? 0 : kExitBreakdown;
}

// ---------------------------------------------------------------- zeros

int cmd_zeros(const InputOpts& in, const std::string& variant, double tol,
              int max_sweeps, const std::string& out,
              const std::string& errors_csv) {
  const auto ascending = in.load();
  const qd::PolyInput poly = qd::oracle::split_poly_ascending(ascending);
  if (max_sweeps <= 0) max_sweeps = 10 * poly.degree();

  std::vector<BigReal> oracle_zeros;
  bool have_oracle = false;
  try {
    oracle_zeros = qd::oracle::reference_zeros(ascending, 120);
    have_oracle = true;
  } catch (const std::domain_error&) {
    // complex zeros: report estimates without reference errors
  }

  const auto rep = qd::apps::zeros(
      poly,
      variant == "proqd" ? qd::apps::ZeroVariant::proqd
                         : qd::apps::ZeroVariant::compproqd,
      tol, max_sweeps, have_oracle ? &oracle_zeros : nullptr);

  ojson j;
  j["variant"] = variant;
  j["tol"] = tol;
  j["converged"] = rep.run.status == qd::ProgStatus::converged;
  j["sweeps"] = rep.run.sweeps;
  j["final_max_e"] = rep.run.final_max_e;
  j["zeros"] = rep.run.zeros;
  j["zeros_by_modulus"] = rep.run.zeros_row_order;
  if (have_oracle) j["max_rel_err"] = rep.max_rel_error;
  if (!rep.run.message.empty()) j["message"] = rep.run.message;
  emit(out, j.dump(1));

  if (!errors_csv.empty() && have_oracle) {
    std::string csv = "i,zero,rel_err\n";
    for (std::size_t i = 0; i < rep.run.zeros.size(); ++i)
      csv += std::to_string(i) + ',' + format_full(rep.run.zeros[i]) + ',' +
             format_full(i < rep.rel_errors.size() ? rep.rel_errors[i] : 0.0) +
             '\n';
    emit(errors_csv, csv);
  }
  if (rep.run.status == qd::ProgStatus::breakdown) return kExitBreakdown;
  if (rep.run.status == qd::ProgStatus::sweeps_exhausted) return kExitNotConverged;
  return 0;
}

// ---------------------------------------------------------------- flops

int cmd_flops(const std::string& m_range, const std::string& out) {
  const auto parts = split_on(m_range, ':');
  if (parts.size() != 3) throw UsageError("expected --m-range M0:STEP:M1");
  const long long m0 = std::stoll(parts[0]), step = std::stoll(parts[1]),
                  m1 = std::stoll(parts[2]);
  if (step <= 0 || m1 < m0) throw UsageError("empty m range");

  const double comp = qd::analysis::flop_ratio_mean(qd::Algo::compqd, m0, step, m1);
  const double dd = qd::analysis::flop_ratio_mean(qd::Algo::ddqd, m0, step, m1);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "m_range,compqd_over_qd,ddqd_over_qd,compqd_over_ddqd_pct\n"
                "%s,%.2f,%.2f,%.2f\n",
                m_range.c_str(), comp, dd, 100.0 * comp / dd);
  emit(out, buf);
  return 0;
}

// ---------------------------------------------------------------- gen / bench

int cmd_gen(const std::string& spec, const std::string& out) {
  const auto coeffs = run_generator(spec);
  if (out.empty()) {
    std::string text;
    for (const auto& c : coeffs) text += c.get_str() + '\n';
    emit("", text);
  } else {
    qd::io::write_coefficients(out, coeffs);
  }
  return 0;
}

int cmd_bench(int degree, std::uint64_t seed, int repeat) {
  const auto coeffs = qd::oracle::gen_random_poly(degree, seed);
  const qd::SeriesInput s = qd::oracle::split_series(coeffs);
  auto time_it = [&](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < repeat; ++r) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::micro>(t1 - t0).count() / repeat;
  };
  const double t_qd = time_it([&] { qd::build_qd(s); });
  const double t_comp = time_it([&] { qd::build_compqd(s); });
  const double t_dd = time_it([&] { qd::build_ddqd(s); });
  std::printf("degree %d, %d repeats\n", degree, repeat);
  std::printf("qd     %12.1f us\n", t_qd);
  std::printf("compqd %12.1f us  (%.2fx qd)\n", t_comp, t_comp / t_qd);
  std::printf("ddqd   %12.1f us  (%.2fx qd)\n", t_dd, t_dd / t_qd);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quotient-difference tables, compensated variants, and the "
               "derived experiments"};
  app.require_subcommand(1);

  InputOpts in;
  std::string algo = "compqd", init = "real", out, errors_csv;
  bool hex = false;

  auto* table = app.add_subcommand("table", "build a table and emit JSON");
  add_input_opts(table, in);
  table->add_option("--algo", algo, "qd|compqd|ddqd|exact");
  table->add_option("--init", init, "compqd q1 initialization: real|float");
  table->add_flag("--hex", hex, "bit-exact hex-float serialization");
  table->add_option("-o,--output", out, "output path (default stdout)");

  std::string sweep;
  std::uint64_t seed = 1;
  auto* conds = app.add_subcommand("conds", "condition numbers, errors, bounds");
  add_input_opts(conds, in);
  conds->add_option("--algo", algo, "qd|compqd");
  conds->add_option("--init", init, "real|float");
  conds->add_option("--sweep", sweep, "random sweep N0:STEP:N1 (coefficient counts)");
  conds->add_option("--seed", seed, "random sweep seed");
  conds->add_flag("--hex", hex, "bit-exact hex-float CSV values");
  conds->add_option("-o,--output", out, "output path");

  auto* cfrac = app.add_subcommand("cfrac", "regular C-fraction coefficients");
  add_input_opts(cfrac, in);
  cfrac->add_option("--algo", algo, "qd|compqd|ddqd|exact");
  cfrac->add_option("--init", init, "real|float");
  cfrac->add_option("--errors-csv", errors_csv, "per-coefficient errors vs oracle");
  cfrac->add_flag("--hex", hex, "bit-exact hex-float CSV values");
  cfrac->add_option("-o,--output", out, "output path");

  std::string method = "direct";
  std::vector<int> which;
  int mstart = 1, jcols = 3, nsuper = -1;
  auto* poles = app.add_subcommand("poles", "pole estimates from the table");
  add_input_opts(poles, in);
  poles->add_option("--algo", algo, "qd|compqd|ddqd");
  poles->add_option("--init", init, "real|float");
  poles->add_option("--method", method, "direct|critical");
  poles->add_option("--m", which, "columns for the direct method");
  poles->add_option("--mstart", mstart, "critical method: first critical index");
  poles->add_option("--j", jcols, "critical method: number of poles");
  poles->add_option("--n", nsuper, "critical method: superscript (default N-2(m+j)-1)");
  poles->add_option("-o,--output", out, "output path");

  std::string variant = "compproqd";
  double tol = 1e-16;
  int max_sweeps = 0;
  auto* zeros = app.add_subcommand("zeros", "polynomial zeros, progressive scheme");
  add_input_opts(zeros, in);
  zeros->add_option("--variant", variant, "proqd|compproqd");
  zeros->add_option("--tol", tol, "stopping tolerance on max |e|");
  zeros->add_option("--max-sweeps", max_sweeps, "sweep cap (default 10*degree)");
  zeros->add_option("--errors-csv", errors_csv, "per-zero errors vs oracle");
  zeros->add_flag("--hex", hex, "bit-exact hex-float CSV values");
  zeros->add_option("-o,--output", out, "output path");

  std::string m_range;
  auto* flops = app.add_subcommand("flops", "theoretical complexity ratios");
  flops->add_option("--m-range", m_range, "M0:STEP:M1")->required();
  flops->add_option("-o,--output", out, "output path");

  std::string gen_spec;
  auto* gen = app.add_subcommand("gen", "write generator output as a coefficient file");
  gen->add_option("--gen", gen_spec, "generator spec")->required();
  gen->add_option("-o,--output", out, "output path");

  int bench_degree = 500, bench_repeat = 5;
  auto* bench = app.add_subcommand("bench", "wall-clock comparison (informational)");
  bench->add_option("--degree", bench_degree, "series degree");
  bench->add_option("--seed", seed, "coefficient seed");
  bench->add_option("--repeat", bench_repeat, "repetitions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  if (hex) g_csv_format = qd::io::FloatFormat::hex;

  try {
    if (table->parsed()) return cmd_table(in, algo, init, hex, out);
    if (conds->parsed()) return cmd_conds(in, algo, init, sweep, seed, out);
    if (cfrac->parsed()) return cmd_cfrac(in, algo, init, out, errors_csv);
    if (poles->parsed())
      return cmd_poles(in, algo, init, method, which, mstart, jcols, nsuper, out);
    if (zeros->parsed()) return cmd_zeros(in, variant, tol, max_sweeps, out, errors_csv);
    if (flops->parsed()) return cmd_flops(m_range, out);
    if (gen->parsed()) return cmd_gen(gen_spec, out);
    if (bench->parsed()) return cmd_bench(bench_degree, seed, bench_repeat);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
  return 0;
}
