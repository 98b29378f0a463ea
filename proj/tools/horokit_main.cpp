// horokit: exact Lie-identity certificates, flow kernels, and modular-surface
// equidistribution experiments from one command-line front end.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "horokit/counting.hpp"
#include "horokit/horocycle.hpp"
#include "horokit/json_io.hpp"
#include "horokit/schedule.hpp"

using namespace horokit;

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw schema_error("cannot open output path: " + path);
    os << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw schema_error("cannot finalize output path: " + path);
}

void write_manifest(const std::string& out_path, const std::string& command, const json& cfg,
                    double wall_ms) {
  json m;
  m["command"] = command;
  m["version"] = "0.1.0";
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a(cfg.dump())));
  m["config_hash"] = hex;
  m["wall_ms"] = wall_ms;
  atomic_write(out_path + ".manifest.json", m.dump(2) + "\n");
}

QVec parse_rational_list(const std::string& s) {
  QVec out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw schema_error("empty entry in rational list: " + s);
    out.push_back(rational_from_string(item));
  }
  return out;
}

ChamberVector parse_H(const std::string& s, int n) {
  if (n == 2 && (s == "h" || s.rfind("h/", 0) == 0)) {
    Rational scale = s == "h" ? Rational(1) : Rational(1) / rational_from_string(s.substr(2));
    return ChamberVector::from_diag({scale, -scale});
  }
  QVec d = parse_rational_list(s);
  if (static_cast<int>(d.size()) != n)
    throw schema_error("H needs " + std::to_string(n) + " diagonal entries");
  return ChamberVector::from_diag(std::move(d));
}

Complex parse_complex(std::string s) {
  // forms: "a", "bi", "a+bi", "a-bi"
  if (s.empty()) throw schema_error("empty complex literal");
  try {
    if (s.back() == 'i') {
      s.pop_back();
      std::size_t pos = s.find_last_of("+-");
      if (pos == std::string::npos || pos == 0) {
        if (s.empty() || s == "+" || s == "-") s += "1";
        return {0.0, std::stod(s)};
      }
      std::string im = s.substr(pos);
      if (im == "+" || im == "-") im += "1";
      return {std::stod(s.substr(0, pos)), std::stod(im)};
    }
    return {std::stod(s), 0.0};
  } catch (const std::exception&) {
    throw schema_error("not a complex literal: '" + s + "'");
  }
}

std::vector<Complex> parse_complex_list(const std::string& s) {
  std::vector<Complex> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';'))
    if (!item.empty()) out.push_back(parse_complex(item));
  if (out.empty()) throw schema_error("empty complex list");
  return out;
}

std::vector<double> parse_number_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) {
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw schema_error("not a number: '" + item + "'");
      }
    }
  return out;
}

std::vector<double> parse_t_grid(const std::string& s) {
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    double a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::stringstream ss(s);
    if (!(ss >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step == 0)
      throw schema_error("grid must be start:stop:step");
    step = (b >= a) ? std::abs(step) : -std::abs(step);
    for (double t = a; (step > 0) ? t <= b + 1e-12 : t >= b - 1e-12; t += step) out.push_back(t);
  } else {
    out = parse_number_list(s);
  }
  if (out.empty()) throw schema_error("empty grid");
  return out;
}

// Values from --config file.json are injected ahead of the explicit flags,
// so anything typed on the command line wins.  Unknown keys are rejected.
std::vector<std::string> config_args(CLI::App* sub, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw schema_error("cannot read config file: " + path);
  json cfg;
  try {
    is >> cfg;
  } catch (const std::exception& e) {
    throw schema_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object()) throw schema_error("config must be a JSON object");
  std::vector<std::string> args;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") {
      if (value.get<std::string>() != sub->get_name())
        throw schema_error("config command does not match the subcommand");
      continue;
    }
    if (key == "config") continue;
    auto* opt = sub->get_option_no_throw("--" + key);
    if (!opt) throw schema_error("unknown config key: " + key);
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
      continue;
    }
    args.push_back("--" + key);
    if (value.is_string())
      args.push_back(value.get<std::string>());
    else
      args.push_back(value.dump());
  }
  return args;
}

json cli_config_snapshot(const CLI::App* sub) {
  json cfg;
  cfg["command"] = sub->get_name();
  for (const auto* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->get_name() == "--config") continue;
    auto results = opt->results();
    std::string name = opt->get_name().substr(2);
    if (results.empty())
      cfg[name] = opt->get_default_str();
    else if (results.size() == 1)
      cfg[name] = results[0];
    else
      cfg[name] = results.back();
  }
  return cfg;
}

struct CsvSink {
  std::string header;
  std::vector<std::string> rows;
  std::string str() const {
    std::string s = header + "\n";
    for (const auto& r : rows) s += r + "\n";
    return s;
  }
};

// ---------------------------------------------------------------------------

int cmd_lie_ident(int n, const std::string& h_str, const std::string& out,
                  const std::string& export_algebra, const std::string& parabolic_f,
                  const std::string& export_parabolic, int max_degree, const json& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  auto rs = restricted_root_system(build_split_sl(n));
  PbwContext ctx(rs, max_degree);
  ChamberVector H = parse_H(h_str, n);
  auto cert = lie_identity_certificate(ctx, H);

  if (!export_algebra.empty()) atomic_write(export_algebra, algebra_to_json(rs.alg).dump(2) + "\n");
  if (!export_parabolic.empty()) {
    std::vector<int> F;
    if (!parabolic_f.empty())
      for (const auto& q : parse_rational_list(parabolic_f))
        F.push_back(static_cast<int>(to_double(q)));
    atomic_write(export_parabolic,
                 parabolic_to_json(parabolic_from_subset(rs, F), rs).dump(2) + "\n");
  }
  atomic_write(out, certificate_to_json(cert).dump(2) + "\n");
  double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(out, "lie-ident", cfg, ms);
  std::printf("lie-ident: n=%d W_H=%d wall-set size=%zu verified=%s -> %s\n", n, cert.W_H,
              cert.wall_set.size(), cert.verified ? "true" : "false", out.c_str());
  return 0;
}

int cmd_verify(const std::string& cert_path) {
  std::ifstream is(cert_path);
  if (!is) throw schema_error("cannot read certificate: " + cert_path);
  json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw schema_error(std::string("certificate is not valid JSON: ") + e.what());
  }
  LieIdentityCertificate cert;
  try {
    cert = certificate_from_json(j);
  } catch (const std::exception& e) {
    std::printf("verify: malformed certificate (%s)\n", e.what());
    return 1;
  }
  PbwContext ctx(restricted_root_system(build_split_sl(cert.n)));
  auto rep = verify_certificate(ctx, cert);
  if (rep.ok) {
    std::printf("verify: certificate checks out (n=%d, W_H=%d)\n", cert.n, cert.W_H);
    return 0;
  }
  for (const auto& f : rep.failures) std::printf("verify: FAILED %s\n", f.c_str());
  return 1;
}

int cmd_kernels(const std::string& lambda_str, double beta, const std::string& alpha_str,
                const std::string& eta_str, const std::string& weights_str,
                const std::string& grid_str, const std::string& out, const std::string& json_out,
                std::size_t max_words, const json& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  auto lambda = parse_complex_list(lambda_str);
  GridSpec grid;
  if (!grid_str.empty()) {
    std::string flat = grid_str;
    std::replace(flat.begin(), flat.end(), ':', ',');
    auto ts = parse_number_list(flat);
    if (ts.size() != 3) throw schema_error("grid must be min:max:count");
    grid.t_min = grid.s_min = ts[0];
    grid.t_max = grid.s_max = ts[1];
    grid.nt = grid.ns = static_cast<int>(ts[2]);
    if (grid.nt < 2) throw schema_error("grid count must be at least 2");
  }

  CsvSink csv;
  csv.header = "kind,index,t,s,value,envelope,ratio";
  bool divergence = false;

  if (alpha_str.empty()) {
    if (!(beta > 0)) throw schema_error("kernels: --beta must be positive");
    auto spec = order_lambda(lambda, beta);
    auto ker = kernel_F(spec);
    auto repF = check_F_bound(spec, ker.F, grid, [&](double t, double s, double v, double env) {
      csv.rows.push_back("F,0," + fmt(t) + "," + fmt(s) + "," + fmt(v) + "," + fmt(env) + "," +
                         fmt(env > 0 ? v / env : 0.0));
    });
    auto repFi = check_Fi_bound(spec, ker.Fi, grid, [&](int i, double t, double v, double env) {
      csv.rows.push_back("Fi," + std::to_string(i) + "," + fmt(t) + ",," + fmt(v) + "," +
                         fmt(env) + "," + fmt(env > 0 ? v / env : 0.0));
    });
    divergence = repF.divergence_flag || repFi.divergence_flag || repF.zero_envelope_violation;
    std::printf("kernels: W=%d m1=%d m2=%d sup|F|/env=%s sup|Fi|/env=%s divergence=%s\n",
                spec.W(), spec.m1(), spec.m2(), fmt(repF.sup_ratio).c_str(),
                fmt(repFi.sup_ratio).c_str(), divergence ? "yes" : "no");
    if (!json_out.empty()) atomic_write(json_out, burger1_to_json(spec, ker).dump(2) + "\n");
  } else {
    auto schedule =
        BurgerSchedule::make(rational_from_string(alpha_str), rational_from_string(eta_str));
    std::vector<double> weights = parse_number_list(weights_str);
    auto ker = burger2_coefficients(lambda, weights, schedule, max_words);
    double supC = 0, supD = 0;
    for (std::size_t k = 0; k < ker.C.size(); ++k) {
      auto rep = check_C_bound(ker, k, grid, [&](double t, double s, double v, double env) {
        csv.rows.push_back("C," + std::to_string(k) + "," + fmt(t) + "," + fmt(s) + "," + fmt(v) +
                           "," + fmt(env) + "," + fmt(env > 0 ? v / env : 0.0));
      });
      supC = std::max(supC, rep.sup_ratio);
      divergence = divergence || rep.divergence_flag;
    }
    for (std::size_t w = 0; w < ker.D.size(); ++w) {
      auto rep = check_D_bound(ker, w, grid);
      supD = std::max(supD, rep.sup_ratio);
      divergence = divergence || rep.divergence_flag;
    }
    std::printf("kernels: case=%d k0=%d words=%zu sup|C|/env=%s sup|D|/env=%s divergence=%s\n",
                schedule.case_id, schedule.k0, ker.C.size(), fmt(supC).c_str(), fmt(supD).c_str(),
                divergence ? "yes" : "no");
    if (!json_out.empty()) atomic_write(json_out, burger2_to_json(ker).dump(2) + "\n");
  }
  atomic_write(out, csv.str());
  double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(out, "kernels", cfg, ms);
  return divergence ? 1 : 0;
}

int cmd_horocycle(bool closed, const std::string& x0_str, const std::string& t_str,
                  const std::string& psi_str, double n_factor, long long max_points,
                  const std::string& out, const json& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  auto psi_params = parse_number_list(psi_str);
  if (psi_params.size() < 2 || psi_params.size() > 3)
    throw schema_error("psi must be a,b[,amplitude]");
  EisensteinBump psi(psi_params[0], psi_params[1], psi_params.size() == 3 ? psi_params[2] : 1.0);
  HoroExperiment exp;
  exp.closed = closed;
  if (!closed) exp.x0 = parse_complex(x0_str);
  exp.t_grid = parse_t_grid(t_str);
  exp.n_factor = n_factor;
  exp.max_points = max_points;

  auto rows = horocycle_average(exp, psi);
  CsvSink csv;
  csv.header = "t,average,mean_target,error,quad_err,N";
  std::vector<std::pair<double, double>> samples;
  std::vector<double> quads;
  for (const auto& r : rows) {
    csv.rows.push_back(fmt(r.t) + "," + fmt(r.average) + "," + fmt(r.mean_target) + "," +
                       fmt(r.error) + "," + fmt(r.quad_err) + "," + std::to_string(r.N));
    samples.emplace_back(r.t, r.error);
    quads.push_back(r.quad_err);
  }
  atomic_write(out, csv.str());
  auto fit = fit_decay(samples, quads);
  if (fit.rejected)
    std::printf("horocycle: fit rejected (errors at the quadrature noise floor)\n");
  else
    std::printf("horocycle: slope_q0=%s resid_q0=%s slope_q1=%s qcoef=%s used=%d\n",
                fmt(fit.slope_q0).c_str(), fmt(fit.resid_q0).c_str(), fmt(fit.slope_q1).c_str(),
                fmt(fit.qcoef_q1).c_str(), fit.used);
  double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(out, "horocycle", cfg, ms);
  return 0;
}

int cmd_height(bool l1_mode, const std::string& x0_str, const std::string& t_str, double n_factor,
               const std::string& out, const json& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  CsvSink csv;
  if (l1_mode) {
    double coarse = height_l1_integral(48, 48);
    double fine = height_l1_integral(96, 96);
    csv.header = "panels,integral";
    csv.rows.push_back("48," + fmt(coarse));
    csv.rows.push_back("96," + fmt(fine));
    std::printf("height --l1: integral=%s refinement rel diff=%s\n", fmt(fine).c_str(),
                fmt(std::abs(fine - coarse) / fine).c_str());
  } else {
    auto rows = height_average(parse_complex(x0_str), parse_t_grid(t_str), n_factor);
    csv.header = "t,value,ratio,quad_err,N";
    for (const auto& r : rows)
      csv.rows.push_back(fmt(r.t) + "," + fmt(r.value) + "," + fmt(r.ratio) + "," +
                         fmt(r.quad_err) + "," + std::to_string(r.N));
  }
  atomic_write(out, csv.str());
  double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(out, "height", cfg, ms);
  return 0;
}

int cmd_count(int n, const std::string& h_str, int k_max, const std::string& out,
              const json& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<double> H = parse_number_list(h_str);
  if (static_cast<int>(H.size()) != n) throw schema_error("count: H has wrong length");
  if (k_max < 1) throw schema_error("count: k-max must be positive");
  CsvSink csv;
  csv.header = "k,count_entry,count_exp,e2rho,ratio_entry,ratio_exp";
  for (int k = 1; k <= k_max; ++k) {
    std::vector<double> Hk = H;
    for (auto& x : Hk) x *= k;
    auto r = unipotent_lattice_count(n, Hk);
    csv.rows.push_back(std::to_string(k) + "," + std::to_string(r.count_entry) + "," +
                       std::to_string(r.count_exp) + "," + fmt(r.e2rho) + "," +
                       fmt(r.ratio_entry) + "," + fmt(r.ratio_exp));
  }
  atomic_write(out, csv.str());
  double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(out, "count", cfg, ms);
  return 0;
}

int cmd_fit(const std::string& in_path) {
  std::ifstream is(in_path);
  if (!is) throw schema_error("cannot read samples: " + in_path);
  std::vector<std::pair<double, double>> samples;
  std::vector<double> quads;
  std::string line;
  int t_col = -1, err_col = -1, quad_col = -1;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!have_header) {
      have_header = true;
      for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
        if (cells[i] == "t") t_col = i;
        if (cells[i] == "error") err_col = i;
        if (cells[i] == "quad_err") quad_col = i;
      }
      if (t_col < 0 || err_col < 0) throw schema_error("fit: need 't' and 'error' columns");
      continue;
    }
    samples.emplace_back(std::stod(cells.at(t_col)), std::stod(cells.at(err_col)));
    quads.push_back(quad_col >= 0 ? std::stod(cells.at(quad_col)) : 0.0);
  }
  auto fit = fit_decay(samples, quads);
  json j;
  j["rejected"] = fit.rejected;
  j["used"] = fit.used;
  if (!fit.rejected) {
    j["slope_q0"] = fit.slope_q0;
    j["resid_q0"] = fit.resid_q0;
    j["slope_q1"] = fit.slope_q1;
    j["qcoef_q1"] = fit.qcoef_q1;
    j["resid_q1"] = fit.resid_q1;
  }
  std::printf("%s\n", j.dump(2).c_str());
  return fit.rejected ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "horokit: enveloping-algebra certificates, flow kernels and "
      "modular-surface experiments"};
  app.require_subcommand(1);
  // config-file values are injected before the explicit flags; the last
  // occurrence of an option wins
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::string config_path;

  auto* lie = app.add_subcommand("lie-ident", "exact Lie-identity certificate");
  std::string li_alg = "sl2", li_H = "h/2", li_out = "certificate.json";
  std::string li_export_alg, li_parab_f, li_export_parab;
  int li_maxdeg = 30;
  lie->add_option("--algebra", li_alg, "algebra name (sl2..sl6)");
  lie->add_option("--H", li_H, "Cartan element: diagonal entries, or h, h/2 for sl2");
  lie->add_option("--out", li_out, "certificate output path");
  lie->add_option("--export-algebra", li_export_alg, "also dump the structure data");
  lie->add_option("--parabolic-F", li_parab_f, "simple-root subset for --export-parabolic");
  lie->add_option("--export-parabolic", li_export_parab, "dump standard-parabolic data");
  lie->add_option("--max-degree", li_maxdeg, "pbw degree cap");
  lie->add_option("--config", config_path, "JSON config; explicit flags win");

  auto* ver = app.add_subcommand("verify", "re-check an exported certificate from scratch");
  std::string v_cert;
  ver->add_option("--cert", v_cert, "certificate path")->required();
  ver->add_option("--config", config_path, "JSON config; explicit flags win");

  auto* kerc = app.add_subcommand("kernels", "flow kernels and bound reports");
  std::string k_lambda = "0.5+1i;0.5-1i", k_alpha, k_eta = "1", k_weights, k_grid,
              k_out = "kernels.csv", k_json;
  double k_beta = 0.4;
  std::size_t k_max_words = 100000;
  kerc->add_option("--lambda", k_lambda, "characteristic values, ';'-separated");
  kerc->add_option("--beta", k_beta, "threshold for the single-kernel mode");
  kerc->add_option("--alpha", k_alpha, "rational alpha (iterated mode)");
  kerc->add_option("--eta", k_eta, "rational eta (iterated mode)");
  kerc->add_option("--weights", k_weights, "generator weights, comma-separated");
  kerc->add_option("--grid", k_grid, "bound-check grid min:max:count");
  kerc->add_option("--out", k_out, "CSV report path");
  kerc->add_option("--json", k_json, "kernel JSON dump");
  kerc->add_option("--max-words", k_max_words, "multi-index cap");
  kerc->add_option("--config", config_path, "JSON config; explicit flags win");

  auto* horo = app.add_subcommand("horocycle", "translate averages and decay fit");
  bool h_closed = false;
  std::string h_x0 = "0.2394867894+1.31234i", h_t = "-4:-12:1", h_psi = "1.2,3.0",
              h_out = "horocycle.csv";
  double h_nfac = 20.0;
  long long h_maxn = 100000000;
  horo->add_flag("--closed", h_closed, "full closed horocycle");
  horo->add_option("--x0", h_x0, "base point for a non-closed piece");
  horo->add_option("--t", h_t, "t grid start:stop:step or comma list");
  horo->add_option("--psi", h_psi, "bump a,b[,amplitude] with a > 1");
  horo->add_option("--n-factor", h_nfac, "N(t) = n-factor * e^{|t|}, minimum 20");
  horo->add_option("--max-N", h_maxn, "resource cap on N(t)");
  horo->add_option("--out", h_out, "CSV results path");
  horo->add_option("--config", config_path, "JSON config; explicit flags win");

  auto* hei = app.add_subcommand("height", "height averages along translates");
  bool l1_mode = false;
  std::string hh_x0 = "1i", hh_t = "-10:0:1", hh_out = "height.csv";
  double hh_nfac = 20.0;
  hei->add_flag("--l1", l1_mode, "integral of the height over the surface");
  hei->add_option("--x0", hh_x0, "base point");
  hei->add_option("--t", hh_t, "t grid");
  hei->add_option("--n-factor", hh_nfac, "quadrature density factor");
  hei->add_option("--out", hh_out, "CSV output path");
  hei->add_option("--config", config_path, "JSON config; explicit flags win");

  auto* cnt = app.add_subcommand("count", "unipotent lattice points in scaled boxes");
  int c_n = 3, c_kmax = 5;
  std::string c_H = "1,0,-1", c_out = "count.csv";
  cnt->add_option("--n", c_n, "2 or 3");
  cnt->add_option("--H", c_H, "diagonal entries, non-increasing");
  cnt->add_option("--k-max", c_kmax, "scales k = 1..k-max");
  cnt->add_option("--out", c_out, "CSV output path");
  cnt->add_option("--config", config_path, "JSON config; explicit flags win");

  auto* fitc = app.add_subcommand("fit", "decay fit of a results CSV");
  std::string f_in;
  fitc->add_option("--in", f_in, "CSV with t,error[,quad_err] columns")->required();
  fitc->add_option("--config", config_path, "JSON config; explicit flags win");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty()) {
      std::cerr << app.help();
      return 2;
    }
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] != "--config") continue;
      CLI::App* sub = app.get_subcommand_no_throw(args[0]);
      if (!sub) break;  // let the parser report the unknown subcommand
      auto injected = config_args(sub, args[i + 1]);
      args.insert(args.begin() + 1, injected.begin(), injected.end());
      break;
    }
    std::vector<const char*> cargv{argv[0]};
    for (const auto& a : args) cargv.push_back(a.c_str());
    app.parse(static_cast<int>(cargv.size()), cargv.data());

    if (lie->parsed()) {
      int n = 0;
      if (li_alg.rfind("sl", 0) == 0 && li_alg.size() == 3 && std::isdigit(li_alg[2]))
        n = li_alg[2] - '0';
      if (n < 2) throw schema_error("unknown algebra: " + li_alg);
      return cmd_lie_ident(n, li_H, li_out, li_export_alg, li_parab_f, li_export_parab, li_maxdeg,
                           cli_config_snapshot(lie));
    }
    if (ver->parsed()) return cmd_verify(v_cert);
    if (kerc->parsed())
      return cmd_kernels(k_lambda, k_beta, k_alpha, k_eta, k_weights, k_grid, k_out, k_json,
                         k_max_words, cli_config_snapshot(kerc));
    if (horo->parsed())
      return cmd_horocycle(h_closed, h_x0, h_t, h_psi, h_nfac, h_maxn, h_out,
                           cli_config_snapshot(horo));
    if (hei->parsed())
      return cmd_height(l1_mode, hh_x0, hh_t, hh_nfac, hh_out, cli_config_snapshot(hei));
    if (cnt->parsed()) return cmd_count(c_n, c_H, c_kmax, c_out, cli_config_snapshot(cnt));
    if (fitc->parsed()) return cmd_fit(f_in);
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const schema_error& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const argument_error& e) {
    std::cerr << "bad argument: " << e.what() << "\n";
    return 2;
  } catch (const resource_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const invariant_error& e) {
    std::cerr << "invariant failed [" << e.invariant << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
