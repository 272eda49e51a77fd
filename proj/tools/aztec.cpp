// Command line front end: sampling, rendering, kernel tables, the boundary
// measure pipeline and the verification suite.
//
// Exit codes: 0 success, 1 check failure, 2 invalid configuration,
// 3 numerical non-convergence.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "aztec/airy.hpp"
#include "aztec/airy_kernel.hpp"
#include "aztec/boundary.hpp"
#include "aztec/config.hpp"
#include "aztec/determinantal.hpp"
#include "aztec/gas.hpp"
#include "aztec/io.hpp"
#include "aztec/kasteleyn.hpp"
#include "aztec/shuffle.hpp"
#include "aztec/verify.hpp"

namespace fs = std::filesystem;
using namespace aztec;

namespace {

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

// "[-1,1];[0.5,2]"
std::vector<std::pair<double, double>> parse_intervals(const std::string& s) {
  std::vector<std::pair<double, double>> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ';')) {
    if (tok.size() < 5 || tok.front() != '[' || tok.back() != ']')
      throw std::invalid_argument("interval syntax: [l,r];[l,r]");
    auto comma = tok.find(',');
    out.emplace_back(std::stod(tok.substr(1, comma - 1)),
                     std::stod(tok.substr(comma + 1, tok.size() - comma - 2)));
  }
  return out;
}

// rows p separated by ';', columns q by ','
std::vector<std::vector<double>> parse_weight_matrix(const std::string& s) {
  std::vector<std::vector<double>> out;
  std::stringstream ss(s);
  std::string row;
  while (std::getline(ss, row, ';')) out.push_back(parse_list(row));
  return out;
}

int cmd_sample(int n, double a, uint64_t seed, long count, const std::string& outdir,
               const std::string& algo, bool timing) {
  auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(outdir);
  AztecDiamond g(make_params(n, a));
  ShuffleWeights wts;
  if (algo == "shuffle") wts = build_cascade(n, a);
  KernelMatrix K, Kinv;
  if (algo == "exact") {
    K = build_K(g);
    Kinv = invert_K(g, K);
  }
  for (long s = 0; s < count; ++s) {
    DimerConfig cfg = (algo == "shuffle")
                          ? sample_shuffling(wts, seed, uint64_t(s))
                          : sample_exact_determinantal(g, K, Kinv, seed, uint64_t(s));
    char name[64];
    std::snprintf(name, sizeof name, "sample_%06ld.aztc", s);
    write_config_file((fs::path(outdir) / name).string(), g, cfg);
  }
  json manifest;
  manifest["command"] = "sample";
  manifest["n"] = n;
  manifest["a"] = a;
  manifest["seed"] = seed;
  manifest["count"] = count;
  manifest["algo"] = algo;
  manifest["artifact_version"] = kArtifactVersion;
  if (timing)
    manifest["wall_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::ofstream((fs::path(outdir) / "manifest.json").string()) << manifest.dump(2) << "\n";
  return 0;
}

int cmd_render(const std::string& in, const std::string& out, int scale,
               const std::string& palette_spec) {
  double a = 1.0;
  DimerConfig cfg = read_config_file(in, &a);
  AztecDiamond g(make_params(cfg.n, a));
  auto palette = palette_spec.empty()
                     ? default_palette()
                     : (palette_spec == "gray" ? grayscale_palette() : parse_palette(palette_spec));
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open " + out);
  if (out.size() >= 4 && out.substr(out.size() - 4) == ".svg")
    render_svg(f, g, cfg, palette, scale);
  else
    render_ppm(f, g, cfg, palette, scale);
  return 0;
}

int cmd_kernels_ekl(double a, int kmax, int lmax, const std::string& out) {
  EklTable tbl;
  const char* cache_dir = std::getenv("AZTEC_AIRY_CACHE");
  std::string cache_file;
  bool loaded = false;
  if (cache_dir) {
    char name[128];
    std::snprintf(name, sizeof name, "ekl_a%.17g_k%d_l%d.bin", a, kmax, lmax);
    cache_file = (fs::path(cache_dir) / name).string();
    std::ifstream cf(cache_file, std::ios::binary);
    if (cf) {
      tbl.kmax = kmax;
      tbl.lmax = lmax;
      tbl.values.resize(size_t(2 * kmax + 1) * (2 * lmax + 1));
      cf.read(reinterpret_cast<char*>(tbl.values.data()),
              std::streamsize(tbl.values.size() * sizeof(double)));
      loaded = bool(cf);
    }
  }
  if (!loaded) {
    tbl = ekl_window(a, kmax, lmax);
    if (cache_dir) {
      fs::create_directories(cache_dir);
      std::ofstream cf(cache_file, std::ios::binary);
      cf.write(reinterpret_cast<const char*>(tbl.values.data()),
               std::streamsize(tbl.values.size() * sizeof(double)));
    }
  }
  std::ofstream f(out);
  if (!f) throw std::invalid_argument("cannot open " + out);
  f << "k,l,E\n";
  for (int k = -kmax; k <= kmax; ++k)
    for (int l = -lmax; l <= lmax; ++l)
      f << k << "," << l << "," << format_full(tbl.at(k, l)) << "\n";
  return 0;
}

int cmd_kernels_gas(double a, int tmax, const std::string& out) {
  std::ofstream f(out);
  if (!f) throw std::invalid_argument("cannot open " + out);
  f << "eps1,eps2,t,re,im\n";
  for (int e1 = 0; e1 < 2; ++e1)
    for (int e2 = 0; e2 < 2; ++e2)
      for (int t = -tmax; t <= tmax; ++t) {
        cplx v = gas_correlation(a, e1, e2, t);
        f << e1 << "," << e2 << "," << t << "," << format_full(v.real()) << ","
          << format_full(v.imag()) << "\n";
      }
  return 0;
}

int cmd_airy_laplace(const std::string& lines, const std::string& intervals,
                     const std::string& weights, double tol, const std::string& out) {
  LineGrid grid;
  grid.beta = parse_list(lines);
  TestFunction psi;
  psi.intervals = parse_intervals(intervals);
  auto wr = parse_weight_matrix(weights);
  psi.weights.resize(wr.size());
  for (size_t p = 0; p < wr.size(); ++p)
    for (double w : wr[p]) psi.weights[p].push_back(cplx(w, 0.0));
  cplx det = laplace_functional_airy(grid, psi, tol);
  json j;
  j["command"] = "airy laplace";
  j["lines"] = grid.beta;
  j["intervals"] = intervals;
  j["weights"] = weights;
  j["tol"] = tol;
  j["det_re"] = det.real();
  j["det_im"] = det.imag();
  j["log_det_re"] = std::log(std::abs(det));
  j["artifact_version"] = kArtifactVersion;
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    std::ofstream(out) << j.dump(2) << "\n";
  return 0;
}

int cmd_measure(int m, double a, int M, const std::string& lines_s, const std::string& intervals_s,
                const std::string& weights_s, long samples, uint64_t seed, int threads,
                bool with_fredholm, bool with_airy, const std::string& out,
                const std::string& fmt_kind) {
  ScalingFrame frame = ScalingFrame::make(m, a, M);
  std::vector<double> betas = parse_list(lines_s);
  auto intervals = parse_intervals(intervals_s);
  auto W = parse_weight_matrix(weights_s);
  if (W.size() != intervals.size())
    throw std::invalid_argument("weights rows must match interval count");
  for (auto& row : W)
    if (row.size() != betas.size())
      throw std::invalid_argument("weights columns must match line count");
  if (frame.copy_spread_ratio() > 0.5)
    std::cerr << "warning: M (log m)^2 / m^{1/3} = " << frame.copy_spread_ratio()
              << " above 0.5; copies are widely spread at this size\n";

  McLaplace res = mc_laplace(frame, betas, intervals, W, samples, seed, threads);
  json j;
  j["command"] = "measure";
  j["m"] = m;
  j["a"] = a;
  j["M"] = M;
  j["betas"] = betas;
  j["intervals"] = intervals_s;
  j["weights"] = weights_s;
  j["samples"] = samples;
  j["seed"] = seed;
  j["estimate"] = res.mean;
  j["stderr"] = res.stderr_mean;
  j["log_estimate"] = res.log_mean;
  j["stderr_log"] = res.stderr_log;
  j["artifact_version"] = kArtifactVersion;

  if (with_fredholm) {
    AztecDiamond g(make_params(frame.n(), a));
    auto lines = build_lines(frame, betas);
    std::vector<std::vector<cplx>> Wc(W.size());
    for (size_t p = 0; p < W.size(); ++p)
      for (double w : W[p]) Wc[p].push_back(cplx(w, 0.0));
    cplx det = finite_fredholm(g, frame, lines, intervals, Wc);
    j["fredholm_re"] = det.real();
    j["fredholm_im"] = det.imag();
  }
  if (with_airy) {
    LineGrid grid;
    grid.beta = betas;
    TestFunction psi;
    psi.intervals = intervals;
    psi.weights.resize(W.size());
    for (size_t p = 0; p < W.size(); ++p)
      for (double w : W[p]) psi.weights[p].push_back(cplx(w, 0.0));
    cplx det = laplace_functional_airy(grid, psi);
    j["airy_reference"] = det.real();
    j["airy_log"] = std::log(std::abs(det));
  }

  std::ostream* os = &std::cout;
  std::ofstream fo;
  if (!out.empty()) {
    fo.open(out);
    if (!fo) throw std::invalid_argument("cannot open " + out);
    os = &fo;
  }
  if (fmt_kind == "csv") {
    *os << "key,value\n";
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it->is_number())
        *os << it.key() << "," << format_full(it->get<double>()) << "\n";
  } else {
    *os << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& suite, int threads, const std::string& out, bool verbose) {
  auto ids = suite_ids(suite);
  json manifest;
  manifest["command"] = "verify";
  manifest["suite"] = suite;
  manifest["artifact_version"] = kArtifactVersion;
  manifest["checks"] = json::array();
  bool all_pass = true;
  double wall = 0.0;
  for (const auto& id : ids) {
    CriterionResult r = run_criterion(id, threads, verbose);
    all_pass = all_pass && r.pass;
    wall += r.seconds;
    std::printf("[%s] %s  (%.1fs)  %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.seconds,
                r.details.c_str());
    std::fflush(stdout);
    json cj;
    cj["id"] = r.id;
    cj["pass"] = r.pass;
    cj["details"] = r.details;
    cj["seconds"] = r.seconds;
    manifest["checks"].push_back(cj);
  }
  manifest["all_pass"] = all_pass;
  manifest["wall_seconds"] = wall;
  if (!out.empty()) std::ofstream(out) << manifest.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-periodic Aztec diamond toolkit"};
  app.require_subcommand(1);

  int threads = 1;
  app.add_option("--threads", threads, "worker threads for sampling loops");

  // ---- sample
  auto* sc_sample = app.add_subcommand("sample", "draw random tilings");
  int n = 8;
  double a = 0.5;
  uint64_t seed = 0;
  bool seed_set = false;
  long count = 1;
  std::string outdir = "samples";
  std::string algo = "shuffle";
  bool timing = false;
  sc_sample->add_option("--n", n, "diamond order")->required();
  sc_sample->add_option("--a", a, "a-face edge weight")->required();
  sc_sample->add_option_function<uint64_t>(
      "--seed", [&](uint64_t v) { seed = v; seed_set = true; }, "RNG seed (required)");
  sc_sample->add_option("--count", count, "number of samples");
  sc_sample->add_option("--out", outdir, "output directory");
  sc_sample->add_option("--algo", algo, "shuffle | exact")
      ->check(CLI::IsMember({"shuffle", "exact"}));
  sc_sample->add_flag("--timing", timing, "include wall time in the manifest");

  // ---- render
  auto* sc_render = app.add_subcommand("render", "render a stored tiling");
  std::string rin, rout = "tiling.ppm", palette;
  int scale = 2;
  sc_render->add_option("--in", rin, "input .aztc record")->required();
  sc_render->add_option("--out", rout, "output .ppm or .svg");
  sc_render->add_option("--scale", scale, "pixels per square");
  sc_render->add_option("--palette", palette, "8 x RRGGBB, or 'gray'");

  // ---- kernels
  auto* sc_kernels = app.add_subcommand("kernels", "gas kernel tables");
  auto* sc_ekl = sc_kernels->add_subcommand("ekl", "E_{k,l} window to CSV");
  double ka = 0.5;
  int kmax = 8, lmax = 8;
  std::string kout = "ekl.csv";
  sc_ekl->add_option("--a", ka)->required();
  sc_ekl->add_option("--kmax", kmax);
  sc_ekl->add_option("--lmax", lmax);
  sc_ekl->add_option("--out", kout);
  auto* sc_gas = sc_kernels->add_subcommand("gas", "gas correlations to CSV");
  double ga = 0.5;
  int tmax = 20;
  std::string gout = "gas.csv";
  sc_gas->add_option("--a", ga)->required();
  sc_gas->add_option("--tmax", tmax);
  sc_gas->add_option("--out", gout);

  // ---- airy
  auto* sc_airy = app.add_subcommand("airy", "extended Airy functionals");
  auto* sc_laplace = sc_airy->add_subcommand("laplace", "det(I + (e^Psi - 1) A)");
  std::string albetas = "0", alintervals = "[-1,1]", alweights = "0.5", alout;
  double altol = 1e-7;
  sc_laplace->add_option("--lines", albetas);
  sc_laplace->add_option("--intervals", alintervals);
  sc_laplace->add_option("--weights", alweights);
  sc_laplace->add_option("--tol", altol);
  sc_laplace->add_option("--out", alout);

  // ---- measure
  auto* sc_measure = app.add_subcommand("measure", "boundary measure Monte Carlo");
  int mm = 16, M = 0;
  double ma = 0.5;
  std::string mbetas = "0", mintervals = "[-1,1]", mweights = "0.5", mout, mfmt = "json";
  long msamples = 1000;
  uint64_t mseed = 0;
  bool mseed_set = false, mfred = false, mairy = false;
  sc_measure->add_option("--m", mm, "size parameter (n = 4m)")->required();
  sc_measure->add_option("--a", ma)->required();
  sc_measure->add_option("--M", M, "copies per line (default ceil(log m))");
  sc_measure->add_option("--lines", mbetas, "comma list of beta values");
  sc_measure->add_option("--intervals", mintervals, "[l,r];[l,r] list");
  sc_measure->add_option("--weights", mweights, "w[p][q], rows ';', cols ','");
  sc_measure->add_option("--samples", msamples);
  sc_measure->add_option_function<uint64_t>(
      "--seed", [&](uint64_t v) { mseed = v; mseed_set = true; }, "RNG seed (required)");
  sc_measure->add_flag("--fredholm", mfred, "also evaluate the finite determinant (n <= 32)");
  sc_measure->add_flag("--airy-ref", mairy, "also evaluate the Airy reference determinant");
  sc_measure->add_option("--out", mout);
  sc_measure->add_option("--format", mfmt)->check(CLI::IsMember({"json", "csv"}));

  // ---- verify
  auto* sc_verify = app.add_subcommand("verify", "acceptance checks");
  std::string suite = "all", vout;
  bool vall = false, vverbose = false;
  sc_verify->add_option("--suite", suite, "exact | asymptotic | trend | all");
  sc_verify->add_flag("--all", vall, "same as --suite all");
  sc_verify->add_option("--out", vout, "manifest path");
  sc_verify->add_flag("--verbose", vverbose, "progress to stderr");

  // ---- config file route
  std::string config_path;
  app.add_option("--config", config_path, "single JSON document run configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sc_sample->parsed()) {
      if (!seed_set) throw std::invalid_argument("sample: --seed is required");
      return cmd_sample(n, a, seed, count, outdir, algo, timing);
    }
    if (sc_render->parsed()) return cmd_render(rin, rout, scale, palette);
    if (sc_kernels->parsed()) {
      if (sc_ekl->parsed()) return cmd_kernels_ekl(ka, kmax, lmax, kout);
      if (sc_gas->parsed()) return cmd_kernels_gas(ga, tmax, gout);
      throw std::invalid_argument("kernels: choose a subcommand (ekl | gas)");
    }
    if (sc_airy->parsed()) {
      if (sc_laplace->parsed())
        return cmd_airy_laplace(albetas, alintervals, alweights, altol, alout);
      throw std::invalid_argument("airy: choose a subcommand (laplace)");
    }
    if (sc_measure->parsed()) {
      if (!mseed_set) throw std::invalid_argument("measure: --seed is required");
      if (M <= 0) M = std::max(1, int(std::ceil(std::log(double(mm)))));
      return cmd_measure(mm, ma, M, mbetas, mintervals, mweights, msamples, mseed, threads, mfred,
                         mairy, mout, mfmt);
    }
    if (sc_verify->parsed()) {
      if (vall) suite = "all";
      return cmd_verify(suite, threads, vout, vverbose);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
