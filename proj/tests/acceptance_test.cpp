// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one PASS/FAIL line per criterion, followed by indented
// measurements. Exit status is the number of failed criteria.
#include <fmt/format.h>
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aircomp/channel.hpp"
#include "aircomp/codec.hpp"
#include "aircomp/selection.hpp"
#include "aircomp/simulator.hpp"
#include "aircomp/transceiver.hpp"

namespace {

using namespace aircomp;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;

  void Check(bool ok, std::string note) {
    passed = passed && ok;
    notes.push_back(fmt::format("{} {}", ok ? "ok  " : "FAIL", note));
  }
  void Note(std::string note) { notes.push_back("     " + std::move(note)); }
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// 1: noiseless sum through the bit-plane code

std::int64_t CodedSum(const std::vector<std::int64_t>& values, int b) {
  std::vector<Codeword> cws;
  cws.reserve(values.size());
  for (auto v : values) cws.push_back(Encode(v, b));
  const auto r = SumBitPlanes(cws);
  const std::vector<double> rr(r.begin(), r.end());
  const double decoded = Decode(rr, 1.0);
  return static_cast<std::int64_t>(decoded) == decoded ? static_cast<std::int64_t>(decoded)
                                                       : INT64_MIN;
}

std::int64_t ExhaustiveMismatches(int b, int K, std::int64_t& cases) {
  const std::int64_t lo = -(std::int64_t{1} << (b - 1)), hi = (std::int64_t{1} << (b - 1)) - 1;
  std::vector<std::int64_t> v(K, lo);
  std::int64_t bad = 0;
  cases = 0;
  while (true) {
    ++cases;
    if (CodedSum(v, b) != std::accumulate(v.begin(), v.end(), std::int64_t{0})) ++bad;
    int i = 0;
    while (i < K && v[i] == hi) v[i++] = lo;
    if (i == K) break;
    ++v[i];
  }
  return bad;
}

Outcome ExactSum() {
  Outcome out;
  const auto start = Clock::now();
  std::int64_t cases = 0;
  const auto bad3 = ExhaustiveMismatches(3, 3, cases);
  out.Check(bad3 == 0, fmt::format("b=3 K=3 exhaustive: {} cases, {} mismatches", cases, bad3));
  const auto bad5 = ExhaustiveMismatches(5, 3, cases);
  out.Check(bad5 == 0, fmt::format("b=5 K=3 exhaustive: {} cases, {} mismatches", cases, bad5));

  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<std::int64_t> dist(-128, 127);
  std::int64_t bad = 0;
  std::vector<std::int64_t> v(20);
  for (int i = 0; i < 100000; ++i) {
    for (auto& x : v) x = dist(rng);
    if (CodedSum(v, 8) != std::accumulate(v.begin(), v.end(), std::int64_t{0})) ++bad;
  }
  out.Check(bad == 0, fmt::format("b=8 K=20 random: 100000 cases, {} mismatches", bad));
  const double t = Seconds(start);
  out.Check(t < 5.0, fmt::format("runtime {:.2f} s (limit 5 s)", t));
  return out;
}

// ---------------------------------------------------------------------------
// 2: greedy prefix vs every subset

double BestSubsetMse(const std::vector<double>& gains, double s2) {
  const int K = static_cast<int>(gains.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << K); ++mask) {
    double p = std::numeric_limits<double>::infinity();
    int n = 0;
    for (int k = 0; k < K; ++k) {
      if (mask >> k & 1u) {
        p = std::min(p, gains[k]);
        ++n;
      }
    }
    best = std::min(best, MseClosedForm(p, n, K, s2));
  }
  return best;
}

Outcome GreedyOptimality() {
  Outcome out;
  const auto start = Clock::now();
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int mismatches = 0, infeasible = 0;
  double worst = 0.0;
  const int instances = 10000;
  for (int i = 0; i < instances; ++i) {
    const int K = 2 + static_cast<int>(rng() % 11);
    ChannelParams params;
    params.devices = K;
    params.subcarriers = 8;
    params.taps = 4;
    const auto net = DrawChannel(params, rng());
    const int l = static_cast<int>(rng() % 8);
    const double varpi = (i % 2 == 0) ? 1.0 : 1.0 + 2.0 * u(rng);
    const auto budget = AllocatePower(1.0, 8, varpi);
    std::vector<double> gains(K);
    for (int k = 0; k < K; ++k) gains[k] = std::norm(net.h(k, l)) * budget[l];
    const double s2 = std::pow(10.0, -3.0 + 4.0 * u(rng));

    const auto g = GreedySelect(SelectionInstance{gains, s2});
    const double oracle = BestSubsetMse(gains, s2);
    const double rel = std::abs(g.mse - oracle) / oracle;
    worst = std::max(worst, rel);
    if (rel > 1e-12) ++mismatches;
    for (int k : g.active) {
      if (g.scaling > gains[k]) ++infeasible;
    }
  }
  const double t = Seconds(start);
  out.Check(mismatches == 0,
            fmt::format("{} instances, K in 2..12: {} objective mismatches, worst relative gap {:.3g}",
                        instances, mismatches, worst));
  out.Check(infeasible == 0, fmt::format("{} greedy sets violate the power constraint", infeasible));
  out.Check(t < 30.0, fmt::format("runtime {:.2f} s (limit 30 s)", t));
  return out;
}

// ---------------------------------------------------------------------------
// 3: LMMSE against its closed form and a grid of perturbed affine detectors

// Expected z-score of the MSE penalty of scaling lambda by 1.1, given N paired
// samples: 0.05 sqrt(N) sd(lambda Re y) / sqrt(e).
double PerturbationResolution(double p, int n, int K, double s2, int trials) {
  const double lambda = std::sqrt(p) * n / (2 * p * n + s2);
  const double var_y = p * n + s2 / 2;
  const double e = (2 * p * n * (K - n) + K * s2) / (8 * p * n + 4 * s2);
  return 0.05 * std::sqrt(static_cast<double>(trials)) * lambda * std::sqrt(var_y / e);
}

Outcome LmmseValidation() {
  Outcome out;
  const auto start = Clock::now();
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int trials = 100000;
  int z_fail = 0, beaten = 0;
  double worst_z = 0.0;
  for (int t = 0; t < 20; ++t) {
    int K, n;
    double p, s2;
    do {
      K = 1 + static_cast<int>(rng() % 30);
      n = 1 + static_cast<int>(rng() % K);
      p = std::pow(10.0, -2.0 + 3.0 * u(rng));
      s2 = std::pow(10.0, -2.0 + 3.0 * u(rng));
    } while (PerturbationResolution(p, n, K, s2, trials) < 4.0);

    std::vector<int> active(n);
    std::iota(active.begin(), active.end(), 0);
    const auto plan = MakePlan(active, p, s2, K);
    double sum = 0, sum2 = 0;
    std::vector<double> sse(9, 0.0);
    std::vector<double> sym(K);
    std::vector<Complex> w(K);
    for (int i = 0; i < trials; ++i) {
      int r = 0;
      for (int k = 0; k < K; ++k) {
        const int bit = static_cast<int>(rng() & 1u);
        r += bit;
        sym[k] = 2.0 * bit - 1.0;
        const Complex h = DrawComplexGaussian(1.0, rng);
        w[k] = h * Preprocess(h, p, k < n);
      }
      const Complex y = MacSuperpose(sym, w, s2, rng);
      const double e = LmmseDetect(y, plan) - r;
      sum += e * e;
      sum2 += e * e * e * e;
      int j = 0;
      for (double ls : {0.9, 1.0, 1.1}) {
        for (double md : {-0.5, 0.0, 0.5}) {
          const double d = ls * plan.lambda * y.real() + plan.mu + md - r;
          sse[j++] += d * d;
        }
      }
    }
    const double mse = sum / trials;
    const double se = std::sqrt((sum2 / trials - mse * mse) / trials);
    const double closed = MseClosedForm(p, n, K, s2);
    const double z = std::abs(mse - closed) / se;
    worst_z = std::max(worst_z, z);
    if (z > 3.0) ++z_fail;
    bool lost = false;
    for (int j = 0; j < 9; ++j) lost = lost || (j != 4 && sse[j] < sse[4]);
    if (lost) ++beaten;
    out.Note(fmt::format("K={:2} n={:2} p={:<9.4g} s2={:<9.4g} mse={:.5f} closed={:.5f} z={:.2f}{}",
                         K, n, p, s2, mse, closed, z, lost ? " BEATEN" : ""));
  }
  const double t = Seconds(start);
  out.Check(z_fail == 0, fmt::format("20 tuples x {} trials: {} outside 3 SE, worst |z| {:.2f}",
                                     trials, z_fail, worst_z));
  out.Check(beaten == 0, fmt::format("{} tuples where a perturbed detector had lower MSE", beaten));
  out.Check(t < 60.0, fmt::format("runtime {:.2f} s (limit 60 s)", t));
  return out;
}

// ---------------------------------------------------------------------------
// 4: bit statistics

Outcome BernoulliBits() {
  Outcome out;
  std::vector<int> ones(8, 0);
  for (int v = -128; v < 128; ++v) {
    const auto cw = Encode(v, 8);
    for (int l = 1; l <= 8; ++l) ones[l - 1] += cw.bit(l);
  }
  const bool exact = std::all_of(ones.begin(), ones.end(), [](int c) { return c == 128; });
  out.Check(exact, fmt::format("exhaustive 2^8 ones per position: {}", fmt::join(ones, " ")));

  const auto spec = QuantizerSpec::Make(8, 1.0);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> src(-1.0, 1.0);
  std::int64_t total = 0;
  const std::int64_t samples = 125000, bits = samples * 8;
  for (std::int64_t i = 0; i < samples; ++i) {
    const auto cw = Encode(Quantize(src(rng), spec), 8);
    for (int l = 1; l <= 8; ++l) total += cw.bit(l);
  }
  const double sigma = std::sqrt(bits * 0.25);
  const double dev = std::abs(total - bits * 0.5);
  out.Check(dev <= 3 * sigma, fmt::format("{} sampled bits: {} ones, |deviation| {:.0f} vs 3 sigma {:.0f}",
                                          bits, total, dev, 3 * sigma));
  return out;
}

// ---------------------------------------------------------------------------
// shared Monte Carlo helpers

// NMSE difference of two runs over the same trials, and its delta-method SE.
struct Paired {
  double diff = 0.0;
  double se = 0.0;
};

Paired PairedDiff(const PointSamples& a, const PointSamples& b) {
  const std::size_t n = a.squared_error.size();
  double ds = 0.0, ts = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ds += a.squared_error[i] - b.squared_error[i];
    ts += a.true_square[i];
  }
  const double ratio = ds / ts;
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = a.squared_error[i] - b.squared_error[i] - ratio * a.true_square[i];
    var += r * r;
  }
  var /= static_cast<double>(n - 1);
  return {ratio, std::sqrt(var / n) / (ts / n)};
}

bool SameSources(const PointSamples& a, const PointSamples& b) {
  return a.true_square == b.true_square;
}

double QuantizationFloor(int K, int b, double s_max) {
  const auto spec = QuantizerSpec::Make(b, s_max);
  const double z = spec.zeta();
  double m1 = 0.0, m2 = 0.0;
  for (int v = spec.lattice_min(); v <= spec.lattice_max(); ++v) {
    const double lo = std::max(v / z, -s_max), hi = std::min((v + 1) / z, s_max);
    if (hi <= lo) continue;
    const double ea = v / z - lo, eb = v / z - hi;
    m1 += (ea * ea - eb * eb) / 2.0;
    m2 += (ea * ea * ea - eb * eb * eb) / 3.0;
  }
  m1 /= 2 * s_max;
  m2 /= 2 * s_max;
  return (K * m2 + K * (K - 1.0) * m1 * m1) / (K * s_max * s_max / 3.0);
}

class Curves {
 public:
  const PointSamples& Get(const std::string& name, const SimConfig& config, double snr) {
    const auto key = fmt::format("{}@{}", name, snr);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, SimulatePoint(config, snr)).first;
    return it->second;
  }

 private:
  std::map<std::string, PointSamples> cache_;
};

SimConfig BaseConfig() {
  SimConfig c;  // K = 20, b = 8, L = 8, uniform source
  c.trials = 100000;
  c.seed = 1;
  return c;
}

const std::vector<double> kGrid = {-10, -5, 0, 5, 10, 15, 20};

// ---------------------------------------------------------------------------
// 5: NMSE curve shape

Outcome CurveShape(Curves& curves) {
  Outcome out;
  const auto start = Clock::now();
  auto u = BaseConfig();
  auto g = BaseConfig();
  g.power_mode = PowerMode::kGeometric;
  g.varpi = 2.0;
  auto ml = BaseConfig();
  ml.detector = Detector::kMl;
  auto analog = BaseConfig();
  analog.scheme = Scheme::kAnalog;

  for (const auto& [name, cfg] : {std::pair{"proposed-U", u}, std::pair{"proposed-G", g}}) {
    std::string row;
    bool mono = true;
    for (std::size_t i = 0; i < kGrid.size(); ++i) {
      const auto& cur = curves.Get(name, cfg, kGrid[i]);
      row += fmt::format(" {:+.0f}:{:.4g}", kGrid[i], cur.Nmse());
      if (i == 0) continue;
      const auto d = PairedDiff(cur, curves.Get(name, cfg, kGrid[i - 1]));
      if (d.diff > 3 * d.se) mono = false;
    }
    out.Check(mono, fmt::format("(a) {} non-increasing within 3 SE:{}", name, row));
  }

  const double floor = QuantizationFloor(u.devices, u.bits, u.s_max);
  const double n20 = curves.Get("proposed-U", u, 20).Nmse();
  const double n40 = curves.Get("proposed-U", u, 40).Nmse();
  const double n60 = curves.Get("proposed-U", u, 60).Nmse();
  out.Check(std::abs(n60 / floor - 1.0) <= 0.05,
            fmt::format("(b) 60 dB NMSE {:.5g} vs quantization floor {:.5g} ({:+.2f}%)", n60,
                        floor, 100 * (n60 / floor - 1.0)));
  out.Check(n20 - floor > n40 - floor && n40 - floor > n60 - floor,
            fmt::format("(b) gap above floor shrinks: 20 dB {:.3g}, 40 dB {:.3g}, 60 dB {:.3g}",
                        n20 - floor, n40 - floor, n60 - floor));
  out.Note(fmt::format("20 dB NMSE is {:.2f}x the floor", n20 / floor));

  for (double snr : {-10.0, -5.0, 0.0}) {
    const auto& a = curves.Get("proposed-G", g, snr);
    const auto& b = curves.Get("proposed-U", u, snr);
    const auto d = PairedDiff(a, b);
    out.Check(SameSources(a, b) && a.Nmse() <= b.Nmse(),
              fmt::format("(c) {:+.0f} dB: G {:.5g} <= U {:.5g} (paired diff {:.3g} +- {:.2g})", snr,
                          a.Nmse(), b.Nmse(), d.diff, d.se));
  }
  for (double snr : {-10.0, -5.0}) {
    const auto& a = curves.Get("proposed-U", u, snr);
    const auto& b = curves.Get("ml", ml, snr);
    const auto d = PairedDiff(a, b);
    out.Check(SameSources(a, b) && a.Nmse() <= b.Nmse(),
              fmt::format("(d) {:+.0f} dB: LMMSE {:.5g} <= ML {:.5g} (paired diff {:.3g} +- {:.2g})",
                          snr, a.Nmse(), b.Nmse(), d.diff, d.se));
  }

  std::string row;
  for (double snr : kGrid) {
    row += fmt::format(" {:+.0f}:{:.4g}", snr, curves.Get("analog", analog, snr).Nmse());
  }
  out.Note("analog NMSE:" + row);
  for (const auto& [name, cfg] : {std::pair{"proposed-U", u}, std::pair{"proposed-G", g}}) {
    const auto hi = PairedDiff(curves.Get("analog", analog, 20), curves.Get(name, cfg, 20));
    out.Check(hi.diff < -3 * hi.se,
              fmt::format("(e) 20 dB: analog - {} = {:.3g} (3 SE = {:.2g})", name, hi.diff, 3 * hi.se));
    const auto lo = PairedDiff(curves.Get("analog", analog, -10), curves.Get(name, cfg, -10));
    out.Check(lo.diff > 3 * lo.se,
              fmt::format("(e) -10 dB: analog - {} = {:.3g} (3 SE = {:.2g})", name, lo.diff, 3 * lo.se));
  }
  const double t = Seconds(start);
  out.Check(t < 600.0, fmt::format("runtime {:.1f} s (limit 600 s)", t));
  return out;
}

// ---------------------------------------------------------------------------
// 6: imperfect CSI at low SNR

Outcome CsiRobustness(Curves& curves) {
  Outcome out;
  auto u = BaseConfig();
  auto csi = BaseConfig();
  csi.csi_error_radius = 0.2;
  const auto& perfect = curves.Get("proposed-U", u, -5);
  const auto& noisy = curves.Get("csi-0.2", csi, -5);
  const double ratio = noisy.Nmse() / perfect.Nmse();
  out.Check(ratio <= 1.10, fmt::format("-5 dB: NMSE {:.5g} with |delta| < 0.2 vs {:.5g} perfect, ratio {:.4f} (limit 1.10)",
                                       noisy.Nmse(), perfect.Nmse(), ratio));
  return out;
}

// ---------------------------------------------------------------------------
// 7: MIMO scalarization

Outcome MimoReduction() {
  Outcome out;
  auto siso = BaseConfig();
  siso.trials = 2000;
  auto one = siso;
  one.mimo = MimoParams{1, 1};
  bool identical = true;
  for (double snr : kGrid) {
    const auto a = SimulatePoint(siso, snr);
    const auto b = SimulatePoint(one, snr);
    identical = identical && a.squared_error == b.squared_error &&
                a.active_per_subcarrier == b.active_per_subcarrier &&
                a.scaling_per_subcarrier == b.scaling_per_subcarrier;
  }
  out.Check(identical, "(1,1) per-trial errors and plans bit-identical to SISO over the grid (2000 trials/point)");

  siso.trials = 20000;
  auto two = siso;
  two.mimo = MimoParams{2, 2};
  std::string row;
  bool better = true;
  for (double snr : kGrid) {
    const auto a = SimulatePoint(two, snr);
    const auto b = SimulatePoint(siso, snr);
    better = better && SameSources(a, b) && a.Nmse() <= b.Nmse();
    row += fmt::format(" {:+.0f}:{:.3g}/{:.3g}", snr, a.Nmse(), b.Nmse());
  }
  out.Check(better, "(2,2) NMSE <= SISO at every point (2x2/SISO, 20000 paired trials):" + row);
  return out;
}

// ---------------------------------------------------------------------------
// 8: CLI determinism

int RunCli(const std::string& args) {
  const std::string cmd = std::string(AIRCOMP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome Determinism() {
  Outcome out;
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "aircomp_acceptance";
  fs::create_directories(dir);
  const auto cfg = dir / "sweep.cfg";
  std::ofstream(cfg) << "[proposed-u]\ntrials = 3000\n\n"
                        "[proposed-g]\npower_mode = geometric\nvarpi = 2\ntrials = 3000\n\n"
                        "[analog]\nscheme = analog\ntrials = 3000\ncsi_error = 0.2\n";
  const auto a = dir / "a.csv", b = dir / "b.csv";
  const int ra = RunCli("sweep " + cfg.string() + " --seed 5 --out " + a.string());
  const int rb = RunCli("sweep " + cfg.string() + " --seed 5 --out " + b.string());
  const auto ca = Slurp(a), cb = Slurp(b);
  out.Check(ra == 0 && rb == 0, fmt::format("both sweeps exit 0 (got {}, {})", ra, rb));
  out.Check(!ca.empty() && ca == cb,
            fmt::format("CSV byte-identical ({} bytes, {} lines)", ca.size(),
                        std::count(ca.begin(), ca.end(), '\n')));
  out.Check(Slurp(a.string() + ".json") == Slurp(b.string() + ".json"), "metadata byte-identical");
  fs::remove_all(dir);
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  Curves curves;
  const std::vector<Criterion> criteria = {
      {1, "exact-sum", ExactSum},
      {2, "greedy-optimality", GreedyOptimality},
      {3, "lmmse-validation", LmmseValidation},
      {4, "bernoulli-bits", BernoulliBits},
      {5, "nmse-curve-shape", [&] { return CurveShape(curves); }},
      {6, "csi-robustness", [&] { return CsiRobustness(curves); }},
      {7, "mimo-reduction", MimoReduction},
      {8, "sweep-determinism", Determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.Check(false, fmt::format("exception: {}", e.what()));
    }
    if (!o.passed) ++failed;
    std::printf("[%s] %d %-18s (%.1f s)\n", o.passed ? "PASS" : "FAIL", c.id, c.name, Seconds(start));
    for (const auto& n : o.notes) std::printf("       %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed;
}
