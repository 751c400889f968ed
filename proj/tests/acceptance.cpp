// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <string>

#include "fractorus/fractorus.hpp"
#include "fractorus/verify.hpp"

using namespace fractorus;
namespace v = fractorus::verify;

namespace {

int failures = 0;

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int id, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
}

std::string g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

int main() {
  const auto seed = v::kDefaultSeed;

  {
    v::SawtoothErrors e{};
    const double secs = timed([&] { e = v::sawtooth_errors(pi / 6, 1 << 16, 64); });
    report(1, e.max_error <= 1e-5 && e.zero_mode <= 1e-10 && secs <= 10.0,
           "sawtooth coefficients max error " + g(e.max_error) + " <= 1e-5, |c(0)| " +
               g(e.zero_mode) + " <= 1e-10, " + g(secs) + " s <= 10 s");
  }
  {
    double e = 0.0;
    const double secs = timed([&] { e = v::fejer_identity_error(seed, 1000); });
    report(2, e <= 1e-10 && secs <= 1.0,
           "Fejer closed form vs sum " + g(e) + " <= 1e-10 over 1000 triples, " + g(secs) +
               " s <= 1 s");
  }
  {
    const double mass = v::fejer_mass_error();
    const double excess = v::fejer_leakage_excess();
    report(3, mass <= 1e-12 && excess <= 1e-10,
           "|mass - 1| " + g(mass) + " <= 1e-12, leakage above n/(4 delta^2 (N+1)) " + g(excess) +
               " <= 1e-10");
  }
  {
    const double e1 = v::fejer_equivalence_error(1, 2048, seed);
    const double e2 = v::fejer_equivalence_error(2, 128, seed);
    report(4, e1 <= 1e-8 && e2 <= 1e-8,
           "spectral vs quadrature Fejer means n=1 " + g(e1) + ", n=2 " + g(e2) + " <= 1e-8");
  }
  {
    const double e = v::plancherel_parseval_error(seed, 20);
    report(5, e <= 1e-10, "Plancherel/Parseval relative error " + g(e) + " <= 1e-10 on 20 pairs");
  }
  {
    const double e = v::poisson_summation_error();
    report(6, e <= 1e-8, "Poisson summation |lhs - rhs| " + g(e) + " <= 1e-8 at K = 20");
  }
  {
    v::SlowDecayResult r{};
    const double secs = timed([&] { r = v::slow_decay_result(512, 1024); });
    report(7, r.domination_excess <= 0.0 && r.match_error <= r.remainder + 1e-10 && secs <= 30.0,
           "max(d_m - |coeff|) " + g(r.domination_excess) + " <= 0, match error " +
               g(r.match_error) + " within remainder " + g(r.remainder) + ", " + g(secs) +
               " s <= 30 s");
  }
  {
    const double smooth = v::gaussian_decay_weighted();
    const double rough = v::sawtooth_decay_weighted();
    report(8, smooth <= 1e-6 && rough >= 1e-3,
           "Gaussian |c|(1+|m|)^4 " + g(smooth) + " <= 1e-6, sawtooth |c|(1+|m|) " + g(rough) +
               " >= 1e-3");
  }
  {
    const int N[2] = {10, 500};
    const auto rows = v::sawtooth_jump(2048, N);
    // Deviations under the floor are rounding noise, so no decrease can be
    // resolved between them.
    const double floor = 1e-12;
    const bool close = rows[1].deviation <= 0.01;
    const bool decreasing = rows[0].deviation > floor && rows[1].deviation < rows[0].deviation;
    report(9, close && decreasing,
           "deviation at N=500 " + g(rows[1].deviation) + " <= 0.01, and below N=10 deviation " +
               g(rows[0].deviation) +
               (decreasing ? "" : " (both at rounding level, no strict decrease resolvable)"));
  }
  {
    const double frac = v::sawtooth_ae_fraction(2048, 500);
    report(10, frac <= 0.05, "fraction of points off by > 0.01: " + g(frac) + " <= 0.05");
  }
  {
    const auto s = v::residual_summary();
    const double modes = v::mode_decay_error();
    report(11, s.worst <= 1e-4 && s.min_ratio >= 3.0 && s.max_ratio <= 5.0 && modes <= 1e-12,
           "residual " + g(s.worst) + " <= 1e-4, refinement ratios " + g(s.min_ratio) + ".." +
               g(s.max_ratio) + " in [3, 5], mode decay " + g(modes) + " <= 1e-12");
  }
  {
    std::vector<v::CheckResult> results;
    const double secs = timed([&] { results = v::run(v::Options{}); });
    int passed = 0;
    for (const auto& r : results) passed += r.pass;
    const int total = static_cast<int>(results.size());
    report(12, total >= 20 && passed == total && secs <= 60.0,
           std::to_string(passed) + "/" + std::to_string(total) + " checks passed, " + g(secs) +
               " s <= 60 s");
  }
  return failures == 0 ? 0 : 1;
}
