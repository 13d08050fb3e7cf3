// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "walshfejer/experiments.hpp"
#include "walshfejer/hardy.hpp"
#include "walshfejer/walsh.hpp"

using namespace walshfejer;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void require_checks(const ExperimentReport& r, const std::vector<std::string>& names) {
    for (const auto& name : names) {
      bool found = false;
      for (const auto& c : r.checks) {
        if (c.name != name) continue;
        found = true;
        if (!c.pass) fail(r.id + "." + c.name + ": " + c.detail);
      }
      if (!found) fail(r.id + " has no check " + name);
    }
  }
};

Outcome identities() {
  Outcome o;
  for (Index n = 1; n <= 1024; ++n)
    if (!kernel_decomposition_residual(n).is_zero()) o.fail("kernel decomposition fails at n = " + std::to_string(n));
  for (int m = 1; m <= 10; ++m)
    for (Index j = 1; j < (Index{1} << m); ++j)
      if (!shift_identity_residual(j, m).is_zero())
        o.fail("shift identity fails at m = " + std::to_string(m) + ", j = " + std::to_string(j));
  for (int n = 0; n <= 12; ++n) {
    const int M = n + 1;
    if (!(fejer_closed_form(n, M) == fejer_kernel(Index{1} << n, M)))
      o.fail("closed form of K_{2^n} fails at n = " + std::to_string(n));
    auto d = oracle::dirichlet(Index{1} << n, M);
    for (Index b = 0; b < d.size(); ++b)
      if (d[b] != dirichlet_power_at(n, b)) o.fail("D_{2^n} closed form fails at n = " + std::to_string(n));
  }
  if (o.pass) o.detail = "decomposition n<=1024, shift identity m<=10, closed forms n<=12";
  return o;
}

Outcome kernel_bounds(const std::vector<ExperimentReport>& scans) {
  Outcome o;
  for (const auto& r : scans) {
    if (r.id == "kernels_fejer_l1") o.require_checks(r, {"k1_norm", "sup_below_3"});
    if (r.id == "kernels_dirichlet_sandwich") o.require_checks(r, {"d3_norm", "sandwich"});
  }
  if (o.pass) o.detail = "V(n)/8 <= ||D_n||_1 <= V(n) for n<=2^12; sup ||K_n||_1 <= 3 for n<=2^14";
  return o;
}

Outcome lemma3(const std::vector<ExperimentReport>& scans) {
  Outcome o;
  for (const auto& r : scans) {
    if (r.id == "kernels_lemma3") o.require_checks(r, {"lower_bound"});
    if (r.id == "kernels_lemma3_chain") o.require_checks(r, {"proof_chain"});
  }
  if (o.pass) o.detail = "lower bound and proof chain for every n<=2048";
  return o;
}

Outcome theorem2() {
  Outcome o;
  for (int m = 1; m <= 10; ++m)
    if (sigma_identity_16b_max_residual(m) != 0) o.fail("sigma identity fails at m = " + std::to_string(m));
  for (int m = 0; m <= 12; ++m) {
    auto q = hp_quasinorm(build_theorem2_martingale(m, m + 1), Rational(1, 2));
    if (!q.exact || *q.exact != 1) o.fail("H_1/2 norm of F_" + std::to_string(m) + " is not 1");
  }
  ExperimentReport r = run_theorem2({4, 10, NumericMode::exact});
  o.require_checks(r, {"hp_norm_one", "sigma_identity", "chain_lower_bound", "strictly_increasing", "growth_ratio"});
  if (o.pass) o.detail = "identity m<=10, ||F_m||_H1/2 = 1 for m<=12, B_m increasing with B_10/B_4 >= 1.5";
  return o;
}

Outcome theorem1b() {
  Outcome o;
  Theorem1bOptions opt;
  ExperimentReport r = run_theorem1b(opt);
  o.require_checks(r, {"positive", "strict_growth", "pointwise_lower_bound", "iv2_identity"});
  if (o.pass) {
    o.detail = "block sums:";
    for (const auto& row : r.rows) o.detail += " " + row[4];
  }
  return o;
}

Outcome theorem1a() {
  Outcome o;
  std::string worst;
  Real worst_inc = 0;
  for (const Rational& p : {Rational(1, 4), Rational(1, 2)}) {
    for (int depth = 2; depth <= 6; ++depth) {
      Theorem1aOptions opt;
      opt.p = p;
      opt.n_max = 4096;
      opt.atom_depth = depth;
      PAtom atom = haar_atom(depth, p);
      ExperimentReport r = run_theorem1a(DyadicMartingale(atom.fn), opt);
      o.require_checks(r, {"finite", "plateau", "sigma_vanishing"});
      for (const auto& [k, v] : r.summary)
        if (k == "last_quarter_increase_lp" && std::stold(v) > worst_inc) {
          worst_inc = std::stold(v);
          worst = "p=" + to_fraction_string(p) + " depth " + std::to_string(depth);
        }
    }
  }
  const std::string summary = "largest last-quarter increase " + format_real(100 * worst_inc) + "% (" + worst + ")";
  o.detail = o.pass ? summary : o.detail + "; " + summary;
  return o;
}

Outcome transforms() {
  Outcome o;
  std::mt19937_64 rng(20240607);
  for (int M = 0; M <= 8; ++M) {
    StepFunction f = oracle::random_function(rng, M);
    WalshSpectrum s = fwht(f);
    for (Index k = 0; k < f.size(); ++k)
      if (s[k] != oracle::coefficient(f, k)) o.fail("FWHT differs from the naive transform at M = " + std::to_string(M));
  }
  for (int i = 0; i < 100; ++i) {
    const int M = i % 11;
    StepFunction f = oracle::random_function(rng, M);
    WalshSpectrum s = fwht(f);
    Rational energy = 0;
    for (Index k = 0; k < s.size(); ++k) energy += s[k] * s[k];
    if (energy != integrate(f * f)) o.fail("Parseval fails for sample " + std::to_string(i));
  }
  // sigma_n f from partial sums against direct convolution with n K_n, in integers.
  const int M = 8;
  const Index cells = Index{1} << M;
  StepFunction f = oracle::random_function(rng, M);
  const std::int64_t scale = 60;  // denominators are at most 6
  std::vector<std::int64_t> fi(cells);
  for (Index b = 0; b < cells; ++b) fi[b] = floor_to_int(f[b] * scale);
  std::vector<std::int64_t> nk(cells, 0), dk(cells, 0);
  for (Index n = 1; n <= cells; ++n) {
    for (Index b = 0; b < cells; ++b) {
      dk[b] += walsh_sign(n - 1, b);
      nk[b] += dk[b];
    }
    StepFunction sigma = fejer_mean(f, n);
    for (Index x = 0; x < cells; ++x) {
      std::int64_t acc = 0;
      for (Index t = 0; t < cells; ++t) acc += fi[x ^ t] * nk[t];
      const Rational expected = Rational(static_cast<long>(acc)) / Rational(scale * static_cast<std::int64_t>(n)) *
                                pow2(-M);
      if (sigma[x] != expected) {
        o.fail("sigma_n differs from the kernel convolution at n = " + std::to_string(n));
        break;
      }
    }
  }
  if (o.pass) o.detail = "FWHT M<=8, Parseval on 100 samples, sigma_n = f * K_n for n<=256 at M=8";
  return o;
}

Outcome fine() {
  Outcome o;
  std::uint64_t sum = 0;
  Index n = 0;
  for (int m = 0; m <= 20; ++m) {
    for (; n < (Index{1} << m); ++n) {
      // Count sign changes along the binary digits of n with a leading zero appended.
      int changes = 0, prev = 0;
      for (int i = 0; i <= 63; ++i) {
        const int bit = static_cast<int>((n >> i) & 1);
        if (i > 0 && bit != prev) ++changes;
        prev = bit;
      }
      if ((n & 1) != 0) ++changes;  // transition from the implicit 0 below bit 0
      sum += static_cast<std::uint64_t>(changes);
    }
    if (m >= 1 && sum != static_cast<std::uint64_t>(m + 1) * (Index{1} << (m - 1)))
      o.fail("closed form fails at m = " + std::to_string(m));
  }
  ExperimentReport r = run_fine_average(Index{1} << 20);
  o.require_checks(r, {"closed_form", "stabilization"});
  if (o.pass)
    for (const auto& c : r.checks)
      if (c.name == "stabilization") o.detail = "closed form m<=20; " + c.detail;
  return o;
}

}  // namespace

int main() {
  std::vector<ExperimentReport> scans;
  try {
    scans = run_kernel_scans(KernelScanOptions{});
  } catch (const std::exception& e) {
    std::printf("kernel scans threw: %s\n", e.what());
  }

  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 kernel identities", identities},
      {"2 kernel norm bounds", [&] { return kernel_bounds(scans); }},
      {"3 block lower bound", [&] { return lemma3(scans); }},
      {"4 H_1/2 divergence family", theorem2},
      {"5 weighted divergence construction", theorem1b},
      {"6 atom plateau", theorem1a},
      {"7 transform consistency", transforms},
      {"8 Fine average", fine},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
