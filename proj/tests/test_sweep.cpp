#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sigma_stream.hpp"
#include "walshfejer/experiments.hpp"
#include "walshfejer/sweep.hpp"

using namespace walshfejer;

TEST_CASE("integer sweep reproduces n sigma_n and S_n") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> coef(-9, 9);
  const int R = 5;
  std::vector<std::int64_t> c(32);
  std::vector<Rational> cq(32);
  for (int k = 0; k < 32; ++k) {
    c[k] = coef(rng);
    cq[k] = c[k];
  }
  StepFunction f = synthesize(R, cq);
  FejerSweep<std::int64_t> sweep(R, c);
  for (Index n = 1; n <= 80; ++n) {
    sweep.advance_to(n);
    StepFunction T = StepFunction::from_integers(R, sweep.cesaro_sums());
    REQUIRE(T == fejer_mean(f, n) * Rational(static_cast<unsigned long>(n)));
    REQUIRE(StepFunction::from_integers(R, sweep.partial_sums()) == partial_sum(f, n));
  }
}

TEST_CASE("sweep jumps and look-ahead agree with stepping") {
  const int R = 6;
  std::vector<std::int64_t> c(64);
  for (int k = 0; k < 64; ++k) c[k] = (k * 37 % 11) - 5;
  FejerSweep<std::int64_t> stepper(R, c);
  for (Index target : {Index{5}, Index{8}, Index{13}, Index{64}, Index{100}}) {
    FejerSweep<std::int64_t> jumper(R, c);
    jumper.advance_to(target);
    stepper.advance_to(target);
    CHECK(std::equal(jumper.cesaro_sums().begin(), jumper.cesaro_sums().end(), stepper.cesaro_sums().begin()));
  }
  FejerSweep<std::int64_t> base(R, c);
  base.advance_to(16);
  for (Index d = 0; d <= 20; ++d) {
    std::vector<std::int64_t> ahead;
    base.cesaro_sums_ahead(d, ahead);
    FejerSweep<std::int64_t> ref(R, c);
    ref.advance_to(16 + d);
    REQUIRE(std::equal(ahead.begin(), ahead.end(), ref.cesaro_sums().begin()));
  }
  CHECK(base.position() == 16);
  CHECK_THROWS(base.advance_to(3));
}

TEST_CASE("rational and floating sweeps") {
  std::mt19937_64 rng(9);
  StepFunction f = oracle::random_function(rng, 4);
  WalshSpectrum s = fwht(f);
  FejerSweep<Rational> exact(4, std::vector<Rational>(s.coeffs().begin(), s.coeffs().end()));
  std::vector<Real> reals;
  for (const auto& q : s.coeffs()) reals.push_back(to_real(q));
  FejerSweep<Real> approx(4, reals);
  for (Index n = 1; n <= 20; ++n) {
    exact.advance_to(n);
    approx.advance_to(n);
    StepFunction sigma = fejer_mean(f, n);
    for (Index b = 0; b < 16; ++b) {
      REQUIRE(exact.cesaro_sums()[b] / Rational(static_cast<unsigned long>(n)) == sigma[b]);
      REQUIRE(std::fabs(approx.cesaro_sums()[b] / n - to_real(sigma[b])) < 1e-15L);
    }
  }
}

TEST_CASE("sigma stream") {
  std::mt19937_64 rng(10);
  StepFunction f = oracle::random_function(rng, 3);
  WalshSpectrum s = fwht(f);
  auto stream = detail::SigmaStream::exact(3, s.coeffs(), 64);
  std::vector<Real> out;
  for (Index n = 1; n <= 12; ++n) {
    stream.advance_to(n - 1);
    stream.sigma_ahead(1, out);
    StepFunction sigma = fejer_mean(f, n);
    for (Index b = 0; b < 8; ++b) REQUIRE(approx_equal(out[b], to_real(sigma[b])));
  }
  std::vector<Rational> zero_spec(8, Rational(0));
  zero_spec[4] = 1;
  auto z = detail::SigmaStream::exact(3, zero_spec, 16);
  CHECK(z.sigma_ahead(4, out));
  CHECK_FALSE(z.sigma_ahead(5, out));
}

TEST_CASE("fast norm helpers match brute force") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> v(0, 40);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Real> mags(1 + trial % 64);
    for (auto& m : mags) m = v(rng) / 7.0L;
    for (Real p : {0.25L, 0.5L, 1.0L}) {
      REQUIRE(approx_equal(weak_lp_power(mags, p), oracle::weak_lp_power(mags, p)));
      Real direct = 0;
      for (Real m : mags) direct += std::pow(m, p);
      direct /= mags.size();
      REQUIRE(approx_equal(lp_power(mags, p), direct));
    }
  }
  std::vector<Real> wide = {1e-300L, 1e-200L, 1.0L, 3.0L, 1e-250L};
  CHECK(approx_equal(weak_lp_power(wide, 0.25L), oracle::weak_lp_power(wide, 0.25L)));
  CHECK(weak_lp_power(std::vector<Real>{0, 0}, 0.5L) == 0);
}
