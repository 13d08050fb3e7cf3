#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "walshfejer/walsh.hpp"

using namespace walshfejer;

namespace {

StepFunction ints(int M, std::vector<std::int64_t> v) { return StepFunction::from_integers(M, v); }

}  // namespace

TEST_CASE("rademacher and walsh functions") {
  CHECK(rademacher(0, 1) == ints(1, {1, -1}));
  CHECK(rademacher(1, 2) == ints(2, {1, 1, -1, -1}));
  CHECK(integrate(rademacher(3, 5)) == 0);
  CHECK_THROWS(rademacher(2, 2));
  CHECK(walsh(0, 3) == StepFunction::constant(3, Rational(1)));
  CHECK(walsh(3, 2) == ints(2, {1, -1, -1, 1}));
  CHECK_THROWS(walsh(4, 2));
  for (Index a = 0; a < 16; ++a)
    for (Index b = 0; b < 16; ++b) CHECK(integrate(walsh(a, 4) * walsh(b, 4)) == (a == b ? 1 : 0));
}

TEST_CASE("fwht examples") {
  WalshSpectrum s = fwht(walsh(5, 3));
  for (Index k = 0; k < 8; ++k) CHECK(s[k] == (k == 5 ? 1 : 0));
  for (int M = 1; M <= 8; ++M) {
    for (Index n : {Index{1}, Index{3}, (Index{1} << M) - 1, Index{1} << M}) {
      if (n > (Index{1} << M)) continue;
      WalshSpectrum d = fwht(dirichlet(n, M));
      for (Index k = 0; k < d.size(); ++k) REQUIRE(d[k] == (k < n ? 1 : 0));
    }
  }
}

TEST_CASE("fwht equals naive inner products") {
  std::mt19937_64 rng(1);
  for (int M = 0; M <= 6; ++M) {
    StepFunction f = oracle::random_function(rng, M);
    WalshSpectrum s = fwht(f);
    for (Index k = 0; k < f.size(); ++k) REQUIRE(s[k] == oracle::coefficient(f, k));
  }
}

TEST_CASE("fwht round trip and Parseval") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    StepFunction f = oracle::random_function(rng, i % 11);
    WalshSpectrum s = fwht(f);
    REQUIRE(inverse_fwht(s) == f);
    REQUIRE(fwht(inverse_fwht(s)).coeffs().size() == s.size());
    Rational energy = 0;
    for (const auto& c : s.coeffs()) energy += c * c;
    REQUIRE(energy == integrate(f * f));
  }
}

TEST_CASE("dirichlet kernel examples") {
  CHECK(dirichlet(1) == StepFunction::constant(0, Rational(1)));
  CHECK(dirichlet(4, 3) == ints(3, {4, 0, 0, 0, 4, 0, 0, 0}));
  CHECK(dirichlet(3, 2) == ints(2, {3, 1, 1, -1}));
  CHECK(dirichlet(7).resolution() == 3);
  CHECK_THROWS(dirichlet(5, 2));
  CHECK_THROWS(dirichlet(0, 2));
  for (Index n = 1; n <= 32; ++n) CHECK(dirichlet_values(n, 5) == oracle::dirichlet(n, 5));
  for (int k = 0; k <= 12; ++k) {
    auto d = dirichlet_values(Index{1} << k, k + 1);
    for (Index b = 0; b < d.size(); ++b) REQUIRE(d[b] == dirichlet_power_at(k, b));
  }
}

TEST_CASE("fejer kernel examples") {
  CHECK(fejer_kernel(1, 3) == StepFunction::constant(3, Rational(1)));
  CHECK(fejer_kernel(2) == StepFunction(2, {Rational(3, 2), Rational(1, 2), Rational(3, 2), Rational(1, 2)}));
  CHECK(fejer_kernel(2, 1) == StepFunction(1, {Rational(3, 2), Rational(1, 2)}));
  StepFunction k8 = fejer_kernel(8, 4);
  for (Index b = 0; b < 16; ++b) {
    const Index low = b & 7;
    Rational expected = 0;
    if (low == 0) expected = Rational(9, 2);
    if (low == 1) expected = Rational(1, 2);
    if (low == 2) expected = 1;
    if (low == 4) expected = 2;
    CHECK(k8[b] == expected);
  }
}

TEST_CASE("fejer closed form") {
  CHECK(fejer_closed_form(1, 3) == fejer_kernel(2, 3));
  StepFunction k = fejer_closed_form(3, 4);
  CHECK(k.at(DyadicPoint::unit(1, 4)) == 1);
  CHECK(k.at(DyadicPoint(4, 0b0011)) == 0);
  for (int n = 0; n <= 12; ++n) REQUIRE(fejer_closed_form(n, n + 1) == fejer_kernel(Index{1} << n, n + 1));
  CHECK_THROWS(fejer_closed_form(3, 3));
}

TEST_CASE("kernel decomposition identity") {
  for (int k = 0; k < 10; ++k) CHECK(kernel_decomposition_residual(Index{1} << k).is_zero());
  CHECK(kernel_decomposition_residual(3).is_zero());
  CHECK(scaled_fejer_values(3, 2)[0] == 6);
  for (Index n = 1; n <= 300; ++n) REQUIRE(kernel_decomposition_residual(n).is_zero());
}

TEST_CASE("shift identity") {
  CHECK(shift_identity_residual(1, 1).is_zero());
  for (int m = 1; m <= 10; ++m) CHECK(shift_identity_residual((Index{1} << m) - 1, m).is_zero());
  CHECK_THROWS(shift_identity_residual(4, 2));
  CHECK_THROWS(shift_identity_residual(0, 2));
}

TEST_CASE("partial sums and Fejer means") {
  std::mt19937_64 rng(4);
  StepFunction f = oracle::random_function(rng, 5);
  CHECK(partial_sum(f, 0).is_zero());
  CHECK(partial_sum(f, 32) == f);
  CHECK(partial_sum(f, 100) == f);
  CHECK(fejer_mean(f, 1) == StepFunction::constant(5, fwht(f)[0]));
  CHECK(fejer_mean(StepFunction::constant(5, Rational(7)), 9) == StepFunction::constant(5, Rational(7)));
  CHECK_THROWS(fejer_mean(f, 0));
  for (Index n = 1; n <= 32; ++n) {
    REQUIRE(partial_sum(f, n) == oracle::partial_sum(f, n));
    REQUIRE(partial_sum(f, n) == dyadic_convolve(f, dirichlet(n, 5)));
  }
  for (Index n : {Index{1}, Index{2}, Index{7}, Index{20}, Index{32}}) REQUIRE(fejer_mean(f, n) == oracle::fejer_mean(f, n));
}

TEST_CASE("conjugate transform") {
  std::mt19937_64 rng(6);
  StepFunction f = oracle::random_function(rng, 4);
  CHECK(conjugate_transform(f, DyadicPoint(5, 0)) == f);
  for (Index t = 0; t < 32; ++t) {
    DyadicPoint tp(5, t);
    REQUIRE(conjugate_transform(conjugate_transform(f, tp), tp) == f);
  }
  for (Index k = 0; k < 16; ++k) {
    StepFunction w = walsh(k, 4);
    StepFunction c = conjugate_transform(w, DyadicPoint(5, 0b10110));
    CHECK((c == w || c == w * Rational(-1)));
  }
  CHECK_THROWS(conjugate_transform(f, DyadicPoint(3, 0)));
}

TEST_CASE("lemma 2 ratios") {
  auto v = lemma2_ratio(17, 4, DyadicPoint::unit(2, 4));
  CHECK_FALSE(v.pair_branch);
  CHECK(v.k == 2);
  // Direct integral: int_{I_4} |K_17(x + t)| dt via convolution with the indicator of I_4.
  const int R = kernel_resolution(17);
  StepFunction conv = dyadic_convolve(fejer_kernel(17, R).abs(), indicator(DyadicInterval(4, DyadicPoint(R, 0)), R));
  CHECK(v.integral == conv.at(DyadicPoint::unit(2, R)));
  CHECK(v.ratio >= 0);
  auto pair = lemma2_ratio(40, 3, DyadicPoint(3, 0b101));
  CHECK(pair.pair_branch);
  CHECK(pair.k == 0);
  CHECK(pair.l == 2);
  CHECK_THROWS(lemma2_ratio(16, 4, DyadicPoint::unit(0, 4)));
  CHECK_THROWS(lemma2_ratio(17, 4, DyadicPoint(4, 0)));
  CHECK(lemma2_profile(17, 4).size() == 15);
}

TEST_CASE("lemma 3 examples") {
  auto rows = lemma3_check(5);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].skipped);
  CHECK(rows[1].bits == Block{2, 2});
  CHECK(rows[1].min_value == 3);
  CHECK(rows[1].bound == 1);
  CHECK(rows[1].pass);
  for (int k = 1; k <= 10; ++k) {
    auto r = lemma3_check(Index{1} << k);
    REQUIRE(r.size() == 1);
    CHECK(r[0].bound == pow2(2 * k - 4));
    CHECK(r[0].pass);
  }
  auto chain = lemma3_proof_chain(Index{0b11100}, 1);
  CHECK(chain.l == 2);
  CHECK(chain.term1 == chain.term1_expected);
  CHECK(chain.pass);
  CHECK_THROWS(lemma3_proof_chain(5, 1));
}
