#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "walshfejer/hardy.hpp"

using namespace walshfejer;

TEST_CASE("martingale levels and coefficients") {
  std::mt19937_64 rng(13);
  StepFunction f = oracle::random_function(rng, 5);
  DyadicMartingale F(f);
  CHECK(F.level(5) == f);
  CHECK(F.level(9) == f);
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= m; ++n) REQUIRE(conditional_expectation(F.level(m), n) == F.level(n));
  WalshSpectrum s = fwht(f);
  for (Index k = 0; k < 32; ++k) CHECK(F.coefficient(k) == s[k]);
  CHECK(F.coefficient(32) == 0);
  // F_n = S_{2^n} f.
  for (int n = 0; n <= 5; ++n) CHECK(F.level(n) == partial_sum(f, Index{1} << n));
}

TEST_CASE("maximal function") {
  CHECK(maximal_function(DyadicMartingale(StepFunction::constant(3, Rational(-2)))) ==
        StepFunction::constant(3, Rational(2)));
  for (Index k = 1; k < 16; ++k)
    CHECK(maximal_function(DyadicMartingale(walsh(k, 4))) == StepFunction::constant(4, Rational(1)));
  std::mt19937_64 rng(14);
  for (int i = 0; i < 10; ++i) {
    StepFunction f = oracle::random_function(rng, 1 + i % 5);
    REQUIRE(maximal_function(DyadicMartingale(f)) == maximal_function_by_averages(f));
  }
}

TEST_CASE("H_p quasinorm") {
  for (const Rational& p : {Rational(1, 4), Rational(1, 2), Rational(1)})
    CHECK(*hp_quasinorm(DyadicMartingale(StepFunction::constant(2, Rational(1))), p).exact == 1);
  for (int m = 0; m <= 12; ++m) {
    auto q = hp_quasinorm(build_theorem2_martingale(m, m + 1), Rational(1, 2));
    REQUIRE(q.is_exact());
    CHECK(*q.exact == 1);
  }
  PAtom a = haar_atom(3, Rational(1, 2));
  auto q = hp_quasinorm(DyadicMartingale(a.fn), Rational(1, 2));
  CHECK(q.value > 0);
  CHECK(q.value <= 1);
}

TEST_CASE("atom validation") {
  for (int N = 0; N <= 6; ++N)
    for (const Rational& p : {Rational(1, 4), Rational(1, 2), Rational(1)}) CHECK_NOTHROW(haar_atom(N, p));
  PAtom a = haar_atom(2, Rational(1, 2));
  CHECK(a.support.depth() == 2);
  CHECK(a.fn.max_abs() == 16);  // 2^{N/p}
  CHECK(integrate(a.fn) == 0);

  auto clause = [](const StepFunction& f, const DyadicInterval& I, const Rational& p) {
    try {
      validate_atom(f, I, p);
    } catch (const AtomViolation& e) {
      return e.clause();
    }
    return '-';
  };
  DyadicInterval G(0, DyadicPoint(0, 0));
  CHECK(clause(StepFunction::constant(2, Rational(1)), G, Rational(1, 2)) == 'a');
  DyadicInterval I1(1, DyadicPoint(1, 0));
  // mu(I_1)^{-1/p} = 4 for p = 1/2; put 8 and -8 on the two halves of I_1.
  StepFunction big = StepFunction::from_integers(2, std::vector<std::int64_t>{8, 0, -8, 0});
  CHECK(clause(big, I1, Rational(1, 2)) == 'b');
  StepFunction ok = StepFunction::from_integers(2, std::vector<std::int64_t>{4, 0, -4, 0});
  CHECK(clause(ok, I1, Rational(1, 2)) == '-');
  StepFunction outside = StepFunction::from_integers(2, std::vector<std::int64_t>{1, 1, -1, -1});
  CHECK(clause(outside, I1, Rational(1, 2)) == 'c');
  CHECK_THROWS_AS(validate_atom(ok, I1, Rational(3, 2)), std::invalid_argument);
}

TEST_CASE("atomic martingale") {
  PAtom a = haar_atom(2, Rational(1, 2));
  DyadicMartingale F = atomic_martingale({{Rational(1), a}}, 5);
  for (int n = 0; n <= 5; ++n) CHECK(F.level(n) == partial_sum(a.fn.refine(5), Index{1} << n));
  CHECK(atomic_martingale({}, 4).terminal().is_zero());
  // Truncation by S_{2^M} when the atom is finer than M.
  PAtom fine = haar_atom(4, Rational(1, 2));
  CHECK(atomic_martingale({{Rational(3), fine}}, 3).terminal().is_zero());

  // Two blocks of the divergence construction: spectrum height Phi^{1/2p}(2^{L+1}) on [2^L, 2^{L+1}).
  CounterexampleSpec spec;
  spec.p = Rational(1, 4);
  spec.phi = WeightFunction::parse("log2sq");
  spec.alphas = {5, (Index{1} << 4) + 5};
  std::vector<std::pair<Rational, PAtom>> terms;
  for (std::size_t k = 0; k < 2; ++k) {
    const int L = spec.orders()[k];
    Rational lambda = *spec.exact_height(k) / *exact_pow(Rational(2), Rational(L) * (1 / spec.p - 1));
    terms.emplace_back(lambda, haar_atom(L, spec.p));
  }
  DyadicMartingale G = atomic_martingale(terms, spec.resolution());
  CHECK(G.terminal() == build_counterexample_1b(spec).terminal());
  WalshSpectrum s = G.spectrum();
  for (Index j = 0; j < s.size(); ++j) {
    Rational expected = 0;
    if (j >= 4 && j < 8) expected = 81;     // (2+1)^4
    if (j >= 16 && j < 32) expected = 625;  // (4+1)^4
    REQUIRE(s[j] == expected);
  }
}

TEST_CASE("weight functions") {
  WeightFunction one = WeightFunction::parse("one");
  CHECK(one(12345) == 1);
  WeightFunction lg = WeightFunction::parse("log2sq");
  CHECK(lg(1) == 1);
  CHECK(lg(2) == 1);
  CHECK(*lg.exact_power(8, Rational(1)) == 9);
  CHECK(*lg.exact_power(8, Rational(1, 2)) == 3);
  CHECK_FALSE(lg.exact_power(5, Rational(1)).has_value());
  CHECK(approx_equal(lg(5), std::pow(std::log2(5.0L), 2)));
  WeightFunction pw = WeightFunction::parse("pow:1/2");
  CHECK(pw.name() == "pow:1/2");
  CHECK(*pw.exact_power(16, Rational(1)) == 4);
  CHECK(approx_equal(pw(2), std::sqrt(2.0L)));
  CHECK_THROWS(WeightFunction::parse("pow:-1"));
  CHECK_THROWS(WeightFunction::parse("cube"));
}

TEST_CASE("counterexample spec") {
  std::stringstream text("# comment\np=1/4\nalpha=9, 37\nphi=log2sq\n");
  CounterexampleSpec spec = CounterexampleSpec::parse(text);
  CHECK(spec.p == Rational(1, 4));
  CHECK(spec.alphas == std::vector<Index>{9, 37});
  CHECK(spec.orders() == std::vector<int>{3, 5});
  CHECK(spec.resolution() == 6);
  CHECK(*spec.exact_height(0) == 256);  // (3+1)^4
  CHECK(approx_equal(spec.lambda(0), 256.0L / std::pow(2.0L, 9)));
  CHECK(spec.summability() > 0);
  CHECK_NOTHROW(spec.validate(17));
  CHECK_THROWS(spec.validate(5));

  CounterexampleSpec d = CounterexampleSpec::default_spec();
  CHECK(d.orders() == std::vector<int>{2, 4, 8, 16});
  CHECK(d.resolution() == 17);
  for (Index a : d.alphas) CHECK(in_A02(a));
  CHECK_NOTHROW(d.validate(17));

  std::stringstream bad1("p=1/4\nalpha=3\n");
  CHECK_THROWS(CounterexampleSpec::parse(bad1).validate(17));  // |alpha| = 1
  std::stringstream bad2("p=1/4\nalpha=9,12\n");
  CHECK_THROWS(CounterexampleSpec::parse(bad2).validate(17));  // same order twice
  std::stringstream bad3("q=1\n");
  CHECK_THROWS(CounterexampleSpec::parse(bad3));
  std::stringstream bad4("alpha=1,x\n");
  CHECK_THROWS(CounterexampleSpec::parse(bad4));
}

TEST_CASE("counterexample construction") {
  CounterexampleSpec spec;
  spec.p = Rational(1, 4);
  spec.phi = WeightFunction::parse("one");
  spec.alphas = {13};
  PAtom a0 = haar_atom(3, spec.p);
  Rational lambda0 = Rational(1) / pow2(9);
  CHECK(build_counterexample_1b(spec).terminal() == a0.fn * lambda0);

  CounterexampleSpec irrational = spec;
  irrational.phi = WeightFunction::parse("pow:1/3");
  CHECK_THROWS(build_counterexample_1b(irrational));
}

TEST_CASE("theorem 2 martingale") {
  CHECK(build_theorem2_martingale(0, 1).terminal() == walsh(1, 1));
  WalshSpectrum s = build_theorem2_martingale(3, 5).spectrum();
  for (Index i = 0; i < 32; ++i) CHECK(s[i] == (i >= 8 && i < 16 ? 8 : 0));
  const int m = 3;
  StepFunction F = build_theorem2_martingale(m, m + 1).terminal();
  for (Index i = 0; i <= 20; ++i) {
    StepFunction expected(m + 1);
    if (i > 8 && i < 16) expected = (dirichlet(i, 4) - dirichlet(8, 4)) * Rational(8);
    if (i >= 16) expected = F;
    CHECK(partial_sum(F, i) == expected);
  }
  CHECK_THROWS(build_theorem2_martingale(3, 3));
}

TEST_CASE("sigma identity for the theorem 2 martingale") {
  CHECK(sigma_identity_16b_residual(2, 1).is_zero());
  for (Index n = 1; n < 32; ++n) REQUIRE(sigma_identity_16b_residual(5, n).is_zero());
  for (int m = 1; m <= 8; ++m) CHECK(sigma_identity_16b_residual(m, Index{1} << (m - 1)).is_zero());
  for (int m = 1; m <= 8; ++m) CHECK(sigma_identity_16b_max_residual(m) == 0);
  CHECK_THROWS(sigma_identity_16b_residual(3, 8));
}
