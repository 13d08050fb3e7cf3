#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "sigma_stream.hpp"
#include "walshfejer/experiments.hpp"
#include "walshfejer/sweep.hpp"

namespace walshfejer {

namespace {

Rational fraction(std::int64_t num, Index den) {
  Rational q(static_cast<long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return q;
}

// Octave j holds n in [2^j, 2^{j+1}); all of its kernels live at resolution j + 1.
template <class Visit>
void for_each_kernel_sweep(Index n_max, Visit visit) {
  for (int j = 0; (Index{1} << j) <= n_max; ++j) {
    const int R = j + 1;
    FejerSweep<std::int64_t> sweep(R, std::vector<std::int64_t>(std::size_t{1} << R, 1));
    const Index last = std::min(n_max, (Index{2} << j) - 1);
    for (Index n = Index{1} << j; n <= last; ++n) {
      sweep.advance_to(n);
      visit(j, n, sweep);
    }
  }
}

std::int64_t abs_sum(std::span<const std::int64_t> v) {
  std::int64_t s = 0;
  for (auto x : v) s += std::llabs(x);
  return s;
}

ExperimentReport fejer_l1_scan(Index n_max) {
  ExperimentReport rep;
  rep.id = "kernels_fejer_l1";
  rep.mode = "exact";
  rep.add_param("n_max", std::to_string(n_max));
  rep.columns = {"octave", "n_from", "n_to", "max_norm", "max_norm_real", "argmax"};
  Rational sup = 0, k1 = 0;
  Index sup_at = 0;
  Rational octave_max = 0;
  Index octave_arg = 0;
  for_each_kernel_sweep(n_max, [&](int j, Index n, const FejerSweep<std::int64_t>& s) {
    // ||K_n||_1 = sum |n K_n| / (n 2^R); cesaro_sums() holds n K_n.
    Rational norm = fraction(abs_sum(s.cesaro_sums()), n << s.resolution());
    if (n == 1) k1 = norm;
    if (n == (Index{1} << j) || norm > octave_max) {
      octave_max = norm;
      octave_arg = n;
    }
    if (norm > sup) {
      sup = norm;
      sup_at = n;
    }
    if (n == std::min(n_max, (Index{2} << j) - 1))
      rep.rows.push_back({std::to_string(j), std::to_string(Index{1} << j), std::to_string(n),
                          to_fraction_string(octave_max), format_real(to_real(octave_max)), std::to_string(octave_arg)});
  });
  rep.add_summary("sup_norm", to_fraction_string(sup));
  rep.add_summary("sup_norm_real", format_real(to_real(sup)));
  rep.add_summary("sup_at", std::to_string(sup_at));
  rep.add_check("k1_norm", k1 == 1, "||K_1||_1 = " + to_fraction_string(k1));
  rep.add_check("sup_below_3", sup <= 3, "sup_{n<=" + std::to_string(n_max) + "} ||K_n||_1 = " + format_real(to_real(sup)));
  return rep;
}

ExperimentReport dirichlet_scan(Index n_max) {
  ExperimentReport rep;
  rep.id = "kernels_dirichlet_sandwich";
  rep.mode = "exact";
  rep.add_param("n_max", std::to_string(n_max));
  rep.columns = {"octave", "n_from", "n_to", "min_norm_over_V", "max_norm_over_V", "failures"};
  bool ok = true;
  Rational d3 = 0;
  Rational lo = 0, hi = 0;
  Index failures = 0;
  for_each_kernel_sweep(n_max, [&](int j, Index n, const FejerSweep<std::int64_t>& s) {
    const Index cells = Index{1} << s.resolution();
    Rational norm = fraction(abs_sum(s.partial_sums()), cells);  // ||D_n||_1
    if (n == 3) d3 = norm;
    const int V = variation(n);
    Rational r = norm / V;
    if (n == (Index{1} << j)) {
      lo = hi = r;
      failures = 0;
    }
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    if (8 * norm < V || norm > V) {
      ++failures;
      ok = false;
    }
    if (n == std::min(n_max, (Index{2} << j) - 1))
      rep.rows.push_back({std::to_string(j), std::to_string(Index{1} << j), std::to_string(n), to_fraction_string(lo),
                          to_fraction_string(hi), std::to_string(failures)});
  });
  rep.add_check("d3_norm", n_max < 3 || d3 == Rational(3, 2), "||D_3||_1 = " + to_fraction_string(d3));
  rep.add_check("sandwich", ok, "V(n)/8 <= ||D_n||_1 <= V(n) for all n <= " + std::to_string(n_max));
  return rep;
}

ExperimentReport lemma2_scan(int max_resolution) {
  ExperimentReport rep;
  rep.id = "kernels_lemma2";
  rep.mode = "exact";
  rep.add_param("max_resolution", std::to_string(max_resolution));
  rep.columns = {"M", "branch", "max_ratio", "max_ratio_real", "n", "k", "l"};
  Rational pair_max = 0, single_max = 0;
  for (int M = 1; M <= max_resolution; ++M) {
    Lemma2Value best_pair{}, best_single{};
    Index n_pair = 0, n_single = 0;
    for (Index n = (Index{1} << M) + 1; n <= (Index{8} << M); ++n) {
      for (const auto& v : lemma2_profile(n, M)) {
        Lemma2Value& best = v.pair_branch ? best_pair : best_single;
        Index& at = v.pair_branch ? n_pair : n_single;
        if (at == 0 || v.ratio > best.ratio) {
          best = v;
          at = n;
        }
      }
    }
    if (n_pair) {
      rep.rows.push_back({std::to_string(M), "pair", to_fraction_string(best_pair.ratio),
                          format_real(to_real(best_pair.ratio)), std::to_string(n_pair), std::to_string(best_pair.k),
                          std::to_string(best_pair.l)});
      pair_max = std::max(pair_max, best_pair.ratio);
    }
    rep.rows.push_back({std::to_string(M), "single", to_fraction_string(best_single.ratio),
                        format_real(to_real(best_single.ratio)), std::to_string(n_single),
                        std::to_string(best_single.k), ""});
    single_max = std::max(single_max, best_single.ratio);
  }
  rep.add_summary("pair_constant", format_real(to_real(pair_max)));
  rep.add_summary("single_constant", format_real(to_real(single_max)));
  return rep;
}

ExperimentReport lemma3_scan(Index n_max) {
  ExperimentReport rep;
  rep.id = "kernels_lemma3";
  rep.mode = "exact";
  rep.add_param("n_max", std::to_string(n_max));
  rep.columns = {"l", "blocks_checked", "min_ratio", "min_ratio_n", "failures"};
  struct Agg {
    Index checked = 0, failures = 0, at = 0;
    Rational min_ratio = 0;
  };
  std::vector<Agg> by_l(64);
  Index skipped = 0;
  bool ok = true;
  for (Index n = 1; n <= n_max; ++n) {
    for (const auto& row : lemma3_check(n)) {
      if (row.skipped) {
        ++skipped;
        continue;
      }
      Agg& a = by_l[row.bits.low];
      Rational r = Rational(static_cast<long>(row.min_value)) / row.bound;
      if (a.checked == 0 || r < a.min_ratio) {
        a.min_ratio = r;
        a.at = n;
      }
      ++a.checked;
      if (!row.pass) {
        ++a.failures;
        ok = false;
      }
    }
  }
  for (int l = 1; l < 64; ++l) {
    const Agg& a = by_l[l];
    if (!a.checked) continue;
    rep.rows.push_back({std::to_string(l), std::to_string(a.checked), to_fraction_string(a.min_ratio),
                        std::to_string(a.at), std::to_string(a.failures)});
  }
  rep.add_summary("skipped_blocks_l0", std::to_string(skipped));
  rep.add_check("lower_bound", ok, "min of n|K_n| over I_{l+1}(e_{l-1}+e_l) >= 2^{2l}/16 for every block with l >= 1");
  return rep;
}

ExperimentReport lemma3_chain_scan(Index n_max) {
  ExperimentReport rep;
  rep.id = "kernels_lemma3_chain";
  rep.mode = "exact";
  rep.add_param("n_max", std::to_string(n_max));
  rep.columns = {"l", "blocks_checked", "term1", "max_term2_over_bound", "max_term3_over_bound", "min_difference",
                 "failures"};
  struct Agg {
    Index checked = 0, failures = 0;
    Rational term1 = 0, t2 = 0, t3 = 0, diff = 0;
  };
  std::vector<Agg> by_l(64);
  bool ok = true;
  for (Index n = 1; n <= n_max; ++n) {
    auto blocks = block_decomposition(n);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (blocks[i].low < 2) continue;
      Lemma3Chain c = lemma3_proof_chain(n, static_cast<int>(i) + 1);
      Agg& a = by_l[c.l];
      Rational t2 = c.term2_max / c.term2_bound;
      Rational t3 = c.term3_max / c.term3_bound;
      if (a.checked == 0) {
        a.term1 = c.term1;
        a.t2 = t2;
        a.t3 = t3;
        a.diff = c.min_difference;
      } else {
        a.t2 = std::max(a.t2, t2);
        a.t3 = std::max(a.t3, t3);
        a.diff = std::min(a.diff, c.min_difference);
      }
      ++a.checked;
      if (!c.pass) {
        ++a.failures;
        ok = false;
      }
    }
  }
  for (int l = 2; l < 64; ++l) {
    const Agg& a = by_l[l];
    if (!a.checked) continue;
    rep.rows.push_back({std::to_string(l), std::to_string(a.checked), to_fraction_string(a.term1),
                        to_fraction_string(a.t2), to_fraction_string(a.t3), to_fraction_string(a.diff),
                        std::to_string(a.failures)});
  }
  rep.add_check("proof_chain", ok,
                "term I = 2^{2l}/4, II and III within their bounds, n|K_n| >= I - II - III, for every block with l >= 2");
  return rep;
}

ExperimentReport atom_tail_scan(Index n_max) {
  ExperimentReport rep;
  rep.id = "kernels_atom_tail";
  rep.mode = "exact";
  rep.add_param("n_max", std::to_string(n_max));
  rep.columns = {"M", "p", "c_tail", "c_tail_at", "c_pair", "c_single"};
  std::vector<Real> sigma;
  for (const Rational& p : {Rational(1, 4), Rational(1, 2)}) {
    const Real pr = to_real(p);
    const int log_exponent = static_cast<int>(floor_to_int(Rational(1, 2) + p));
    for (int M = 2; M <= 6; ++M) {
      PAtom atom = haar_atom(M, p);
      const int R = atom.fn.resolution();
      const Index cells = Index{1} << R;
      const Index mask = (Index{1} << M) - 1;
      WalshSpectrum spec = fwht(atom.fn);
      detail::SigmaStream stream = detail::SigmaStream::exact(R, spec.coeffs(), n_max);
      const Real atom_scale = std::pow(2.0L, M * (1 / pr - 1));  // 2^{M(1/p-1)}
      Real c_tail = 0, c_pair = 0, c_single = 0;
      Index tail_at = 0;
      for (Index m = (Index{1} << M) + 1; m <= n_max; ++m) {
        stream.advance_to(m - 1);
        stream.sigma_ahead(1, sigma);
        Real tail = 0;
        for (Index b = 0; b < cells; ++b) {
          const Index key = b & mask;
          if (key == 0) continue;
          const Real v = std::fabs(sigma[b]);
          tail += std::pow(v, pr);
          const int k = std::countr_zero(key);
          const Index rest = key & (key - 1);
          if (rest == 0) {
            c_single = std::max(c_single, v / (atom_scale * std::ldexp(1.0L, k)));
          } else {
            const int l = std::countr_zero(rest);
            c_pair = std::max(c_pair, v * static_cast<Real>(m) / (atom_scale * std::ldexp(1.0L, k + l)));
          }
        }
        tail /= static_cast<Real>(cells);
        const Real shape = std::pow(2.0L, M * (1 - pr)) * std::pow(static_cast<Real>(M), log_exponent) /
                               std::pow(static_cast<Real>(m), pr) + 1;
        if (tail / shape > c_tail) {
          c_tail = tail / shape;
          tail_at = m;
        }
      }
      rep.rows.push_back({std::to_string(M), p.get_str(), format_real(c_tail), std::to_string(tail_at),
                          format_real(c_pair), format_real(c_single)});
    }
  }
  return rep;
}

}  // namespace

std::vector<ExperimentReport> run_kernel_scans(const KernelScanOptions& o) {
  if (o.fejer_n_max < 1 || o.fejer_n_max > (Index{1} << 16)) throw std::invalid_argument("fejer scan needs 1 <= n_max <= 2^16");
  if (o.dirichlet_n_max < 1 || o.dirichlet_n_max > (Index{1} << 16))
    throw std::invalid_argument("dirichlet scan needs 1 <= n_max <= 2^16");
  if (o.lemma2_max_resolution < 1 || o.lemma2_max_resolution > 8)
    throw std::invalid_argument("lemma2 scan needs 1 <= M <= 8");
  if (o.lemma3_n_max < 1 || o.lemma3_n_max > (Index{1} << 14)) throw std::invalid_argument("lemma3 scan needs n_max <= 2^14");
  if (o.atom_tail_n_max < 128 || o.atom_tail_n_max > (Index{1} << 14))
    throw std::invalid_argument("atom tail scan needs 128 <= n_max <= 2^14");
  std::vector<ExperimentReport> out;
  out.push_back(fejer_l1_scan(o.fejer_n_max));
  out.push_back(dirichlet_scan(o.dirichlet_n_max));
  out.push_back(lemma2_scan(o.lemma2_max_resolution));
  out.push_back(lemma3_scan(o.lemma3_n_max));
  out.push_back(lemma3_chain_scan(o.lemma3_n_max));
  out.push_back(atom_tail_scan(o.atom_tail_n_max));
  return out;
}

}  // namespace walshfejer
