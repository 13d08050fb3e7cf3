// walsh-fejer: runs one experiment, prints a summary and optionally writes CSV.
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parameter error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "walshfejer/experiments.hpp"

namespace wf = walshfejer;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

wf::NumericMode parse_mode(const std::string& s) {
  if (s == "exact") return wf::NumericMode::exact;
  if (s == "float") return wf::NumericMode::floating;
  throw UsageError("--mode must be exact or float");
}

void write_report(const wf::ExperimentReport& rep, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  wf::write_csv(out, rep);
}

void dump(const std::string& path, const wf::StepFunction& f) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  wf::write_step_function(out, f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walsh-Fejer experiment harness"};
  app.require_subcommand(1);

  std::string p_text = "1/2", mode_text = "exact", out_path, dump_path, load_path, spec_path, log_text = "2";
  std::uint64_t n_max = 0;
  int m_min = 4, m_max = 10, atom_depth = 4;

  auto* t1a = app.add_subcommand("theorem1a", "weighted Fejer sums of a p-atom or a loaded function");
  t1a->add_option("--p", p_text, "exponent p in (0, 1/2]");
  t1a->add_option("--n-max", n_max, "largest n (default 4096)");
  t1a->add_option("--atom-depth", atom_depth, "support depth of the default Haar atom");
  t1a->add_option("--log", log_text, "log base: 2 or natural")->check(CLI::IsMember({"2", "natural"}));
  t1a->add_option("--load", load_path, "step function file used as the terminal function");

  auto* t1b = app.add_subcommand("theorem1b", "weak-type divergence of the counterexample");
  t1b->add_option("--spec", spec_path, "counterexample spec file (p=, alpha=, phi= lines)");

  auto* t2 = app.add_subcommand("theorem2", "B_m for F_m = 2^m (D_{2^{m+1}} - D_{2^m})");
  t2->add_option("--m-min", m_min, "smallest m");
  t2->add_option("--m-max", m_max, "largest m (at most 12)");

  auto* fine = app.add_subcommand("fine", "averages of V(k) against n log n");
  fine->add_option("--n-max", n_max, "largest n (default 2^20, at most 2^24)");

  auto* kernels = app.add_subcommand("kernels", "kernel norm and lemma scans");
  kernels->add_option("--n-max", n_max, "largest n of the Fejer L1 scan (default 2^14)");

  for (auto* sub : {t1a, t1b, t2, fine, kernels}) {
    sub->add_option("--out", out_path, kernels == sub ? "CSV path stem; one file per scan" : "CSV output path");
    if (sub != fine && sub != kernels) {
      sub->add_option("--mode", mode_text, "exact or float")->check(CLI::IsMember({"exact", "float"}));
      sub->add_option("--dump", dump_path, "write the source step function here");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const wf::NumericMode mode = parse_mode(mode_text);
    std::vector<wf::ExperimentReport> reports;
    if (*t1a) {
      wf::Theorem1aOptions o;
      o.p = wf::parse_rational(p_text);
      o.n_max = n_max ? n_max : 4096;
      o.log = log_text == "natural" ? wf::LogBase::natural : wf::LogBase::two;
      o.mode = mode;
      wf::DyadicMartingale F;
      if (!load_path.empty()) {
        std::ifstream in(load_path);
        if (!in) throw UsageError("cannot read " + load_path);
        F = wf::DyadicMartingale(wf::read_step_function(in));
      } else {
        wf::PAtom atom = wf::haar_atom(atom_depth, o.p);
        F = wf::DyadicMartingale(atom.fn);
        o.atom_depth = atom_depth;
      }
      dump(dump_path, F.terminal());
      reports.push_back(wf::run_theorem1a(F, o));
    } else if (*t1b) {
      wf::Theorem1bOptions o;
      if (!spec_path.empty()) {
        std::ifstream in(spec_path);
        if (!in) throw UsageError("cannot read " + spec_path);
        o.spec = wf::CounterexampleSpec::parse(in);
      }
      o.mode = mode;
      if (!dump_path.empty()) dump(dump_path, wf::build_counterexample_1b(o.spec).terminal());
      reports.push_back(wf::run_theorem1b(o));
    } else if (*t2) {
      wf::Theorem2Options o{m_min, m_max, mode};
      reports.push_back(wf::run_theorem2(o));
      if (!dump_path.empty()) dump(dump_path, wf::build_theorem2_martingale(m_max, m_max + 1).terminal());
    } else if (*fine) {
      reports.push_back(wf::run_fine_average(n_max ? n_max : (std::uint64_t{1} << 20)));
    } else if (*kernels) {
      wf::KernelScanOptions o;
      if (n_max) o.fejer_n_max = n_max;
      reports = wf::run_kernel_scans(o);
    }

    bool ok = true;
    for (const auto& rep : reports) {
      wf::write_summary(std::cout, rep);
      ok = ok && rep.all_passed();
      if (!out_path.empty()) {
        if (reports.size() == 1) {
          write_report(rep, out_path);
        } else {
          std::filesystem::path stem(out_path);
          if (stem.extension() == ".csv") stem.replace_extension();
          const std::string scan = rep.id.substr(rep.id.find('_') + 1);
          write_report(rep, stem.string() + "_" + scan + ".csv");
        }
      }
    }
    return ok ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
