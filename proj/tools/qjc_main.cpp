// Batch CLI front door: every verification suite, parameter sweeps, report
// emission.  Exit codes: 0 = all checks within tolerance, 1 = a check failed
// (stdout names the offending relation), 2 = bad input/config.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "qjc/suites.hpp"

namespace {

using qjc::RunConfig;
using qjc::SuiteResult;

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--q", cfg.qs, "deformation parameter(s)")->capture_default_str();
  auto* nb = cmd->add_option("--nb", cfg.nb, "boson cutoff")->capture_default_str();
  auto* mf = cmd->add_option("--mf", cfg.mf, "fermion cutoff")->capture_default_str();
  cmd->add_option("--xi", cfg.xi, "quadrature upper node cap (0 = automatic)");
  cmd->add_option("--depth", cfg.lattice_depth, "quadrature lattice depth")
      ->capture_default_str();
  cmd->add_option("--format", cfg.format, "report format: csv, json, both")
      ->check(CLI::IsMember({"csv", "json", "both"}))
      ->capture_default_str();
  cmd->add_option("--out", cfg.out_dir, "output directory (env QJC_OUTPUT_DIR overrides)")
      ->capture_default_str();
  cmd->add_option("--tol", cfg.tol_override, "tolerance override for every check");
  cmd->add_flag("--strict", cfg.strict, "tighten all tolerances 100x");
  cmd->add_option("--omega1", cfg.omega1, "boson frequency")->capture_default_str();
  cmd->add_option("--omega2", cfg.omega2, "fermion frequency")->capture_default_str();
  cmd->add_option("--g", cfg.g, "scalar coupling")->capture_default_str();
  cmd->callback([&cfg, nb, mf]() {
    cfg.nb_set = nb->count() > 0;
    cfg.mf_set = mf->count() > 0;
  });
}

int finish(const std::vector<SuiteResult>& results, const RunConfig& cfg) {
  bool all_ok = true;
  for (const auto& r : results) {
    auto files = qjc::emit_report(r.report, cfg);
    std::cout << r.name << ": " << (r.passed ? "PASS" : "FAIL");
    for (const auto& f : files) std::cout << "  " << f;
    std::cout << "\n";
    for (const auto& f : r.failures) std::cout << "  failed: " << f << "\n";
    all_ok = all_ok && r.passed;
  }
  return all_ok ? 0 : 1;
}

int run_rewrite(RunConfig& cfg) {
  try {
    auto nf = qjc::normal_order(qjc::parse(cfg.expr));
    if (cfg.q_render == "symbolic") {
      std::cout << nf.to_string() << "\n";
    } else {
      double q = cfg.qs.empty() ? 0.5 : cfg.qs.front();
      bool first = true;
      for (const auto& [mono, coeff] : nf.terms()) {
        qjc::NormalForm one;
        one.add(mono, qjc::LaurentPoly(1));
        std::string m = one.to_string();
        if (!first) std::cout << " + ";
        first = false;
        std::cout << qjc::format_double(coeff.eval_q(q)) << "*" << m;
      }
      if (first) std::cout << "0";
      std::cout << "\n";
    }
    SuiteResult res;
    res.name = "rewrite-expr";
    res.report.name = "rewrite-expr";
    res.report.add_config("expr", cfg.expr);
    res.report.add_config("q", cfg.q_render);
    res.report.columns = {"normal_form"};
    res.report.add_row({nf.to_string()});
    qjc::emit_report(res.report, cfg);
    return 0;
  } catch (const qjc::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-deformed Jaynes-Cummings model verification toolkit"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  RunConfig cfg;

  auto* qnum = app.add_subcommand("qnum", "q-integers / q-factorials and the q-number suite");
  int point_n = -1;
  bool factorial = false;
  qnum->add_option("--kind", cfg.kind, "boson or fermion")
      ->check(CLI::IsMember({"boson", "fermion"}))
      ->capture_default_str();
  qnum->add_option("--n", point_n, "print [n] (or [n]! with --factorial) and exit");
  qnum->add_flag("--factorial", factorial, "query the q-factorial");
  add_common_options(qnum, cfg);

  auto* euler = app.add_subcommand("euler", "q-Euler formula suite");
  add_common_options(euler, cfg);
  auto* fock = app.add_subcommand("fock-verify", "super-Fock representation suite");
  add_common_options(fock, cfg);
  auto* rewrite = app.add_subcommand("rewrite", "normal-order an operator expression");
  rewrite->add_option("expr", cfg.expr, "operator expression")->required();
  rewrite->add_option("--q", cfg.q_render, "symbolic, or numeric evaluation")
      ->capture_default_str();
  rewrite->add_option("--qvalue", cfg.qs, "q value(s) for numeric rendering");
  rewrite->add_option("--format", cfg.format, "report format")->capture_default_str();
  rewrite->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
  auto* overlap = app.add_subcommand("scs-overlap", "coherent-state overlap suite");
  add_common_options(overlap, cfg);
  auto* complete = app.add_subcommand("complete", "completeness / resolution of unity suite");
  add_common_options(complete, cfg);
  auto* trace = app.add_subcommand("jc-trace", "Hamiltonian representation and trace suite");
  add_common_options(trace, cfg);
  auto* spectrum = app.add_subcommand("jc-spectrum", "spectrum and classical-limit suite");
  add_common_options(spectrum, cfg);
  auto* all = app.add_subcommand("all", "run every suite");
  add_common_options(all, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);  // prints usage to the diagnostic stream
    return rc == 0 ? 0 : 2;
  }

  try {
    if (qnum->parsed()) {
      cfg.command = "qnum";
      if (point_n >= 0) {
        double q = cfg.qs.empty() ? 0.5 : cfg.qs.front();
        std::cout << qjc::format_double(qjc::qnum_point(cfg.kind, point_n, q, factorial))
                  << "\n";
        return 0;
      }
      return finish({qjc::run_qnum_suite(cfg)}, cfg);
    }
    if (euler->parsed()) {
      cfg.command = "euler";
      return finish({qjc::run_euler_suite(cfg)}, cfg);
    }
    if (fock->parsed()) {
      cfg.command = "fock-verify";
      return finish({qjc::run_fock_suite(cfg)}, cfg);
    }
    if (rewrite->parsed()) {
      cfg.command = "rewrite";
      return run_rewrite(cfg);
    }
    if (overlap->parsed()) {
      cfg.command = "scs-overlap";
      return finish({qjc::run_overlap_suite(cfg)}, cfg);
    }
    if (complete->parsed()) {
      cfg.command = "complete";
      return finish({qjc::run_complete_suite(cfg)}, cfg);
    }
    if (trace->parsed()) {
      cfg.command = "jc-trace";
      return finish({qjc::run_jc_trace_suite(cfg)}, cfg);
    }
    if (spectrum->parsed()) {
      cfg.command = "jc-spectrum";
      return finish({qjc::run_jc_spectrum_suite(cfg)}, cfg);
    }
    if (all->parsed()) {
      cfg.command = "all";
      RunConfig sweep = cfg;
      if (all->count("--q") == 0) sweep.qs = {0.3, 0.5, 0.9};
      std::vector<SuiteResult> results;
      results.push_back(qjc::run_qnum_suite(sweep));
      results.push_back(qjc::run_euler_suite(sweep));
      results.push_back(qjc::run_fock_suite(sweep));
      results.push_back(qjc::run_rewrite_suite(sweep));
      results.push_back(qjc::run_overlap_suite(sweep));
      results.push_back(qjc::run_complete_suite(sweep));
      results.push_back(qjc::run_jc_trace_suite(sweep));
      results.push_back(qjc::run_jc_spectrum_suite(sweep));
      return finish(results, cfg);
    }
  } catch (const qjc::PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
