#include "amo/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "CLI11.hpp"
#include "amo/io.hpp"
#include "amo/spectrum.hpp"
#include "amo/verify.hpp"

namespace amo {

namespace {

std::vector<std::int64_t> parse_int_list(const std::string& csv) {
  std::vector<std::int64_t> vals;
  size_t pos = 0;
  while (pos <= csv.size()) {
    const size_t comma = std::min(csv.find(',', pos), csv.size());
    const std::string item = csv.substr(pos, comma - pos);
    char* end = nullptr;
    const long long v = std::strtoll(item.c_str(), &end, 10);
    if (item.empty() || !end || *end != '\0') {
      throw std::invalid_argument("bad integer list entry: '" + item + "'");
    }
    vals.push_back((std::int64_t)v);
    pos = comma + 1;
  }
  return vals;
}

void print_verify_table(std::ostream& out, const std::vector<VerifyOutcome>& outs) {
  char line[160];
  std::snprintf(line, sizeof line, "%-16s %8s %9s  %-24s %s\n", "suite", "cases",
                "failures", "worst_residual", "sign_convention");
  out << line;
  for (const VerifyOutcome& o : outs) {
    std::snprintf(line, sizeof line, "%-16s %8ld %9ld  %-24s %s\n", o.suite.c_str(),
                  o.cases_run, o.failures, fmt17(o.worst_residual).c_str(),
                  o.detected_sign_convention.c_str());
    out << line;
  }
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"spectra and measure bounds of the critical Harper operator at rational flux"};
  app.require_subcommand(1);
  int rc = 0;

  // ---- spectrum ----
  auto* sp = app.add_subcommand("spectrum", "single-frequency report with self-check flags");
  std::int64_t sp_p0 = 0, sp_q0 = 0;
  std::string sp_rep = "both", sp_format = "json";
  sp->add_option("--p0", sp_p0, "flux numerator")->required()->check(CLI::PositiveNumber);
  sp->add_option("--q0", sp_q0, "flux denominator")->required()->check(CLI::PositiveNumber);
  sp->add_option("--rep", sp_rep, "representation for the band list")
      ->check(CLI::IsMember({"std", "chiral", "both"}));
  sp->add_option("--format", sp_format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sp->callback([&] {
    const Frequency f = Frequency::reduce(sp_p0, sp_q0);
    if (f.p0 != sp_p0 || f.q0 != sp_q0) {
      err << "note: reduced " << sp_p0 << "/" << sp_q0 << " to " << f.p0 << "/"
          << f.q0 << "\n";
    }
    const SpectrumReport report = bounds_report(f);
    const BandSet bands =
        (sp_rep == "chiral") ? band_edges_chiral(f).merged() : report.bands;
    if (sp_format == "json") {
      write_report_json(out, report, bands);
    } else {
      write_report_csv(out, report, bands);
    }
  });

  // ---- butterfly ----
  auto* bf = app.add_subcommand("butterfly", "band sweep over all coprime fluxes up to a denominator");
  std::int64_t bf_qmax = 0;
  std::string bf_out, bf_svg;
  int bf_width = 1200, bf_height = 1200;
  bf->add_option("--qmax", bf_qmax, "largest denominator")->required()->check(CLI::PositiveNumber);
  bf->add_option("--out", bf_out, "CSV output path")->required();
  bf->add_option("--svg", bf_svg, "optional SVG output path");
  bf->add_option("--width", bf_width, "SVG width")->check(CLI::PositiveNumber);
  bf->add_option("--height", bf_height, "SVG height")->check(CLI::PositiveNumber);
  bf->callback([&] {
    const std::vector<ButterflyRow> rows = butterfly_rows(bf_qmax);
    std::ofstream csv(bf_out, std::ios::binary);
    if (!csv) {
      err << "error: cannot open '" << bf_out << "' for writing\n";
      rc = 2;
      return;
    }
    write_butterfly_csv(csv, rows);
    csv.flush();
    if (!csv) {
      err << "error: write to '" << bf_out << "' failed\n";
      rc = 2;
      return;
    }
    if (!bf_svg.empty()) {
      std::ofstream svg(bf_svg, std::ios::binary);
      if (!svg) {
        err << "error: cannot open '" << bf_svg << "' for writing\n";
        rc = 2;
        return;
      }
      write_butterfly_svg(svg, rows, bf_qmax, bf_width, bf_height);
      svg.flush();
      if (!svg) {
        err << "error: write to '" << bf_svg << "' failed\n";
        rc = 2;
        return;
      }
    }
    err << "wrote " << rows.size() << " bands\n";
  });

  // ---- verify ----
  auto* vf = app.add_subcommand("verify", "run numerical verification suites");
  std::string vf_suite = "all";
  VerifyOptions vf_opt;
  vf->add_option("--suite", vf_suite,
                 "all|chambers|product|relation|nesting|bounds|lidskii|equivalence");
  vf->add_option("--qmax", vf_opt.qmax, "period / denominator cap")->check(CLI::PositiveNumber);
  vf->add_option("--seed", vf_opt.seed, "sample seed");
  vf->add_option("--tol", vf_opt.tol, "relative tolerance for the 1e-8 suites");
  vf->callback([&] {
    const std::vector<VerifyOutcome> outs = run_verify_suites(vf_suite, vf_opt);
    print_verify_table(out, outs);
    long failures = 0;
    for (const VerifyOutcome& o : outs) failures += o.failures;
    rc = failures == 0 ? 0 : 1;
  });

  // ---- thouless ----
  auto* th = app.add_subcommand("thouless", "q0 * measure ratios along a denominator list");
  std::int64_t th_p0 = 0;
  std::string th_list;
  th->add_option("--p0", th_p0, "flux numerator")->required()->check(CLI::PositiveNumber);
  th->add_option("--q0-list", th_list, "comma-separated denominators")->required();
  th->callback([&] {
    const std::vector<std::int64_t> q0s = parse_int_list(th_list);
    std::vector<std::string> warnings;
    const std::vector<ThoulessRow> rows =
        thouless_sweep(th_p0, q0s, &warnings);
    for (const std::string& w : warnings) err << "warning: " << w << "\n";
    const double limit = thouless_constant();
    out << "thouless_constant," << fmt17(limit) << "\n";
    out << "q0,measure,ratio,deviation\n";
    for (const ThoulessRow& r : rows) {
      out << r.q0 << ',' << fmt17(r.measure) << ',' << fmt17(r.ratio) << ','
          << fmt17(std::fabs(r.ratio - limit)) << "\n";
    }
  });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("amo");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse((int)argv.size(), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

}  // namespace amo
