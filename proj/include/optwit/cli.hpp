#pragma once

// Command-line front end. Exit codes: 0 success, 1 invalid invocation,
// 2 I/O or input-format failure, 3 failed certificate.

#include "optwit/certify.hpp"
#include "optwit/coordinate_io.hpp"
#include "optwit/plot.hpp"
#include "optwit/report_json.hpp"
#include "optwit/states.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace optwit {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitIo = 2, kExitCertificate = 3 };

struct RunConfig {
  std::string subcommand;
  int n = -1;
  double t_min = -1.5;
  double t_max = 1.5;
  int steps = 61;
  int restarts = 200;
  int iters = 100;
  std::uint64_t seed = 1;
  std::string out;
  std::string in;
  std::vector<std::string> columns;
  bool normalize = false;
  std::optional<unsigned> threads;
};

namespace detail {

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  os << text;
  os.flush();
  if (!os) throw std::ios_base::failure("write to '" + path + "' failed");
}

inline std::string default_out(const RunConfig& c, const char* stem, const char* ext) {
  return c.out.empty() ? std::string(stem) + "_N" + std::to_string(c.n) + ext : c.out;
}

inline int cmd_build(const RunConfig& c, std::ostream& out) {
  const Witness w = build_witness(QubitCount(c.n), resolve_threads(c.threads));
  const std::string path = default_out(c, "witness", ".dcoord");
  save_dyadic_coordinate(path, w.matrix);
  out << "dim " << w.dim() << " nnz " << w.matrix.nonzeros() << " min_eig "
      << format_real(min_eigenvalue(w.matrix)) << " -> " << path << '\n';
  return kExitOk;
}

inline int cmd_sweep(const RunConfig& c, std::ostream& out) {
  const QubitCount n(c.n);
  require_state_qubits(n, "sweep");
  validate_grid(c.t_min, c.t_max, c.steps);
  const auto rows = sweep(n, c.t_min, c.t_max, c.steps, resolve_threads(c.threads));
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  const std::string path = default_out(c, "sweep", ".csv");
  write_text_file(path, csv.str());
  out << rows.size() << " rows -> " << path << '\n';
  return kExitOk;
}

inline int cmd_certify(const RunConfig& c, std::ostream& out) {
  const QubitCount n(c.n);
  if (n.n() < 1) throw std::invalid_argument("certify: requires N >= 1");
  const CertReport report = certify(n);
  const std::string path = default_out(c, "certify", ".json");
  write_text_file(path, to_json(report).dump(2) + "\n");
  out << "N=" << report.n << " certificates hold; p*=" << report.spa.p_star.numerator() << '/'
      << report.spa.p_star.denominator() << " -> " << path << '\n';
  return kExitOk;
}

inline int cmd_probe(const RunConfig& c, std::ostream& out) {
  const QubitCount n(c.n);
  if (n.n() < 1) throw std::invalid_argument("probe: requires N >= 1");
  const Witness w = build_witness(n);
  const ProbeResult p = blockpos_probe(w, c.restarts, c.iters, c.seed, resolve_threads(c.threads));
  out << "min product expectation " << format_real(p.min_value) << " (restart " << p.best_restart << ")\n";
  if (!c.out.empty()) write_text_file(c.out, to_json(p, c.n, c.restarts, c.iters, c.seed).dump(2) + "\n");
  return kExitOk;
}

inline int cmd_plot(const RunConfig& c, std::ostream& out) {
  std::ifstream is(c.in);
  if (!is) throw std::ios_base::failure("cannot open '" + c.in + "' for reading");
  const SweepTable table = parse_sweep_csv(is);
  PlotOptions opts{c.columns, c.normalize};
  if (opts.columns.empty()) opts.columns = {"min_eig_rho", "min_eig_rho_gamma"};
  const std::string svg = render_svg(table, opts);
  write_text_file(c.out, svg);
  out << opts.columns.size() << " series, " << table.rows.size() << " points -> " << c.out << '\n';
  return kExitOk;
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recursive qubit entanglement witnesses: build, sweep, certify, probe, plot", "optwit"};
  app.require_subcommand(1);
  RunConfig c;
  auto threads_opt = [&](CLI::App* sub) {
    sub->add_option_function<unsigned>(
           "--threads", [&](unsigned v) { c.threads = v; }, "worker threads (default $OPTWIT_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
  };

  auto* build = app.add_subcommand("build", "export W_N in DyadicCoordinate format");
  build->add_option("--n", c.n, "qubits per side")->required();
  build->add_option("--out", c.out, "output path (default witness_N<n>.dcoord)");
  threads_opt(build);

  auto* sw = app.add_subcommand("sweep", "minimal eigenvalues of rho_t and its partial transpose over a t grid");
  sw->add_option("--n", c.n, "qubits per side (>= 2)")->required();
  sw->add_option("--t-min", c.t_min, "grid start")->capture_default_str();
  sw->add_option("--t-max", c.t_max, "grid end")->capture_default_str();
  sw->add_option("--steps", c.steps, "grid points, endpoints included")->capture_default_str();
  sw->add_option("--out", c.out, "CSV path (default sweep_N<n>.csv)");
  threads_opt(sw);

  auto* cert = app.add_subcommand("certify", "run every certificate and write a JSON report");
  cert->add_option("--n", c.n, "qubits per side")->required();
  cert->add_option("--out", c.out, "JSON path (default certify_N<n>.json)");
  threads_opt(cert);

  auto* probe = app.add_subcommand("probe", "see-saw search for a negative product expectation");
  probe->add_option("--n", c.n, "qubits per side")->required();
  probe->add_option("--restarts", c.restarts, "random restarts")->capture_default_str()->check(CLI::PositiveNumber);
  probe->add_option("--iters", c.iters, "iterations per restart")->capture_default_str()->check(CLI::PositiveNumber);
  probe->add_option("--seed", c.seed, "random seed")->capture_default_str();
  probe->add_option("--out", c.out, "optional JSON path");
  threads_opt(probe);

  auto* plot = app.add_subcommand("plot", "render sweep CSV columns as SVG");
  plot->add_option("csv", c.in, "sweep CSV")->required();
  plot->add_option("--out", c.out, "SVG path")->required();
  plot->add_option("--columns", c.columns, "columns to draw (default min_eig_rho,min_eig_rho_gamma)")
      ->delimiter(',');
  plot->add_flag("--normalize", c.normalize, "divide each column by its max |value|");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*build) return detail::cmd_build(c, out);
    if (*sw) return detail::cmd_sweep(c, out);
    if (*cert) return detail::cmd_certify(c, out);
    if (*probe) return detail::cmd_probe(c, out);
    if (*plot) return detail::cmd_plot(c, out);
  } catch (const CertificateError& e) {
    err << "certificate failed: " << e.field() << ": " << e.what() << '\n';
    return kExitCertificate;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace optwit
