#include "bench.hpp"
#include "jobs.hpp"

#include "psdo/error.hpp"
#include "psdo/io.hpp"
#include "psdo/parallel.hpp"
#include "psdo/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

namespace fs = std::filesystem;
using namespace psdo;
using nlohmann::json;

enum Exit : int { ok = 0, verify_failed = 1, io_failure = 2, invalid = 3 };

struct JobFlags {
  std::string manifest;
  std::optional<int> grid_n;
  std::optional<int> grid_d;
  std::optional<std::string> mode;
  std::vector<std::string> inputs;
  std::optional<std::string> params;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

void add_job_flags(CLI::App* cmd, JobFlags& f) {
  cmd->add_option("--manifest", f.manifest, "JSON job manifest");
  cmd->add_option("--grid-n", f.grid_n, "points per axis (odd)");
  cmd->add_option("--grid-d", f.grid_d, "dimension");
  cmd->add_option("--mode", f.mode, "arithmetic mode: real or mod");
  cmd->add_option("--input", f.inputs, "input array as name=path (or just path for the main input)");
  cmd->add_option("--params", f.params, "operation parameters as a JSON object");
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--out", f.out, "output path (.bin or .csv for arrays)");
}

cli::JobManifest build_job(const std::string& operation, const JobFlags& f) {
  cli::JobManifest job;
  if (!f.manifest.empty()) {
    job = cli::JobManifest::load(f.manifest);
    if (job.operation != operation) {
      throw Error(Errc::invalid_params, "manifest describes '" + job.operation + "', not '" + operation + "'");
    }
  } else {
    if (!f.grid_n) throw Error(Errc::invalid_params, "pass --manifest or --grid-n");
    job.operation = operation;
    job.grid = GridSpec::make(f.grid_d.value_or(1), *f.grid_n, parse_mode(f.mode.value_or("real")));
  }
  if (f.grid_n || f.grid_d || f.mode) {
    job.grid = GridSpec::make(f.grid_d.value_or(job.grid.d), f.grid_n.value_or(job.grid.n),
                              f.mode ? parse_mode(*f.mode) : job.grid.mode);
  }
  for (const auto& spec : f.inputs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
      job.inputs[cli::primary_input(operation)] = spec;
    } else {
      job.inputs[spec.substr(0, eq)] = spec.substr(eq + 1);
    }
  }
  if (f.params) {
    try {
      job.params = json::parse(*f.params);
    } catch (const json::exception& e) {
      throw Error(Errc::invalid_params, std::string("--params is not valid JSON: ") + e.what());
    }
  }
  if (f.seed) job.seed = *f.seed;
  if (f.out) job.output = *f.out;
  return job;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete pseudo-differential calculi on cyclic grids"};
  app.require_subcommand(1);

  std::map<std::string, JobFlags> job_flags;
  std::map<std::string, CLI::App*> job_cmds;
  const std::map<std::string, std::string> blurbs = {
      {"quantize", "Op_A(a) of a stored symbol"},
      {"scheme", "quantize a symbol with a named scheme"},
      {"wigner", "cross A-Wigner distribution of two signals"},
      {"stft", "short-time Fourier transform of a signal"},
      {"modnorm", "weighted modulation-space norm of a signal or symbol"},
      {"schatten", "Schatten norm of an operator or of Op_A(a)"},
      {"compose", "sharp product a #_A b"},
      {"transfer", "symbol transfer T_A a (or its inverse)"},
  };
  for (const auto& op : cli::job_operations()) {
    job_cmds[op] = app.add_subcommand(op, blurbs.at(op));
    add_job_flags(job_cmds[op], job_flags[op]);
  }

  VerifyOptions vopt;
  std::string vformat = "text";
  std::string vout;
  CLI::App* verify = app.add_subcommand("verify", "run the identity suite");
  verify->add_option("suite", vopt.suite, "suite to run")->check(CLI::IsMember(verify_suites()));
  verify->add_option("--n", vopt.n, "points per axis (odd)");
  verify->add_option("--d", vopt.d, "dimension (1 or 2)");
  verify->add_option("--seed", vopt.seed, "random seed");
  verify->add_option("--format", vformat, "stdout format")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--out", vout, "also write the JSON report here");

  std::vector<int> sizes;
  int bench_d = 1;
  int repeats = 3;
  std::string bench_out;
  CLI::App* bench = app.add_subcommand("bench", "time the core kernels and emit CSV");
  bench->add_option("--sizes", sizes, "comma separated odd grid sizes")->delimiter(',');
  bench->add_option("--d", bench_d, "dimension");
  bench->add_option("--repeats", repeats, "timed runs per kernel (best is kept)");
  bench->add_option("--out", bench_out, "CSV path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return invalid;
  }

  try {
    if (*verify) {
      const VerifyReport report = run_verify(vopt);
      const std::string json_text = report.to_json().dump(2) + "\n";
      std::cout << (vformat == "json" ? json_text : report.to_text());
      if (!vout.empty()) write_text(vout, json_text);
      return report.passed() ? ok : verify_failed;
    }
    if (*bench) {
      const auto rows = cli::run_bench(sizes, bench_d, repeats);
      if (bench_out.empty()) {
        cli::write_bench_csv(std::cout, rows);
      } else {
        std::ofstream out(bench_out);
        if (!out) throw Error(Errc::io_error, "cannot write " + bench_out);
        cli::write_bench_csv(out, rows);
      }
      const double k = cli::quantize_scaling_exponent(rows);
      if (std::isfinite(k)) {
        std::cerr << "quantize time grows like n^" << k << (bench_d == 1 && k < 4.0 ? " (sub-quartic)" : "") << '\n';
      }
      return ok;
    }
    for (const auto& [op, cmd] : job_cmds) {
      if (!*cmd) continue;
      std::cout << cli::run_job(build_job(op, job_flags[op])).dump(2) << '\n';
      return ok;
    }
  } catch (const Error& e) {
    std::cerr << "psdo: " << e.what() << '\n';
    return e.code() == Errc::io_error ? io_failure : invalid;
  } catch (const std::exception& e) {
    std::cerr << "psdo: " << e.what() << '\n';
    return invalid;
  }
  return invalid;
}
