#include "jobs.hpp"

#include "schema.hpp"

#include "psdo/calculus.hpp"
#include "psdo/error.hpp"
#include "psdo/io.hpp"
#include "psdo/modspace.hpp"
#include "psdo/quantizer.hpp"
#include "psdo/schatten.hpp"
#include "psdo/schemes.hpp"
#include "psdo/wigner.hpp"

#include <algorithm>
#include <fstream>

namespace psdo::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

ArrayFile load_input(const JobManifest& job, const std::string& name) {
  const auto it = job.inputs.find(name);
  if (it == job.inputs.end()) throw Error(Errc::invalid_params, job.operation + " needs input '" + name + "'");
  ArrayFile a = read_array(it->second);
  if (a.grid) {
    if (a.grid->d != job.grid.d || a.grid->n != job.grid.n) {
      throw Error(Errc::dim_mismatch, "input '" + name + "' was written for another grid");
    }
    if (a.grid->mode != job.grid.mode) throw Error(Errc::mode_mismatch, "input '" + name + "' has a different mode");
  }
  return a;
}

bool has_input(const JobManifest& job, const std::string& name) { return job.inputs.contains(name); }

MatrixParam matrix_param(const JobManifest& job, const json& value) {
  const int d = job.grid.d;
  MatrixParam A;
  if (value.is_number()) {
    A = MatrixParam::scalar(d, value.get<double>());
  } else {
    const auto entries = value.get<std::vector<double>>();
    if (entries.size() != static_cast<std::size_t>(d * d)) {
      throw Error(Errc::dim_mismatch, "A needs " + std::to_string(d * d) + " entries (row-major), got " +
                                          std::to_string(entries.size()));
    }
    A = MatrixParam(d, entries);
  }
  check_param(job.grid, A);
  return A;
}

MatrixParam param_A(const JobManifest& job) {
  return job.params.contains("A") ? matrix_param(job, job.params["A"]) : MatrixParam::zero(job.grid.d);
}

fs::path require_output(const JobManifest& job) {
  if (!job.output) throw Error(Errc::invalid_params, job.operation + " writes an array; pass --out");
  return *job.output;
}

double hermiticity_defect(const OperatorMatrix& T) {
  double worst = 0.0;
  for (std::size_t r = 0; r < T.dim(); ++r)
    for (std::size_t c = 0; c < T.dim(); ++c) worst = std::max(worst, std::abs(T.at(r, c) - std::conj(T.at(c, r))));
  return worst;
}

json write_result(const JobManifest& job, const ArrayFile& a) {
  const fs::path out = require_output(job);
  write_array(out, a);
  return {{"output", out.string()}, {"shape", a.shape}, {"l2_norm", l2_norm(a.data)}};
}

json operator_result(const JobManifest& job, const OperatorMatrix& T) {
  json r = write_result(job, make_array(T));
  r["frobenius"] = l2_norm(T.data);
  r["hermiticity_defect"] = hermiticity_defect(T);
  return r;
}

json run_quantize(const JobManifest& job) {
  const Symbol a = as_symbol(load_input(job, "symbol"), job.grid);
  return operator_result(job, quantize(a, param_A(job)));
}

json run_scheme(const JobManifest& job) {
  const Symbol a = as_symbol(load_input(job, "symbol"), job.grid);
  return operator_result(job, quantize_scheme(a, SchemeSpec::from_json(job.params.at("scheme"))));
}

json run_wigner(const JobManifest& job) {
  const Signal f1 = as_signal(load_input(job, "f1"), job.grid);
  const Signal f2 = has_input(job, "f2") ? as_signal(load_input(job, "f2"), job.grid) : f1;
  return write_result(job, make_array(wigner(f1, f2, param_A(job)).as_symbol(), "tf"));
}

json run_stft(const JobManifest& job) {
  const Signal f = as_signal(load_input(job, "f"), job.grid);
  const Signal phi = has_input(job, "window") ? as_signal(load_input(job, "window"), job.grid) : default_window(job.grid);
  return write_result(job, make_array(stft(f, phi).as_symbol(), "tf"));
}

json run_modnorm(const JobManifest& job) {
  const MixedNormParams pq{Exponent::from_json(job.params.at("p")).value(), Exponent::from_json(job.params.at("q")).value()};
  const std::string target = job.params.value("target", has_input(job, "symbol") ? "symbol" : "signal");
  const int blocks = target == "symbol" ? 4 : 2;
  const Weight omega = job.params.contains("weight") ? Weight::from_json(job.params["weight"], blocks) : Weight::one(blocks);
  double value = 0.0;
  if (target == "symbol") {
    const Symbol a = as_symbol(load_input(job, "symbol"), job.grid);
    const Symbol Phi =
        has_input(job, "window") ? as_symbol(load_input(job, "window"), job.grid) : default_symbol_window(job.grid);
    value = symbol_modulation_norm(a, pq, omega, Phi);
  } else {
    const Signal f = as_signal(load_input(job, "f"), job.grid);
    const Signal phi = has_input(job, "window") ? as_signal(load_input(job, "window"), job.grid) : default_window(job.grid);
    value = modulation_norm(f, pq, omega, phi);
  }
  return {{"value", value}};
}

json run_schatten(const JobManifest& job) {
  const double p = Exponent::from_json(job.params.at("p")).value();
  double value = 0.0;
  if (has_input(job, "symbol")) {
    value = symbol_schatten_norm(as_symbol(load_input(job, "symbol"), job.grid), param_A(job), p);
  } else {
    value = schatten_norm(as_operator(load_input(job, "operator"), job.grid), p);
  }
  return {{"value", value}};
}

json run_compose(const JobManifest& job) {
  const Symbol a = as_symbol(load_input(job, "a"), job.grid);
  const Symbol b = as_symbol(load_input(job, "b"), job.grid);
  return write_result(job, make_array(sharp(a, b, param_A(job))));
}

json run_transfer(const JobManifest& job) {
  const Symbol a = as_symbol(load_input(job, "symbol"), job.grid);
  const MatrixParam A = param_A(job);
  return write_result(job, make_array(symbol_transfer(a, job.params.value("inverse", false) ? -A : A)));
}

}  // namespace

const std::vector<std::string>& job_operations() {
  static const std::vector<std::string> ops = {"quantize", "scheme",   "wigner",  "stft",
                                               "modnorm",  "schatten", "compose", "transfer"};
  return ops;
}

std::string primary_input(const std::string& operation) {
  if (operation == "wigner") return "f1";
  if (operation == "stft" || operation == "modnorm") return "f";
  if (operation == "schatten") return "operator";
  if (operation == "compose") return "a";
  return "symbol";
}

JobManifest JobManifest::from_json(const json& j, const fs::path& base) {
  validate(j, "manifest");
  JobManifest m;
  m.grid = grid_from_json(j["grid"]);
  m.operation = j["operation"].get<std::string>();
  const json inputs = j.value("inputs", json::object());
  for (const auto& item : inputs.items()) {
    const fs::path p = item.value().get<std::string>();
    m.inputs[item.key()] = p.is_relative() && !base.empty() ? base / p : p;
  }
  m.params = j.value("params", json::object());
  m.seed = j.value("seed", std::uint64_t{42});
  if (j.contains("output")) {
    const fs::path p = j["output"].get<std::string>();
    m.output = p.is_relative() && !base.empty() ? base / p : p;
  }
  return m;
}

JobManifest JobManifest::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open manifest " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_params, "manifest " + path.string() + " is not valid JSON: " + e.what());
  }
  return from_json(j, path.parent_path());
}

json JobManifest::to_json() const {
  json inputs_json = json::object();
  for (const auto& [name, path] : inputs) inputs_json[name] = path.string();
  json j = {{"grid", grid_to_json(grid)}, {"operation", operation}, {"inputs", inputs_json},
            {"params", params},           {"seed", seed}};
  if (output) j["output"] = output->string();
  return j;
}

json run_job(const JobManifest& job) {
  validate(job.params, "params/" + job.operation);
  json result;
  if (job.operation == "quantize") {
    result = run_quantize(job);
  } else if (job.operation == "scheme") {
    result = run_scheme(job);
  } else if (job.operation == "wigner") {
    result = run_wigner(job);
  } else if (job.operation == "stft") {
    result = run_stft(job);
  } else if (job.operation == "modnorm") {
    result = run_modnorm(job);
  } else if (job.operation == "schatten") {
    result = run_schatten(job);
  } else if (job.operation == "compose") {
    result = run_compose(job);
  } else if (job.operation == "transfer") {
    result = run_transfer(job);
  } else {
    throw Error(Errc::invalid_params, "unknown operation '" + job.operation + "'");
  }
  result["params_echo"] = job.params;
  if (result.contains("value") && job.output) {
    std::ofstream out(*job.output);
    if (!out) throw Error(Errc::io_error, "cannot write " + job.output->string());
    out << result.dump(2) << '\n';
  }
  return result;
}

}  // namespace psdo::cli
