#include "bench.hpp"

#include "psdo/calculus.hpp"
#include "psdo/error.hpp"
#include "psdo/modspace.hpp"
#include "psdo/quantizer.hpp"
#include "psdo/rng.hpp"
#include "psdo/schatten.hpp"
#include "psdo/wigner.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <string_view>

namespace psdo::cli {

namespace {

long long best_of(int repeats, const std::function<void()>& body) {
  long long best = std::numeric_limits<long long>::max();
  body();
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min<long long>(best, std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
  }
  return std::max(best, 1LL);
}

}  // namespace

std::vector<BenchRow> run_bench(const std::vector<int>& sizes, int d, int repeats) {
  if (sizes.empty()) throw Error(Errc::invalid_params, "bench needs at least one grid size");
  if (repeats < 1) throw Error(Errc::invalid_params, "bench needs repeats >= 1");
  std::vector<BenchRow> rows;
  Rng rng(7);
  for (int n : sizes) {
    const GridSpec g = GridSpec::make(d, n);
    const Symbol a(g, rng.complex_normal(g.size() * g.size()));
    const Symbol b(g, rng.complex_normal(g.size() * g.size()));
    const Signal f(g, rng.complex_normal(g.size()));
    const MatrixParam A = MatrixParam::scalar(d, 0.37);
    const double N2 = static_cast<double>(g.size() * g.size());
    volatile double sink = 0.0;

    auto record = [&](const char* op, double entries, const std::function<void()>& body) {
      const long long ns = best_of(repeats, body);
      rows.push_back({op, n, ns, entries / (static_cast<double>(ns) * 1e-9)});
    };
    record("quantize", N2, [&] { sink = sink + std::real(quantize(a, A).data[0]); });
    record("sharp", N2, [&] { sink = sink + std::real(sharp(a, b, A).data[0]); });
    record("modulation_norm", N2, [&] { sink = sink + modulation_norm(f, {2.0, 2.0}, Weight::one()); });
    const OperatorMatrix T = quantize(a, A);
    record("singular_values", static_cast<double>(g.size()),
           [&] { sink = sink + singular_values(T).values.front(); });
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "op,n,wall_ns,throughput\n";
  for (const auto& r : rows) out << r.op << ',' << r.n << ',' << r.wall_ns << ',' << r.throughput << '\n';
}

double quantize_scaling_exponent(const std::vector<BenchRow>& rows) {
  const BenchRow* lo = nullptr;
  const BenchRow* hi = nullptr;
  for (const auto& r : rows) {
    if (std::string_view(r.op) != "quantize") continue;
    if (!lo || r.n < lo->n) lo = &r;
    if (!hi || r.n > hi->n) hi = &r;
  }
  if (!lo || lo->n == hi->n) return std::numeric_limits<double>::quiet_NaN();
  return std::log(static_cast<double>(hi->wall_ns) / lo->wall_ns) / std::log(static_cast<double>(hi->n) / lo->n);
}

}  // namespace psdo::cli
