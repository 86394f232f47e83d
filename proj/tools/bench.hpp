#pragma once

#include <ostream>
#include <vector>

namespace psdo::cli {

struct BenchRow {
  const char* op;
  int n;
  long long wall_ns;
  double throughput;  // processed entries per second
};

/// Times quantize, sharp, modulation_norm and singular_values for each size
/// (best of `repeats`). Throws InvalidParams for an empty or invalid size list.
std::vector<BenchRow> run_bench(const std::vector<int>& sizes, int d, int repeats = 3);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// Fitted exponent of quantize time against n, or NaN with fewer than two sizes.
double quantize_scaling_exponent(const std::vector<BenchRow>& rows);

}  // namespace psdo::cli
