#include "psdo/grid.hpp"

#include "psdo/error.hpp"
#include "psdo/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace psdo {

std::string_view mode_name(Mode mode) noexcept { return mode == Mode::real ? "real" : "mod"; }

Mode parse_mode(std::string_view text) {
  if (text == "real") return Mode::real;
  if (text == "mod") return Mode::mod;
  throw Error(Errc::invalid_params, "unknown arithmetic mode '" + std::string(text) + "'");
}

GridSpec GridSpec::make(int d, int n, Mode mode) {
  if (d < 1 || d > kMaxDim) {
    throw Error(Errc::invalid_params, "dimension d must be in [1, " + std::to_string(kMaxDim) + "], got " +
                                          std::to_string(d));
  }
  if (n < 1 || n % 2 == 0) {
    throw Error(Errc::invalid_params, "points per axis n must be odd and positive, got " + std::to_string(n));
  }
  return {d, n, mode};
}

std::size_t GridSpec::size() const noexcept { return power(1); }

std::size_t GridSpec::power(int blocks) const noexcept {
  std::size_t s = 1;
  for (int i = 0; i < d * blocks; ++i) s *= static_cast<std::size_t>(n);
  return s;
}

Coord unflatten(std::size_t index, const GridSpec& grid) noexcept {
  Coord c{};
  for (int a = grid.d - 1; a >= 0; --a) {
    c[static_cast<std::size_t>(a)] = static_cast<long>(index % static_cast<std::size_t>(grid.n));
    index /= static_cast<std::size_t>(grid.n);
  }
  return c;
}

std::size_t flatten(const Coord& c, const GridSpec& grid) noexcept {
  std::size_t index = 0;
  for (int a = 0; a < grid.d; ++a) {
    index = index * static_cast<std::size_t>(grid.n) +
            static_cast<std::size_t>(mod(c[static_cast<std::size_t>(a)], grid.n));
  }
  return index;
}

long dot(const Coord& a, const Coord& b, int d) noexcept {
  long s = 0;
  for (int i = 0; i < d; ++i) s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
  return s;
}

PhaseTable::PhaseTable(int n) : n_(n), table_(static_cast<std::size_t>(n)) {
  table_[0] = {1.0, 0.0};
  for (int r = 1; r < n; ++r) table_[static_cast<std::size_t>(r)] = std::polar(1.0, kTwoPi * r / n);
}

Signal::Signal(GridSpec g, CVec values) : grid(g), data(std::move(values)) {
  if (data.size() != grid.size()) {
    throw Error(Errc::dim_mismatch, "signal length " + std::to_string(data.size()) + " != n^d = " +
                                        std::to_string(grid.size()));
  }
}

Signal Signal::delta(GridSpec g, std::size_t at) {
  Signal s = zeros(g);
  s.data.at(at) = 1.0;
  return s;
}

Symbol::Symbol(GridSpec g, CVec values) : grid(g), data(std::move(values)) {
  if (data.size() != grid.size() * grid.size()) {
    throw Error(Errc::dim_mismatch, "symbol size " + std::to_string(data.size()) + " != n^{2d} = " +
                                        std::to_string(grid.size() * grid.size()));
  }
}

OperatorMatrix::OperatorMatrix(GridSpec g, CVec values) : grid(g), data(std::move(values)) {
  if (data.size() != grid.size() * grid.size()) {
    throw Error(Errc::dim_mismatch, "operator size " + std::to_string(data.size()) + " != n^{2d} = " +
                                        std::to_string(grid.size() * grid.size()));
  }
}

OperatorMatrix OperatorMatrix::identity(GridSpec g) {
  OperatorMatrix m = zeros(g);
  for (std::size_t i = 0; i < g.size(); ++i) m.at(i, i) = 1.0;
  return m;
}

OperatorMatrix OperatorMatrix::outer(const Signal& f1, const Signal& f2) {
  if (!(f1.grid == f2.grid)) throw Error(Errc::domain_mismatch, "outer product of signals on different grids");
  OperatorMatrix m = zeros(f1.grid);
  const std::size_t dim = f1.size();
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) m.at(r, c) = f1[r] * std::conj(f2[c]);
  }
  return m;
}

namespace {

// Dense n x n DFT matrix with the unitary normalization folded in.
const CVec& dft_matrix(int n, Direction dir) {
  thread_local std::map<std::pair<int, int>, CVec> cache;
  auto key = std::make_pair(n, dir == Direction::forward ? -1 : 1);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const PhaseTable phase(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CVec m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) {
    for (long j = 0; j < n; ++j) {
      m[static_cast<std::size_t>(k * n + j)] = phase(key.second * j * k) * scale;
    }
  }
  return cache.emplace(key, std::move(m)).first->second;
}

}  // namespace

void dft_axes(std::span<cplx> data, int naxes, int n, std::uint64_t axis_mask, Direction dir) {
  if (n == 1) return;
  const CVec& matrix = dft_matrix(n, dir);
  const std::size_t len = static_cast<std::size_t>(n);
  const auto& k = simd::active();
  CVec line(len), out(len);
  for (int axis = 0; axis < naxes; ++axis) {
    if (((axis_mask >> axis) & 1U) == 0) continue;
    std::size_t stride = 1;
    for (int b = axis + 1; b < naxes; ++b) stride *= len;
    const std::size_t outer = data.size() / (stride * len);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t t = 0; t < stride; ++t) {
        const std::size_t base = o * stride * len + t;
        for (std::size_t j = 0; j < len; ++j) line[j] = data[base + j * stride];
        for (std::size_t r = 0; r < len; ++r) out[r] = k.dot(matrix.data() + r * len, line.data(), len);
        for (std::size_t j = 0; j < len; ++j) data[base + j * stride] = out[j];
      }
    }
  }
}

Signal dft(const Signal& f) {
  Signal out = f;
  dft_axes(out.data, f.grid.d, f.grid.n, (1ULL << f.grid.d) - 1, Direction::forward);
  return out;
}

Signal idft(const Signal& f) {
  Signal out = f;
  dft_axes(out.data, f.grid.d, f.grid.n, (1ULL << f.grid.d) - 1, Direction::inverse);
  return out;
}

Symbol partial_dft(const Symbol& a, Block block, Direction dir) {
  Symbol out = a;
  const int d = a.grid.d;
  const std::uint64_t first = (1ULL << d) - 1;
  const std::uint64_t mask = block == Block::position ? first : (first << d);
  dft_axes(out.data, 2 * d, a.grid.n, mask, dir);
  return out;
}

Symbol full_dft(const Symbol& a, Direction dir) {
  Symbol out = a;
  dft_axes(out.data, 2 * a.grid.d, a.grid.n, (1ULL << (2 * a.grid.d)) - 1, dir);
  return out;
}

Signal frac_shift(const Signal& f, std::span<const double> s) {
  const GridSpec& g = f.grid;
  if (static_cast<int>(s.size()) != g.d) {
    throw Error(Errc::dim_mismatch, "shift vector length must equal d");
  }
  if (std::all_of(s.begin(), s.end(), [](double v) { return v == 0.0; })) return f;
  Signal coeff = dft(f);
  for (std::size_t k = 0; k < coeff.size(); ++k) {
    const Coord c = unflatten(k, g);
    double phase = 0.0;
    for (int a = 0; a < g.d; ++a) phase += static_cast<double>(rep(c[static_cast<std::size_t>(a)], g.n)) * s[static_cast<std::size_t>(a)];
    coeff[k] *= std::polar(1.0, -kTwoPi * phase / g.n);
  }
  return idft(coeff);
}

double l2_norm(std::span<const cplx> a) noexcept { return std::sqrt(simd::norm_sq(a)); }

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) noexcept {
  double m = 0.0;
  const std::size_t len = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < len; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double rel_error(std::span<const cplx> a, std::span<const cplx> b) noexcept {
  double num = 0.0;
  const std::size_t len = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < len; ++i) num += std::norm(a[i] - b[i]);
  const double den = simd::norm_sq(b);
  return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

}  // namespace psdo
