#pragma once

// The discrete phase-space model: index arithmetic on the cyclic group Z_n^d,
// centered representatives, the unitary DFT and its partial forms, and
// trigonometric-interpolation shifts.
//
// Positions are integer indices j in Z_n^d. Frequency index k stands for the
// continuum frequency 2*pi*rep(k)/n, so e^{i<x-y,xi>} becomes the DFT
// character e^{2 pi i <j-j',k>/n} exactly.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace psdo {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr int kMaxDim = 4;
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

enum class Mode {
  real,  // centered representatives in phases; any real matrix parameter
  mod,   // all index arithmetic mod n; integer matrix parameters only
};

std::string_view mode_name(Mode mode) noexcept;
Mode parse_mode(std::string_view text);

struct GridSpec {
  int d = 1;
  int n = 1;
  Mode mode = Mode::real;

  /// Validated construction: n odd and positive, 1 <= d <= kMaxDim.
  static GridSpec make(int d, int n, Mode mode = Mode::real);

  /// N = n^d, the number of grid points.
  std::size_t size() const noexcept;
  /// n^(d * blocks): size of a phase-space array with `blocks` index blocks.
  std::size_t power(int blocks) const noexcept;
  GridSpec with_mode(Mode m) const noexcept { return {d, n, m}; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Coordinates of one d-dimensional index block.
using Coord = std::array<long, kMaxDim>;

/// Unique r = k (mod n) with -(n-1)/2 <= r <= (n-1)/2. Requires odd n.
constexpr long rep(long k, long n) noexcept {
  long r = k % n;
  if (r < 0) r += n;
  return r > (n - 1) / 2 ? r - n : r;
}

constexpr long mod(long k, long n) noexcept {
  long r = k % n;
  return r < 0 ? r + n : r;
}

Coord unflatten(std::size_t index, const GridSpec& grid) noexcept;
/// Row-major flattening; every coordinate is reduced mod n first.
std::size_t flatten(const Coord& c, const GridSpec& grid) noexcept;

long dot(const Coord& a, const Coord& b, int d) noexcept;

/// e^{2 pi i r / n} from an exact integer residue.
class PhaseTable {
 public:
  explicit PhaseTable(int n);
  cplx operator()(long r) const noexcept { return table_[static_cast<std::size_t>(mod(r, n_))]; }

 private:
  long n_;
  CVec table_;
};

struct Signal {
  GridSpec grid;
  CVec data;

  Signal() = default;
  Signal(GridSpec g, CVec values);
  static Signal zeros(GridSpec g) { return Signal(g, CVec(g.size())); }
  static Signal delta(GridSpec g, std::size_t at = 0);

  std::size_t size() const noexcept { return data.size(); }
  cplx& operator[](std::size_t i) noexcept { return data[i]; }
  const cplx& operator[](std::size_t i) const noexcept { return data[i]; }
};

/// Phase-space array a(j, k): first block = position j, second = frequency k.
struct Symbol {
  GridSpec grid;
  CVec data;

  Symbol() = default;
  Symbol(GridSpec g, CVec values);
  static Symbol zeros(GridSpec g) { return Symbol(g, CVec(g.size() * g.size())); }
  static Symbol constant(GridSpec g, cplx value) { return Symbol(g, CVec(g.size() * g.size(), value)); }

  std::size_t points() const noexcept { return grid.size(); }
  cplx& at(std::size_t j, std::size_t k) noexcept { return data[j * grid.size() + k]; }
  const cplx& at(std::size_t j, std::size_t k) const noexcept { return data[j * grid.size() + k]; }
};

/// Square matrix with entry (j, j') = kernel value K(j, j').
struct OperatorMatrix {
  GridSpec grid;
  CVec data;

  OperatorMatrix() = default;
  OperatorMatrix(GridSpec g, CVec values);
  static OperatorMatrix zeros(GridSpec g) { return OperatorMatrix(g, CVec(g.size() * g.size())); }
  static OperatorMatrix identity(GridSpec g);
  /// Outer product f1 f2^*: the rank-one map g -> (g, f2) f1.
  static OperatorMatrix outer(const Signal& f1, const Signal& f2);

  std::size_t dim() const noexcept { return grid.size(); }
  cplx& at(std::size_t r, std::size_t c) noexcept { return data[r * grid.size() + c]; }
  const cplx& at(std::size_t r, std::size_t c) const noexcept { return data[r * grid.size() + c]; }
};

enum class Direction { forward, inverse };
enum class Block { position = 1, frequency = 2 };

/// In-place unitary DFT along every axis selected by `axis_mask` (bit a =
/// axis a, axis 0 slowest) of a row-major array with `naxes` axes of length n.
/// Forward kernel n^{-1/2} e^{-2 pi i jk/n} per axis.
void dft_axes(std::span<cplx> data, int naxes, int n, std::uint64_t axis_mask, Direction dir);

/// Unitary DFT on Z_n^d: (F f)(k) = n^{-d/2} sum_j f(j) e^{-2 pi i <j,k>/n}.
Signal dft(const Signal& f);
Signal idft(const Signal& f);

/// DFT along one index block of a symbol only.
Symbol partial_dft(const Symbol& a, Block block, Direction dir);
/// DFT along both blocks.
Symbol full_dft(const Symbol& a, Direction dir);

/// Trigonometric interpolant of f translated by s: Fourier coefficient k is
/// multiplied by e^{-2 pi i <rep(k), s>/n}. Integer s gives the cyclic shift.
Signal frac_shift(const Signal& f, std::span<const double> s);

/// Relative Frobenius-type distance ||a - b|| / max(||b||, tiny).
double rel_error(std::span<const cplx> a, std::span<const cplx> b) noexcept;
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) noexcept;
double l2_norm(std::span<const cplx> a) noexcept;

}  // namespace psdo
