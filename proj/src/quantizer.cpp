#include "psdo/quantizer.hpp"

#include "psdo/error.hpp"
#include "psdo/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

namespace psdo {

MatrixParam::MatrixParam(int d, std::vector<double> entries) : d_(d), a_(std::move(entries)) {
  if (d < 1 || a_.size() != static_cast<std::size_t>(d * d)) {
    throw Error(Errc::dim_mismatch, "matrix parameter needs d*d entries");
  }
  integer_ = std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v) && v == std::round(v); });
}

MatrixParam MatrixParam::scalar(int d, double t) {
  std::vector<double> e(static_cast<std::size_t>(d * d), 0.0);
  for (int i = 0; i < d; ++i) e[static_cast<std::size_t>(i * d + i)] = t;
  return MatrixParam(d, std::move(e));
}

bool MatrixParam::is_zero() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return v == 0.0; });
}

MatrixParam MatrixParam::transpose() const {
  std::vector<double> e(a_.size());
  for (int r = 0; r < d_; ++r)
    for (int c = 0; c < d_; ++c) e[static_cast<std::size_t>(c * d_ + r)] = (*this)(r, c);
  return MatrixParam(d_, std::move(e));
}

MatrixParam MatrixParam::operator-() const { return -1.0 * *this; }

MatrixParam operator+(const MatrixParam& x, const MatrixParam& y) {
  if (x.d_ != y.d_) throw Error(Errc::dim_mismatch, "matrix parameter dimensions differ");
  std::vector<double> e(x.a_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = x.a_[i] + y.a_[i];
  return MatrixParam(x.d_, std::move(e));
}

MatrixParam operator-(const MatrixParam& x, const MatrixParam& y) {
  if (x.d_ != y.d_) throw Error(Errc::dim_mismatch, "matrix parameter dimensions differ");
  std::vector<double> e(x.a_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = x.a_[i] - y.a_[i];
  return MatrixParam(x.d_, std::move(e));
}

MatrixParam operator*(double t, const MatrixParam& x) {
  std::vector<double> e(x.a_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = t * x.a_[i];
  return MatrixParam(x.d_, std::move(e));
}

void MatrixParam::apply(std::span<const double> x, std::span<double> y) const noexcept {
  for (int r = 0; r < d_; ++r) {
    double s = 0.0;
    for (int c = 0; c < d_; ++c) s += (*this)(r, c) * x[static_cast<std::size_t>(c)];
    y[static_cast<std::size_t>(r)] = s;
  }
}

Coord MatrixParam::apply(const Coord& x) const noexcept {
  Coord y{};
  for (int r = 0; r < d_; ++r) {
    long s = 0;
    for (int c = 0; c < d_; ++c) s += static_cast<long>((*this)(r, c)) * x[static_cast<std::size_t>(c)];
    y[static_cast<std::size_t>(r)] = s;
  }
  return y;
}

void check_param(const GridSpec& grid, const MatrixParam& A) {
  if (A.dim() != grid.d) {
    throw Error(Errc::dim_mismatch, "matrix parameter is " + std::to_string(A.dim()) + "x" +
                                        std::to_string(A.dim()) + " but grid has d = " + std::to_string(grid.d));
  }
  if (grid.mode == Mode::mod && !A.is_integer()) {
    throw Error(Errc::mode_mismatch, "mod mode requires an integer matrix parameter");
  }
}

const std::vector<std::size_t>& difference_table(const GridSpec& grid) {
  static std::mutex lock;
  static std::map<std::pair<int, int>, std::vector<std::size_t>> cache;
  std::scoped_lock guard(lock);
  auto key = std::make_pair(grid.d, grid.n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const std::size_t N = grid.size();
  std::vector<std::size_t> table(N * N);
  for (std::size_t j = 0; j < N; ++j) {
    const Coord cj = unflatten(j, grid);
    for (std::size_t jp = 0; jp < N; ++jp) {
      const Coord cjp = unflatten(jp, grid);
      Coord diff{};
      for (int a = 0; a < grid.d; ++a) diff[static_cast<std::size_t>(a)] = cj[static_cast<std::size_t>(a)] - cjp[static_cast<std::size_t>(a)];
      table[j * N + jp] = flatten(diff, grid);
    }
  }
  return cache.emplace(key, std::move(table)).first->second;
}

Symbol apply_dual_multiplier(const Symbol& a, const std::function<cplx(const Coord& c, const Coord& m)>& multiplier) {
  const GridSpec& g = a.grid;
  const std::size_t N = g.size();
  Symbol hat = full_dft(a, Direction::forward);
  for (std::size_t kappa = 0; kappa < N; ++kappa) {
    Coord c = unflatten(kappa, g);
    for (int i = 0; i < g.d; ++i) c[static_cast<std::size_t>(i)] = rep(c[static_cast<std::size_t>(i)], g.n);
    for (std::size_t mu = 0; mu < N; ++mu) {
      Coord m = unflatten(mu, g);
      for (int i = 0; i < g.d; ++i) m[static_cast<std::size_t>(i)] = rep(m[static_cast<std::size_t>(i)], g.n);
      hat.at(kappa, mu) *= multiplier(c, m);
    }
  }
  return full_dft(hat, Direction::inverse);
}

Symbol symbol_transfer(const Symbol& a, const MatrixParam& A) {
  const GridSpec& g = a.grid;
  check_param(g, A);
  if (A.is_zero()) return a;
  const std::size_t N = g.size();
  Symbol hat = full_dft(a, Direction::forward);
  if (g.mode == Mode::mod) {
    const PhaseTable phase(g.n);
    for (std::size_t kappa = 0; kappa < N; ++kappa) {
      const Coord c = unflatten(kappa, g);
      for (std::size_t mu = 0; mu < N; ++mu) {
        const Coord am = A.apply(unflatten(mu, g));
        long r = 0;
        for (int i = 0; i < g.d; ++i) r = mod(r + mod(am[static_cast<std::size_t>(i)], g.n) * c[static_cast<std::size_t>(i)], g.n);
        hat.at(kappa, mu) *= phase(r);
      }
    }
  } else {
    std::vector<double> m(static_cast<std::size_t>(g.d)), am(static_cast<std::size_t>(g.d));
    for (std::size_t kappa = 0; kappa < N; ++kappa) {
      const Coord c = unflatten(kappa, g);
      for (std::size_t mu = 0; mu < N; ++mu) {
        const Coord mc = unflatten(mu, g);
        for (int i = 0; i < g.d; ++i) m[static_cast<std::size_t>(i)] = static_cast<double>(rep(mc[static_cast<std::size_t>(i)], g.n));
        A.apply(m, am);
        double theta = 0.0;
        for (int i = 0; i < g.d; ++i) theta += am[static_cast<std::size_t>(i)] * static_cast<double>(rep(c[static_cast<std::size_t>(i)], g.n));
        hat.at(kappa, mu) *= std::polar(1.0, kTwoPi * theta / g.n);
      }
    }
  }
  return full_dft(hat, Direction::inverse);
}

OperatorMatrix kohn_nirenberg(const Symbol& b) {
  const GridSpec& g = b.grid;
  const std::size_t N = g.size();
  const Symbol G = partial_dft(b, Block::frequency, Direction::inverse);
  const auto& diff = difference_table(g);
  const double scale = std::pow(static_cast<double>(g.n), -0.5 * g.d);
  OperatorMatrix K = OperatorMatrix::zeros(g);
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t jp = 0; jp < N; ++jp) K.at(j, jp) = scale * G.at(j, diff[j * N + jp]);
  }
  return K;
}

Symbol kohn_nirenberg_symbol(const OperatorMatrix& K) {
  const GridSpec& g = K.grid;
  const std::size_t N = g.size();
  const auto& diff = difference_table(g);
  const double scale = std::pow(static_cast<double>(g.n), 0.5 * g.d);
  Symbol G = Symbol::zeros(g);
  // K[j, j'] sits at G(j, j - j').
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t jp = 0; jp < N; ++jp) G.at(j, diff[j * N + jp]) = scale * K.at(j, jp);
  }
  return partial_dft(G, Block::frequency, Direction::forward);
}

OperatorMatrix quantize(const Symbol& a, const MatrixParam& A) { return kohn_nirenberg(symbol_transfer(a, A)); }

QuantizationResult quantize_via(const Symbol& a, const MatrixParam& A, Route route) {
  OperatorMatrix m = route == Route::multiplier ? quantize(a, A) : kernel_route(a, A);
  return {std::move(m), A, route};
}

OperatorMatrix kernel_route(const Symbol& a, const MatrixParam& A) {
  const GridSpec& g = a.grid;
  check_param(g, A);
  const std::size_t N = g.size();
  const Symbol G = partial_dft(a, Block::frequency, Direction::inverse);
  const auto& diff = difference_table(g);
  const double scale = std::pow(static_cast<double>(g.n), -0.5 * g.d);
  OperatorMatrix K = OperatorMatrix::zeros(g);

  if (A.is_integer()) {
    for (std::size_t j = 0; j < N; ++j) {
      const Coord cj = unflatten(j, g);
      for (std::size_t jp = 0; jp < N; ++jp) {
        const std::size_t z = diff[j * N + jp];
        const Coord az = A.apply(unflatten(z, g));
        Coord x{};
        for (int i = 0; i < g.d; ++i) x[static_cast<std::size_t>(i)] = cj[static_cast<std::size_t>(i)] - az[static_cast<std::size_t>(i)];
        K.at(j, jp) = scale * G.at(flatten(x, g), z);
      }
    }
    return K;
  }

  // Real A: column z of G is shifted by s = A rep(z) through trigonometric
  // interpolation, then read off at x = j.
  std::vector<double> zr(static_cast<std::size_t>(g.d)), s(static_cast<std::size_t>(g.d));
  std::vector<CVec> shifted(N);
  for (std::size_t z = 0; z < N; ++z) {
    Signal column = Signal::zeros(g);
    for (std::size_t x = 0; x < N; ++x) column[x] = G.at(x, z);
    const Coord cz = unflatten(z, g);
    for (int i = 0; i < g.d; ++i) zr[static_cast<std::size_t>(i)] = static_cast<double>(rep(cz[static_cast<std::size_t>(i)], g.n));
    A.apply(zr, s);
    shifted[z] = frac_shift(column, s).data;
  }
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t jp = 0; jp < N; ++jp) K.at(j, jp) = scale * shifted[diff[j * N + jp]][j];
  }
  return K;
}

Symbol dequantize(const OperatorMatrix& T, const MatrixParam& A) {
  check_param(T.grid, A);
  return symbol_transfer(kohn_nirenberg_symbol(T), -A);
}

Symbol rank_one_symbol(const Signal& f1, const Signal& f2, const MatrixParam& A) {
  TimeFrequencyArray w = wigner(f1, f2, A);
  const double scale = std::pow(static_cast<double>(f1.grid.n), 0.5 * f1.grid.d);
  for (auto& v : w.data) v *= scale;
  return Symbol(f1.grid, std::move(w.data));
}

}  // namespace psdo
