#include "psdo/wigner.hpp"

#include "psdo/error.hpp"
#include "psdo/parallel.hpp"
#include "psdo/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace psdo {

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
  if (!(a == b)) throw Error(Errc::domain_mismatch, std::string(what) + ": inputs live on different grids");
}

void require_mod(const GridSpec& g, const MatrixParam& A, const char* what) {
  check_param(g, A);
  if (g.mode != Mode::mod) throw Error(Errc::mode_mismatch, std::string(what) + " requires mod mode");
}

Coord add(const Coord& a, const Coord& b, int d, long sb = 1) {
  Coord c{};
  for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] + sb * b[static_cast<std::size_t>(i)];
  return c;
}

// V(x, w) = n^{-d/2} sum_y f(y) conj(phi(y - x)) e^{-2 pi i <y,w>/n} on grid g.
CVec stft_raw(std::span<const cplx> f, std::span<const cplx> phi, const GridSpec& g) {
  const std::size_t N = g.size();
  if (simd::norm_sq(phi) == 0.0) throw Error(Errc::zero_window, "window is identically zero");
  const auto& diff = difference_table(g);
  const std::uint64_t mask = (1ULL << g.d) - 1;
  CVec out(N * N);
  parallel_for(N, [&](std::size_t begin, std::size_t end) {
    for (std::size_t x = begin; x < end; ++x) {
      std::span<cplx> row(out.data() + x * N, N);
      for (std::size_t y = 0; y < N; ++y) row[y] = f[y] * std::conj(phi[diff[y * N + x]]);
      dft_axes(row, g.d, g.n, mask, Direction::forward);
    }
  });
  return out;
}

GridSpec doubled(const GridSpec& g) {
  if (2 * g.d > kMaxDim) throw Error(Errc::size_limit, "symbol STFT needs 2d <= " + std::to_string(kMaxDim));
  return {2 * g.d, g.n, g.mode};
}

double gaussian_1d(long j, int n) {
  double s = 0.0;
  const long r = rep(j, n);
  for (int m = -3; m <= 3; ++m) {
    const double t = static_cast<double>(r + static_cast<long>(m) * n);
    s += std::exp(-std::numbers::pi * t * t / n);
  }
  return s;
}

}  // namespace

void check_4d_size(const GridSpec& grid) {
  const double entries = std::pow(static_cast<double>(grid.n), 4.0 * grid.d);
  if (entries > static_cast<double>(kMax4dEntries)) {
    throw Error(Errc::size_limit, "n^{4d} = " + std::to_string(static_cast<long long>(entries)) +
                                      " entries exceeds the materialization limit of " +
                                      std::to_string(kMax4dEntries));
  }
}

TimeFrequencyArray stft(const Signal& f, const Signal& phi) {
  require_same_grid(f.grid, phi.grid, "stft");
  return {f.grid, stft_raw(f.data, phi.data, f.grid), TfKind::stft};
}

FourDArray stft_symbol(const Symbol& a, const Symbol& Phi) {
  require_same_grid(a.grid, Phi.grid, "symbol stft");
  check_4d_size(a.grid);
  return {a.grid, stft_raw(a.data, Phi.data, doubled(a.grid))};
}

cplx stft_symbol_entry(const Symbol& a, const Symbol& Phi, std::size_t x, std::size_t xi, std::size_t eta,
                       std::size_t y) {
  require_same_grid(a.grid, Phi.grid, "symbol stft");
  const GridSpec& g = a.grid;
  const std::size_t N = g.size();
  const PhaseTable phase(g.n);
  const Coord cx = unflatten(x, g), cxi = unflatten(xi, g), ceta = unflatten(eta, g), cy = unflatten(y, g);
  cplx sum = 0.0;
  for (std::size_t u = 0; u < N; ++u) {
    const Coord cu = unflatten(u, g);
    const std::size_t ux = flatten(add(cu, cx, g.d, -1), g);
    const long pu = dot(cu, ceta, g.d);
    for (std::size_t k = 0; k < N; ++k) {
      const Coord ck = unflatten(k, g);
      const std::size_t kxi = flatten(add(ck, cxi, g.d, -1), g);
      sum += a.at(u, k) * std::conj(Phi.at(ux, kxi)) * phase(-(pu + dot(ck, cy, g.d)));
    }
  }
  return sum / std::pow(static_cast<double>(g.n), static_cast<double>(g.d));
}

TimeFrequencyArray wigner(const Signal& f1, const Signal& f2, const MatrixParam& A) {
  require_same_grid(f1.grid, f2.grid, "wigner");
  const GridSpec& g = f1.grid;
  check_param(g, A);
  const std::size_t N = g.size();
  if (g.mode == Mode::real) {
    Symbol b = dequantize(OperatorMatrix::outer(f1, f2), A);
    const double scale = std::pow(static_cast<double>(g.n), -0.5 * g.d);
    for (auto& v : b.data) v *= scale;
    return {g, std::move(b.data), TfKind::wigner};
  }
  const std::uint64_t mask = (1ULL << g.d) - 1;
  CVec out(N * N);
  parallel_for(N, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const Coord cj = unflatten(j, g);
      std::span<cplx> row(out.data() + j * N, N);
      for (std::size_t y = 0; y < N; ++y) {
        const Coord cy = unflatten(y, g);
        const Coord first = add(cj, A.apply(cy), g.d);
        const Coord second = add(first, cy, g.d, -1);
        row[y] = f1[flatten(first, g)] * std::conj(f2[flatten(second, g)]);
      }
      dft_axes(row, g.d, g.n, mask, Direction::forward);
    }
  });
  return {g, std::move(out), TfKind::wigner};
}

double weyl_wigner_stft_deviation(const Signal& f, const Signal& phi, double c, long s) {
  require_same_grid(f.grid, phi.grid, "weyl/stft relation");
  const GridSpec& g = f.grid;
  if (g.mode != Mode::mod) throw Error(Errc::mode_mismatch, "weyl/stft relation requires mod mode");
  const std::size_t N = g.size();
  const MatrixParam half = MatrixParam::scalar(g.d, static_cast<double>((g.n + 1) / 2));
  const TimeFrequencyArray W = wigner(f, phi, half);
  Signal check = Signal::zeros(g);
  for (std::size_t y = 0; y < N; ++y) {
    Coord cy = unflatten(y, g);
    for (int i = 0; i < g.d; ++i) cy[static_cast<std::size_t>(i)] = -cy[static_cast<std::size_t>(i)];
    check[y] = phi[flatten(cy, g)];
  }
  const TimeFrequencyArray V = stft(f, check);
  const PhaseTable phase(g.n);
  double worst = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    const Coord cj = unflatten(j, g);
    const std::size_t j2 = flatten(add(cj, cj, g.d), g);
    for (std::size_t k = 0; k < N; ++k) {
      const Coord ck = unflatten(k, g);
      const std::size_t k2 = flatten(add(ck, ck, g.d), g);
      const cplx rhs = c * phase(s * dot(cj, ck, g.d)) * V.at(j2, k2);
      worst = std::max(worst, std::abs(W.at(j, k) - rhs));
    }
  }
  return worst;
}

double weyl_wigner_stft_relation_check(const Signal& f, const Signal& phi) {
  return weyl_wigner_stft_deviation(f, phi, 1.0, 2);
}

FourDArray stft_of_wigner(const Signal& f, const Signal& g, const Signal& phi, const Signal& psi,
                          const MatrixParam& A) {
  require_mod(f.grid, A, "stft of wigner");
  check_4d_size(f.grid);
  const TimeFrequencyArray W = wigner(f, g, A);
  const TimeFrequencyArray Phi = wigner(phi, psi, A);
  return stft_symbol(W.as_symbol(), Phi.as_symbol());
}

namespace {

struct LemmaRhs {
  const GridSpec& g;
  TimeFrequencyArray Vf, Vg;
  MatrixParam A, AT;
  PhaseTable phase;

  LemmaRhs(const Signal& f, const Signal& gs, const Signal& phi, const Signal& psi, const MatrixParam& a)
      : g(f.grid), Vf(stft(f, phi)), Vg(stft(gs, psi)), A(a), AT(a.transpose()), phase(f.grid.n) {}

  cplx operator()(std::size_t x, std::size_t xi, std::size_t eta, std::size_t y) const {
    const int d = g.d;
    const Coord cx = unflatten(x, g), cxi = unflatten(xi, g), ceta = unflatten(eta, g), cy = unflatten(y, g);
    const Coord ay = A.apply(cy), ateta = AT.apply(ceta);
    const Coord i1 = add(cx, ay, d, -1);
    const Coord i2 = add(add(cxi, ateta, d, -1), ceta, d);
    const Coord i3 = add(i1, cy, d);
    const Coord i4 = add(cxi, ateta, d, -1);
    return phase(-dot(cy, cxi, d)) * Vf.at(flatten(i1, g), flatten(i2, g)) *
           std::conj(Vg.at(flatten(i3, g), flatten(i4, g)));
  }
};

}  // namespace

FourDArray stft_of_wigner_rhs(const Signal& f, const Signal& g, const Signal& phi, const Signal& psi,
                              const MatrixParam& A) {
  require_mod(f.grid, A, "stft of wigner");
  check_4d_size(f.grid);
  const LemmaRhs rhs(f, g, phi, psi, A);
  const std::size_t N = f.grid.size();
  FourDArray out{f.grid, CVec(N * N * N * N)};
  parallel_for(N, [&](std::size_t begin, std::size_t end) {
    for (std::size_t x = begin; x < end; ++x)
      for (std::size_t xi = 0; xi < N; ++xi)
        for (std::size_t eta = 0; eta < N; ++eta)
          for (std::size_t y = 0; y < N; ++y) out.at(x, xi, eta, y) = rhs(x, xi, eta, y);
  });
  return out;
}

double stft_of_wigner_sampled_deviation(const Signal& f, const Signal& g, const Signal& phi, const Signal& psi,
                                        const MatrixParam& A, Rng& rng, std::size_t samples) {
  require_mod(f.grid, A, "stft of wigner");
  const Symbol W = wigner(f, g, A).as_symbol();
  const Symbol Phi = wigner(phi, psi, A).as_symbol();
  const LemmaRhs rhs(f, g, phi, psi, A);
  const std::size_t N = f.grid.size();
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t x = rng.index(N), xi = rng.index(N), eta = rng.index(N), y = rng.index(N);
    worst = std::max(worst, std::abs(stft_symbol_entry(W, Phi, x, xi, eta, y) - rhs(x, xi, eta, y)));
  }
  return worst;
}

double expop_stft_check(const Symbol& a, const Symbol& phi, const MatrixParam& A) {
  require_same_grid(a.grid, phi.grid, "expop stft");
  const GridSpec& g = a.grid;
  require_mod(g, A, "expop stft");
  check_4d_size(g);
  const FourDArray lhs = stft_symbol(symbol_transfer(a, A), symbol_transfer(phi, A));
  const FourDArray V = stft_symbol(a, phi);
  const MatrixParam AT = A.transpose();
  const PhaseTable phase(g.n);
  const std::size_t N = g.size();
  double worst = 0.0;
  for (std::size_t x = 0; x < N; ++x) {
    const Coord cx = unflatten(x, g);
    for (std::size_t xi = 0; xi < N; ++xi) {
      const Coord cxi = unflatten(xi, g);
      for (std::size_t eta = 0; eta < N; ++eta) {
        const Coord ceta = unflatten(eta, g);
        const std::size_t xi2 = flatten(add(cxi, AT.apply(ceta), g.d), g);
        for (std::size_t y = 0; y < N; ++y) {
          const Coord ay = A.apply(unflatten(y, g));
          const std::size_t x2 = flatten(add(cx, ay, g.d), g);
          const cplx rhs = phase(dot(ay, ceta, g.d)) * V.at(x2, xi2, eta, y);
          worst = std::max(worst, std::abs(lhs.at(x, xi, eta, y) - rhs));
        }
      }
    }
  }
  return worst;
}

double expop_stft_sampled_deviation(const Symbol& a, const Symbol& phi, const MatrixParam& A, Rng& rng,
                                    std::size_t samples) {
  require_same_grid(a.grid, phi.grid, "expop stft");
  const GridSpec& g = a.grid;
  require_mod(g, A, "expop stft");
  const Symbol Ta = symbol_transfer(a, A), Tphi = symbol_transfer(phi, A);
  const MatrixParam AT = A.transpose();
  const PhaseTable phase(g.n);
  const std::size_t N = g.size();
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t x = rng.index(N), xi = rng.index(N), eta = rng.index(N), y = rng.index(N);
    const Coord ceta = unflatten(eta, g);
    const Coord ay = A.apply(unflatten(y, g));
    const std::size_t x2 = flatten(add(unflatten(x, g), ay, g.d), g);
    const std::size_t xi2 = flatten(add(unflatten(xi, g), AT.apply(ceta), g.d), g);
    const cplx rhs = phase(dot(ay, ceta, g.d)) * stft_symbol_entry(a, phi, x2, xi2, eta, y);
    worst = std::max(worst, std::abs(stft_symbol_entry(Ta, Tphi, x, xi, eta, y) - rhs));
  }
  return worst;
}

Signal default_window(const GridSpec& grid) {
  const std::size_t N = grid.size();
  Signal w = Signal::zeros(grid);
  for (std::size_t j = 0; j < N; ++j) {
    const Coord c = unflatten(j, grid);
    double v = 1.0;
    for (int i = 0; i < grid.d; ++i) v *= gaussian_1d(c[static_cast<std::size_t>(i)], grid.n);
    w[j] = v;
  }
  const double norm = l2_norm(w.data);
  for (auto& v : w.data) v /= norm;
  return w;
}

Symbol default_symbol_window(const GridSpec& grid) {
  const Signal w = default_window(grid);
  const std::size_t N = grid.size();
  Symbol s = Symbol::zeros(grid);
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = 0; k < N; ++k) s.at(j, k) = w[j] * w[k];
  return s;
}

}  // namespace psdo
