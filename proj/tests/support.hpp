#pragma once

// Shared fixtures and brute-force oracles for the unit and acceptance tests.
// Oracles evaluate defining sums directly and never call the library routine
// they are checking.

#include "psdo/grid.hpp"
#include "psdo/quantizer.hpp"
#include "psdo/rng.hpp"

#include <cmath>
#include <numbers>

namespace psdo::test {

inline Signal random_signal(const GridSpec& g, Rng& rng) { return Signal(g, rng.complex_normal(g.size())); }

inline Symbol random_symbol(const GridSpec& g, Rng& rng) {
  return Symbol(g, rng.complex_normal(g.size() * g.size()));
}

inline Symbol random_real_symbol(const GridSpec& g, Rng& rng) {
  CVec v(g.size() * g.size());
  for (auto& z : v) z = rng.normal();
  return Symbol(g, std::move(v));
}

inline OperatorMatrix random_operator(const GridSpec& g, Rng& rng) {
  return OperatorMatrix(g, rng.complex_normal(g.size() * g.size()));
}

inline cplx phase(double turns) { return std::polar(1.0, 2.0 * std::numbers::pi * turns); }

inline Coord centered(std::size_t idx, const GridSpec& g) {
  Coord c = unflatten(idx, g);
  for (int i = 0; i < g.d; ++i) c[static_cast<std::size_t>(i)] = rep(c[static_cast<std::size_t>(i)], g.n);
  return c;
}

/// Op_0(b)[j,j'] = n^{-d} sum_k b(j,k) e^{2 pi i <j-j',k>/n}.
inline OperatorMatrix kn_direct(const Symbol& b) {
  const GridSpec& g = b.grid;
  const std::size_t N = g.size();
  OperatorMatrix K = OperatorMatrix::zeros(g);
  const double scale = std::pow(static_cast<double>(g.n), -g.d);
  for (std::size_t j = 0; j < N; ++j) {
    const Coord cj = unflatten(j, g);
    for (std::size_t jp = 0; jp < N; ++jp) {
      const Coord cjp = unflatten(jp, g);
      cplx s = 0.0;
      for (std::size_t k = 0; k < N; ++k) {
        const Coord ck = unflatten(k, g);
        long t = 0;
        for (int i = 0; i < g.d; ++i) t += (cj[static_cast<std::size_t>(i)] - cjp[static_cast<std::size_t>(i)]) * ck[static_cast<std::size_t>(i)];
        s += b.at(j, k) * phase(static_cast<double>(mod(t, g.n)) / g.n);
      }
      K.at(j, jp) = scale * s;
    }
  }
  return K;
}

/// Op_A(a) f(x) = n^{-d} sum_{y,k} a(x - A(x-y), k) f(y) e^{2 pi i <x-y,k>/n}
/// for integer A, as a matrix.
inline OperatorMatrix op_integer_direct(const Symbol& a, const MatrixParam& A) {
  const GridSpec& g = a.grid;
  const std::size_t N = g.size();
  OperatorMatrix K = OperatorMatrix::zeros(g);
  const double scale = std::pow(static_cast<double>(g.n), -g.d);
  for (std::size_t x = 0; x < N; ++x) {
    const Coord cx = unflatten(x, g);
    for (std::size_t y = 0; y < N; ++y) {
      const Coord cy = unflatten(y, g);
      Coord diff{};
      for (int i = 0; i < g.d; ++i) diff[static_cast<std::size_t>(i)] = cx[static_cast<std::size_t>(i)] - cy[static_cast<std::size_t>(i)];
      const Coord ad = A.apply(diff);
      Coord arg{};
      for (int i = 0; i < g.d; ++i) arg[static_cast<std::size_t>(i)] = cx[static_cast<std::size_t>(i)] - ad[static_cast<std::size_t>(i)];
      const std::size_t row = flatten(arg, g);
      cplx s = 0.0;
      for (std::size_t k = 0; k < N; ++k) {
        const long t = dot(diff, unflatten(k, g), g.d);
        s += a.at(row, k) * phase(static_cast<double>(mod(t, g.n)) / g.n);
      }
      K.at(x, y) = scale * s;
    }
  }
  return K;
}

/// (T_A a) by explicit forward and inverse double sums of the 2-block DFT
/// with phase e^{2 pi i <A rep(mu), rep(kappa)>/n}.
inline Symbol transfer_direct(const Symbol& a, const MatrixParam& A) {
  const GridSpec& g = a.grid;
  const std::size_t N = g.size();
  const double scale = std::pow(static_cast<double>(g.n), -g.d);
  CVec hat(N * N);
  for (std::size_t kappa = 0; kappa < N; ++kappa) {
    const Coord ck = unflatten(kappa, g);
    for (std::size_t mu = 0; mu < N; ++mu) {
      const Coord cm = unflatten(mu, g);
      cplx s = 0.0;
      for (std::size_t x = 0; x < N; ++x) {
        const long tx = dot(unflatten(x, g), ck, g.d);
        for (std::size_t xi = 0; xi < N; ++xi) {
          const long t = tx + dot(unflatten(xi, g), cm, g.d);
          s += a.at(x, xi) * phase(-static_cast<double>(mod(t, g.n)) / g.n);
        }
      }
      const Coord rk = centered(kappa, g), rm = centered(mu, g);
      double th = 0.0;
      for (int r = 0; r < g.d; ++r) {
        double am = 0.0;
        for (int c = 0; c < g.d; ++c) am += A(r, c) * static_cast<double>(rm[static_cast<std::size_t>(c)]);
        th += am * static_cast<double>(rk[static_cast<std::size_t>(r)]);
      }
      hat[kappa * N + mu] = scale * s * phase(th / g.n);
    }
  }
  Symbol out = Symbol::zeros(g);
  for (std::size_t x = 0; x < N; ++x) {
    const Coord cx = unflatten(x, g);
    for (std::size_t xi = 0; xi < N; ++xi) {
      const Coord cxi = unflatten(xi, g);
      cplx s = 0.0;
      for (std::size_t kappa = 0; kappa < N; ++kappa) {
        const long tk = dot(cx, unflatten(kappa, g), g.d);
        for (std::size_t mu = 0; mu < N; ++mu) {
          const long t = tk + dot(cxi, unflatten(mu, g), g.d);
          s += hat[kappa * N + mu] * phase(static_cast<double>(mod(t, g.n)) / g.n);
        }
      }
      out.at(x, xi) = scale * s;
    }
  }
  return out;
}

inline cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

inline Signal apply(const OperatorMatrix& T, const Signal& f) {
  Signal out = Signal::zeros(f.grid);
  const std::size_t N = T.dim();
  for (std::size_t r = 0; r < N; ++r) {
    cplx s = 0.0;
    for (std::size_t c = 0; c < N; ++c) s += T.at(r, c) * f[c];
    out[r] = s;
  }
  return out;
}

inline OperatorMatrix adjoint(const OperatorMatrix& T) {
  OperatorMatrix out = OperatorMatrix::zeros(T.grid);
  for (std::size_t r = 0; r < T.dim(); ++r)
    for (std::size_t c = 0; c < T.dim(); ++c) out.at(r, c) = std::conj(T.at(c, r));
  return out;
}

inline double hermitian_defect(const OperatorMatrix& T) {
  return max_abs_diff(T.data, adjoint(T).data);
}

inline double frobenius(std::span<const cplx> a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace psdo::test
