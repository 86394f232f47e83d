#include "psdo/error.hpp"
#include "psdo/wigner.hpp"
#include "support.hpp"

#include <doctest.h>

#include <vector>

using namespace psdo;
using test::phase;
using test::random_signal;

namespace {

long idx_dot(std::size_t a, std::size_t b, const GridSpec& g) { return dot(unflatten(a, g), unflatten(b, g), g.d); }

std::size_t shift(std::size_t a, std::size_t b, const GridSpec& g, long sb) {
  Coord ca = unflatten(a, g);
  const Coord cb = unflatten(b, g);
  for (int i = 0; i < g.d; ++i) ca[static_cast<std::size_t>(i)] += sb * cb[static_cast<std::size_t>(i)];
  return flatten(ca, g);
}

std::size_t apply_int(const MatrixParam& A, std::size_t a, const GridSpec& g) { return flatten(A.apply(unflatten(a, g)), g); }

CVec stft_direct(const Signal& f, const Signal& phi) {
  const GridSpec& g = f.grid;
  const std::size_t N = g.size();
  CVec out(N * N);
  const double scale = std::pow(static_cast<double>(g.n), -0.5 * g.d);
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = 0; k < N; ++k) {
      cplx s = 0.0;
      for (std::size_t y = 0; y < N; ++y)
        s += f[y] * std::conj(phi[shift(y, j, g, -1)]) * phase(-static_cast<double>(idx_dot(y, k, g)) / g.n);
      out[j * N + k] = scale * s;
    }
  return out;
}

CVec wigner_direct(const Signal& f1, const Signal& f2, const MatrixParam& A) {
  const GridSpec& g = f1.grid;
  const std::size_t N = g.size();
  CVec out(N * N);
  const double scale = std::pow(static_cast<double>(g.n), -0.5 * g.d);
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = 0; k < N; ++k) {
      cplx s = 0.0;
      for (std::size_t y = 0; y < N; ++y) {
        const std::size_t first = shift(j, apply_int(A, y, g), g, 1);
        s += f1[first] * std::conj(f2[shift(first, y, g, -1)]) * phase(-static_cast<double>(idx_dot(y, k, g)) / g.n);
      }
      out[j * N + k] = scale * s;
    }
  return out;
}

// (x, xi, eta, y) entry of the doubled-grid STFT, straight from the definition.
cplx symbol_stft_direct(const CVec& a, const CVec& Phi, const GridSpec& g, std::size_t x, std::size_t xi,
                        std::size_t eta, std::size_t y) {
  const std::size_t N = g.size();
  cplx s = 0.0;
  for (std::size_t u = 0; u < N; ++u)
    for (std::size_t v = 0; v < N; ++v) {
      const double turns = -static_cast<double>(idx_dot(u, eta, g) + idx_dot(v, y, g)) / g.n;
      s += a[u * N + v] * std::conj(Phi[shift(u, x, g, -1) * N + shift(v, xi, g, -1)]) * phase(turns);
    }
  return s / std::pow(static_cast<double>(g.n), static_cast<double>(g.d));
}

// Lemma right side with phase sign `sign` on <y, xi>.
cplx lemma_rhs_direct(const CVec& Vf, const CVec& Vg, const MatrixParam& A, const GridSpec& g, std::size_t x,
                      std::size_t xi, std::size_t eta, std::size_t y, int sign) {
  const std::size_t N = g.size();
  const MatrixParam AT = A.transpose();
  const std::size_t ay = apply_int(A, y, g), ateta = apply_int(AT, eta, g);
  const std::size_t i1 = shift(x, ay, g, -1);
  const std::size_t i2 = shift(shift(xi, ateta, g, -1), eta, g, 1);
  const std::size_t i3 = shift(i1, y, g, 1);
  const std::size_t i4 = shift(xi, ateta, g, -1);
  return phase(sign * static_cast<double>(idx_dot(y, xi, g)) / g.n) * Vf[i1 * N + i2] * std::conj(Vg[i3 * N + i4]);
}

Signal reversed(const Signal& f) {
  Signal r = Signal::zeros(f.grid);
  for (std::size_t y = 0; y < f.grid.size(); ++y) {
    Coord c = unflatten(y, f.grid);
    for (int i = 0; i < f.grid.d; ++i) c[static_cast<std::size_t>(i)] = -c[static_cast<std::size_t>(i)];
    r[y] = f[flatten(c, f.grid)];
  }
  return r;
}

}  // namespace

TEST_SUITE("wigner") {

TEST_CASE("stft against the direct sum") {
  Rng rng(31);
  for (auto [d, n] : {std::pair{1, 9}, std::pair{2, 3}}) {
    const GridSpec g = GridSpec::make(d, n);
    const Signal f = random_signal(g, rng), phi = random_signal(g, rng);
    CHECK(max_abs_diff(stft(f, phi).data, stft_direct(f, phi)) < 1e-12);
  }
}

TEST_CASE("stft examples") {
  const GridSpec g = GridSpec::make(1, 9);
  const Signal d0 = Signal::delta(g);
  const TimeFrequencyArray V = stft(d0, d0);
  for (std::size_t j = 0; j < 9; ++j)
    for (std::size_t k = 0; k < 9; ++k) CHECK(std::abs(V.at(j, k) - (j == 0 ? 1.0 / 3.0 : 0.0)) < 1e-15);

  Rng rng(32);
  const Signal f = random_signal(g, rng);
  const Signal phi = default_window(g);
  CHECK(std::abs(l2_norm(phi.data) - 1.0) < 1e-15);
  CHECK(std::abs(l2_norm(stft(f, phi).data) - l2_norm(f.data)) < 1e-12 * l2_norm(f.data));
  const Signal psi = random_signal(g, rng);
  CHECK(std::abs(l2_norm(stft(f, psi).data) - l2_norm(f.data) * l2_norm(psi.data)) <
        1e-12 * l2_norm(f.data) * l2_norm(psi.data));

  const long m = 4;
  Signal fs = Signal::zeros(g);
  for (long j = 0; j < 9; ++j) fs[static_cast<std::size_t>(j)] = f[static_cast<std::size_t>(mod(j - m, 9))];
  const TimeFrequencyArray A = stft(f, phi), B = stft(fs, phi);
  for (long j = 0; j < 9; ++j)
    for (std::size_t k = 0; k < 9; ++k)
      CHECK(std::abs(std::abs(B.at(static_cast<std::size_t>(mod(j + m, 9)), k)) -
                     std::abs(A.at(static_cast<std::size_t>(j), k))) < 1e-13);

  CHECK_THROWS_AS(stft(f, Signal::zeros(g)), Error);
}

TEST_CASE("mod-mode wigner against the direct sum") {
  Rng rng(33);
  for (auto [d, n] : {std::pair{1, 9}, std::pair{2, 3}}) {
    const GridSpec g = GridSpec::make(d, n, Mode::mod);
    for (double t : {0.0, 1.0, -1.0, 2.0}) {
      const MatrixParam A = MatrixParam::scalar(d, t);
      const Signal f1 = random_signal(g, rng), f2 = random_signal(g, rng);
      const TimeFrequencyArray W = wigner(f1, f2, A);
      CHECK(max_abs_diff(W.data, wigner_direct(f1, f2, A)) < 1e-12);
      const TimeFrequencyArray Wr = wigner(Signal(g.with_mode(Mode::real), f1.data),
                                           Signal(g.with_mode(Mode::real), f2.data), A);
      CHECK(max_abs_diff(Wr.data, W.data) < 1e-12);
    }
  }
  CHECK_THROWS_AS(wigner(Signal::delta(GridSpec::make(1, 9, Mode::mod)), Signal::delta(GridSpec::make(1, 9, Mode::mod)),
                         MatrixParam::scalar(1, 0.5)),
                  Error);
}

TEST_CASE("wigner at A = 0 has a closed form") {
  Rng rng(34);
  for (Mode m : {Mode::real, Mode::mod}) {
    const GridSpec g = GridSpec::make(1, 9, m);
    const Signal f1 = random_signal(g, rng), f2 = random_signal(g, rng);
    const Signal F2 = dft(f2);
    const TimeFrequencyArray W = wigner(f1, f2, MatrixParam::zero(1));
    for (std::size_t j = 0; j < 9; ++j)
      for (std::size_t k = 0; k < 9; ++k) {
        const cplx closed = f1[j] * phase(-static_cast<double>(j * k) / 9.0) * std::conj(F2[k]);
        CHECK(std::abs(W.at(j, k) - closed) < 1e-12);
      }
  }
  const GridSpec g = GridSpec::make(1, 9);
  const Signal d0 = Signal::delta(g);
  const TimeFrequencyArray W = wigner(d0, d0, MatrixParam::zero(1));
  for (std::size_t j = 0; j < 9; ++j)
    for (std::size_t k = 0; k < 9; ++k) CHECK(std::abs(W.at(j, k) - (j == 0 ? 1.0 / 3.0 : 0.0)) < 1e-14);
}

TEST_CASE("wigner is sesquilinear and preserves l2 norms") {
  Rng rng(35);
  const GridSpec g = GridSpec::make(1, 9);
  const cplx al(1.5, -0.5), be(0.2, 0.9);
  const Signal f1 = random_signal(g, rng), f2 = random_signal(g, rng);
  Signal af = f1, bf = f2;
  for (auto& v : af.data) v *= al;
  for (auto& v : bf.data) v *= be;
  const MatrixParam A = MatrixParam::scalar(1, 0.37);
  const TimeFrequencyArray W = wigner(f1, f2, A), Ws = wigner(af, bf, A);
  for (std::size_t i = 0; i < W.data.size(); ++i) CHECK(std::abs(Ws.data[i] - al * std::conj(be) * W.data[i]) < 1e-12);

  for (Mode m : {Mode::mod, Mode::real}) {
    const GridSpec gm = g.with_mode(m);
    for (double t : {0.0, 1.0, -1.0, 2.0, 0.5}) {
      if (m == Mode::mod && t == 0.5) continue;
      const Signal a = random_signal(gm, rng), b = random_signal(gm, rng);
      const double expected = l2_norm(a.data) * l2_norm(b.data);
      CHECK(std::abs(l2_norm(wigner(a, b, MatrixParam::scalar(1, t)).data) - expected) < 1e-12 * expected);
    }
  }
}

TEST_CASE("pseudo-differential link") {
  Rng rng(36);
  for (Mode m : {Mode::real, Mode::mod}) {
    for (auto [d, n] : {std::pair{1, 9}, std::pair{2, 3}}) {
      const GridSpec g = GridSpec::make(d, n, m);
      for (double t : {0.0, 1.0, 0.5, 0.37}) {
        if (m == Mode::mod && t != std::round(t)) continue;
        const MatrixParam A = MatrixParam::scalar(d, t);
        const Symbol a = test::random_symbol(g, rng);
        const Signal f = random_signal(g, rng), h = random_signal(g, rng);
        const cplx lhs = test::inner(test::apply(quantize(a, A), f).data, h.data);
        const cplx rhs = std::pow(static_cast<double>(n), -0.5 * d) * test::inner(a.data, wigner(h, f, A).data);
        CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(lhs));
      }
    }
  }
}

TEST_CASE("weyl-stft relation constants are fixed by exhaustive n = 3 search") {
  Rng rng(37);
  const GridSpec g = GridSpec::make(1, 3, Mode::mod);
  const MatrixParam half = MatrixParam::scalar(1, 2.0);
  int matches = 0;
  double found_c = 0.0;
  long found_s = -1;
  for (double c : {1.0, 2.0}) {
    for (long s = 0; s < 3; ++s) {
      bool ok = true;
      for (int trial = 0; trial < 3; ++trial) {
        const Signal f = random_signal(g, rng), phi = random_signal(g, rng);
        // Oracle: W from the direct sum, V from the direct stft.
        const CVec W = wigner_direct(f, phi, half);
        const CVec V = stft_direct(f, reversed(phi));
        for (std::size_t j = 0; j < 3 && ok; ++j)
          for (std::size_t k = 0; k < 3 && ok; ++k) {
            const cplx rhs = c * phase(static_cast<double>(s * static_cast<long>(j * k)) / 3.0) *
                             V[static_cast<std::size_t>(mod(2 * static_cast<long>(j), 3)) * 3 +
                               static_cast<std::size_t>(mod(2 * static_cast<long>(k), 3))];
            if (std::abs(W[j * 3 + k] - rhs) > 1e-12) ok = false;
          }
      }
      if (ok) {
        ++matches;
        found_c = c;
        found_s = s;
      }
    }
  }
  CHECK(matches == 1);
  CHECK(found_c == 1.0);
  CHECK(found_s == 2);
}

TEST_CASE("weyl-stft relation") {
  Rng rng(38);
  for (int n : {3, 9, 17}) {
    const GridSpec g = GridSpec::make(1, n, Mode::mod);
    const Signal f = random_signal(g, rng), phi = random_signal(g, rng);
    CHECK(weyl_wigner_stft_relation_check(f, phi) < 1e-10);
    CHECK(weyl_wigner_stft_deviation(f, phi, 2.0, 2) > 1e-3);
  }
  const GridSpec g2 = GridSpec::make(2, 5, Mode::mod);
  CHECK(weyl_wigner_stft_relation_check(random_signal(g2, rng), random_signal(g2, rng)) < 1e-10);

  const GridSpec g = GridSpec::make(1, 9, Mode::mod);
  const Signal d0 = Signal::delta(g);
  const MatrixParam half = MatrixParam::scalar(1, 5.0);
  const TimeFrequencyArray W = wigner(d0, d0, half);
  for (std::size_t j = 1; j < 9; ++j)
    for (std::size_t k = 0; k < 9; ++k) CHECK(std::abs(W.at(j, k)) < 1e-15);
  CHECK(weyl_wigner_stft_relation_check(d0, d0) < 1e-14);
  CHECK_THROWS_AS(weyl_wigner_stft_relation_check(Signal::delta(GridSpec::make(1, 9)), Signal::delta(GridSpec::make(1, 9))),
                  Error);
}

TEST_CASE("stft-of-wigner lemma: the phase is fixed by n = 3 brute force") {
  Rng rng(39);
  const GridSpec g = GridSpec::make(1, 3, Mode::mod);
  for (double t : {0.0, 1.0, 2.0}) {
    const MatrixParam A = MatrixParam::scalar(1, t);
    const Signal f = random_signal(g, rng), h = random_signal(g, rng), phi = random_signal(g, rng),
                 psi = random_signal(g, rng);
    const CVec W = wigner_direct(f, h, A), Phi = wigner_direct(phi, psi, A);
    const CVec Vf = stft_direct(f, phi), Vg = stft_direct(h, psi);
    double dev[3] = {0.0, 0.0, 0.0};
    const FourDArray lib = stft_of_wigner(f, h, phi, psi, A);
    const FourDArray lib_rhs = stft_of_wigner_rhs(f, h, phi, psi, A);
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t xi = 0; xi < 3; ++xi)
        for (std::size_t eta = 0; eta < 3; ++eta)
          for (std::size_t y = 0; y < 3; ++y) {
            const cplx lhs = symbol_stft_direct(W, Phi, g, x, xi, eta, y);
            CHECK(std::abs(lib.at(x, xi, eta, y) - lhs) < 1e-12);
            for (int sign : {-1, 0, 1})
              dev[sign + 1] = std::max(dev[sign + 1], std::abs(lhs - lemma_rhs_direct(Vf, Vg, A, g, x, xi, eta, y, sign)));
            CHECK(std::abs(lib_rhs.at(x, xi, eta, y) - lemma_rhs_direct(Vf, Vg, A, g, x, xi, eta, y, -1)) < 1e-12);
          }
    CHECK(dev[0] < 1e-12);
    CHECK(dev[1] > 1e-6);
    CHECK(dev[2] > 1e-6);
  }
  const GridSpec gd = GridSpec::make(1, 3, Mode::mod);
  const Signal d0 = Signal::delta(gd);
  const FourDArray L = stft_of_wigner(d0, d0, d0, d0, MatrixParam::zero(1));
  const FourDArray R = stft_of_wigner_rhs(d0, d0, d0, d0, MatrixParam::zero(1));
  CHECK(max_abs_diff(L.data, R.data) < 1e-14);
}

TEST_CASE("stft-of-wigner lemma at n = 9") {
  Rng rng(40);
  const GridSpec g = GridSpec::make(1, 9, Mode::mod);
  for (double t : {0.0, 1.0, -1.0}) {
    const MatrixParam A = MatrixParam::scalar(1, t);
    const Signal f = random_signal(g, rng), h = random_signal(g, rng), phi = default_window(g),
                 psi = random_signal(g, rng);
    const FourDArray L = stft_of_wigner(f, h, phi, psi, A);
    CHECK(max_abs_diff(L.data, stft_of_wigner_rhs(f, h, phi, psi, A).data) < 1e-10);
    Rng sampler(1);
    CHECK(stft_of_wigner_sampled_deviation(f, h, phi, psi, A, sampler, 200) < 1e-10);

    const cplx beta(0.5, 2.0);
    Signal hb = h;
    for (auto& v : hb.data) v *= beta;
    const FourDArray Lb = stft_of_wigner(f, hb, phi, psi, A);
    for (std::size_t i = 0; i < L.data.size(); i += 97) CHECK(std::abs(Lb.data[i] - std::conj(beta) * L.data[i]) < 1e-12);
  }
  const GridSpec g2 = GridSpec::make(2, 9, Mode::mod);
  const MatrixParam A2(2, {1.0, 1.0, 0.0, 1.0});
  Rng sampler(2);
  CHECK(stft_of_wigner_sampled_deviation(random_signal(g2, rng), random_signal(g2, rng), default_window(g2),
                                         random_signal(g2, rng), A2, sampler, 50) < 1e-10);
  CHECK_THROWS_AS(stft_of_wigner(random_signal(g2, rng), random_signal(g2, rng), default_window(g2),
                                 default_window(g2), A2),
                  Error);
}

TEST_CASE("symbol stft against the direct sum") {
  Rng rng(41);
  const GridSpec g = GridSpec::make(1, 5);
  const Symbol a = test::random_symbol(g, rng), Phi = test::random_symbol(g, rng);
  const FourDArray V = stft_symbol(a, Phi);
  for (std::size_t s = 0; s < 40; ++s) {
    const std::size_t x = rng.index(5), xi = rng.index(5), eta = rng.index(5), y = rng.index(5);
    const cplx ref = symbol_stft_direct(a.data, Phi.data, g, x, xi, eta, y);
    CHECK(std::abs(V.at(x, xi, eta, y) - ref) < 1e-12);
    CHECK(std::abs(stft_symbol_entry(a, Phi, x, xi, eta, y) - ref) < 1e-12);
  }
}

TEST_CASE("exponential operator commutes with the symbol stft") {
  Rng rng(42);
  const GridSpec g3 = GridSpec::make(1, 3, Mode::mod);
  for (double t : {1.0, 2.0}) {
    const MatrixParam A = MatrixParam::scalar(1, t);
    const Symbol a = test::random_symbol(g3, rng), phi = test::random_symbol(g3, rng);
    // Both sides from direct sums, with the transfer taken from its own oracle.
    const Symbol Ta = test::transfer_direct(a, A), Tphi = test::transfer_direct(phi, A);
    double worst = 0.0;
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t xi = 0; xi < 3; ++xi)
        for (std::size_t eta = 0; eta < 3; ++eta)
          for (std::size_t y = 0; y < 3; ++y) {
            const cplx lhs = symbol_stft_direct(Ta.data, Tphi.data, g3, x, xi, eta, y);
            const std::size_t ay = static_cast<std::size_t>(mod(static_cast<long>(t) * static_cast<long>(y), 3));
            const std::size_t ateta = static_cast<std::size_t>(mod(static_cast<long>(t) * static_cast<long>(eta), 3));
            const cplx rhs = phase(static_cast<double>(ay * eta) / 3.0) *
                             symbol_stft_direct(a.data, phi.data, g3, (x + ay) % 3, (xi + ateta) % 3, eta, y);
            worst = std::max(worst, std::abs(lhs - rhs));
          }
    CHECK(worst < 1e-12);
    CHECK(expop_stft_check(a, phi, A) < 1e-12);
  }

  const GridSpec g = GridSpec::make(1, 9, Mode::mod);
  const Symbol a = test::random_symbol(g, rng);
  const Symbol phi = default_symbol_window(g);
  CHECK(expop_stft_check(a, phi, MatrixParam::zero(1)) == 0.0);
  CHECK(expop_stft_check(a, phi, MatrixParam::scalar(1, 1.0)) < 1e-10);
  CHECK(expop_stft_check(a, phi, MatrixParam::scalar(1, -1.0)) < 1e-10);
  Rng sampler(3);
  CHECK(expop_stft_sampled_deviation(a, phi, MatrixParam::scalar(1, 1.0), sampler, 100) < 1e-10);
  const GridSpec g2 = GridSpec::make(2, 5, Mode::mod);
  CHECK(expop_stft_sampled_deviation(test::random_symbol(g2, rng), default_symbol_window(g2),
                                     MatrixParam(2, {1.0, 2.0, 0.0, 1.0}), sampler, 40) < 1e-10);
  CHECK_THROWS_AS(expop_stft_check(Symbol(g.with_mode(Mode::real), a.data), Symbol(g.with_mode(Mode::real), phi.data),
                                   MatrixParam::scalar(1, 1.0)),
                  Error);
}

}  // TEST_SUITE

TEST_SUITE("wigner") {

TEST_CASE("parallel transforms are bitwise independent of the worker count") {
  Rng rng(404);
  const GridSpec g = GridSpec::make(2, 5, Mode::mod);
  const Signal f = test::random_signal(g, rng), h = test::random_signal(g, rng);
  const Signal phi = default_window(g), psi = test::random_signal(g, rng);
  const MatrixParam A = MatrixParam::scalar(2, 1.0);
  auto run_all = [&](const char* threads) {
    ::setenv("PSDO_THREADS", threads, 1);
    std::vector<CVec> out = {stft(f, phi).data, wigner(f, h, A).data, stft_of_wigner_rhs(f, h, phi, psi, A).data};
    ::unsetenv("PSDO_THREADS");
    return out;
  };
  const auto one = run_all("1");
  const auto many = run_all("5");
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i] == many[i]);
}

}  // TEST_SUITE
