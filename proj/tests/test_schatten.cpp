#include "psdo/error.hpp"
#include "psdo/schatten.hpp"
#include "psdo/wigner.hpp"
#include "support.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <algorithm>
#include <limits>

using namespace psdo;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

OperatorMatrix diag(const GridSpec& g, std::vector<double> v) {
  OperatorMatrix T = OperatorMatrix::zeros(g);
  for (std::size_t i = 0; i < v.size(); ++i) T.at(i, i) = v[i];
  return T;
}

// sqrt of the eigenvalues of T*T, descending.
std::vector<double> eigen_singular_values(const OperatorMatrix& T) {
  const auto N = static_cast<Eigen::Index>(T.grid.size());
  Eigen::MatrixXcd M(N, N);
  for (Eigen::Index r = 0; r < N; ++r)
    for (Eigen::Index c = 0; c < N; ++c) M(r, c) = T.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M.adjoint() * M);
  std::vector<double> s;
  for (Eigen::Index i = 0; i < N; ++i) s.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i))));
  std::sort(s.rbegin(), s.rend());
  return s;
}

OperatorMatrix dft_matrix(const GridSpec& g) {
  OperatorMatrix F = OperatorMatrix::zeros(g);
  for (std::size_t c = 0; c < g.size(); ++c) {
    const Signal col = dft(Signal::delta(g, c));
    for (std::size_t r = 0; r < g.size(); ++r) F.at(r, c) = col[r];
  }
  return F;
}

}  // namespace

TEST_SUITE("schatten") {

TEST_CASE("singular values of simple matrices") {
  const GridSpec g = GridSpec::make(1, 3);
  const SingularSpectrum s = singular_values(diag(g, {3.0, 4.0, 0.0}));
  CHECK(std::abs(s.values[0] - 4.0) < 1e-14);
  CHECK(std::abs(s.values[1] - 3.0) < 1e-14);
  CHECK(std::abs(s.values[2]) < 1e-14);
  CHECK(numerical_rank(s) == 2);
  for (double v : singular_values(OperatorMatrix::identity(GridSpec::make(1, 9))).values) CHECK(std::abs(v - 1.0) < 1e-14);

  const OperatorMatrix D = diag(g, {3.0, 4.0, 0.0});
  CHECK(std::abs(schatten_norm(D, 1) - 7.0) < 1e-13);
  CHECK(std::abs(schatten_norm(D, 2) - 5.0) < 1e-13);
  CHECK(std::abs(schatten_norm(D, kInf) - 4.0) < 1e-13);
  CHECK_THROWS_AS(schatten_norm(D, 0.0), Error);
  CHECK_THROWS_AS(schatten_norm(D, -1.0), Error);
}

TEST_CASE("singular values match the eigenvalue oracle") {
  Rng rng(61);
  for (int n : {5, 9}) {
    const GridSpec g = GridSpec::make(1, n);
    const OperatorMatrix T = test::random_operator(g, rng);
    const SingularSpectrum s = singular_values(T);
    const std::vector<double> ref = eigen_singular_values(T);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(std::abs(s.values[i] - ref[i]) < 1e-12 * ref[0]);
      if (i > 0) CHECK(s.values[i] <= s.values[i - 1]);
    }
    CHECK(std::abs(schatten_norm(T, 2) - test::frobenius(T.data)) < 1e-12 * test::frobenius(T.data));
  }
}

TEST_CASE("approximation numbers") {
  Rng rng(62);
  const GridSpec g = GridSpec::make(1, 5);
  const OperatorMatrix T = test::random_operator(g, rng);
  const SingularSpectrum s = singular_values(T);
  Eigen::MatrixXcd M(5, 5);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) M(r, c) = T.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  for (int j = 1; j <= 5; ++j) {
    Eigen::MatrixXcd T0 = Eigen::MatrixXcd::Zero(5, 5);
    for (int i = 0; i < j - 1; ++i) T0 += svd.singularValues()(i) * svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
    const double err = Eigen::JacobiSVD<Eigen::MatrixXcd>(M - T0).singularValues()(0);
    CHECK(std::abs(err - s.values[static_cast<std::size_t>(j - 1)]) < 1e-12);
  }
}

TEST_CASE("unitary invariance") {
  Rng rng(63);
  const GridSpec g = GridSpec::make(1, 9);
  const OperatorMatrix T = test::random_operator(g, rng);
  const OperatorMatrix F = dft_matrix(g);
  const OperatorMatrix C = compose(compose(test::adjoint(F), T), F);
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) CHECK(std::abs(schatten_norm(C, p) - schatten_norm(T, p)) < 1e-11 * schatten_norm(T, p));
}

TEST_CASE("symbol schatten norms") {
  Rng rng(64);
  const GridSpec g = GridSpec::make(1, 9);
  for (double p : {1.0, 2.0, 4.0}) {
    CHECK(std::abs(symbol_schatten_norm(Symbol::constant(g, 1.0), MatrixParam::scalar(1, 0.37), p) -
                   std::pow(9.0, 1.0 / p)) < 1e-11);
  }
  Signal f = test::random_signal(g, rng);
  const double nf = l2_norm(f.data);
  for (auto& v : f.data) v /= nf;
  for (double t : {0.0, 0.5, 1.0})
    for (double p : {1.0, 2.0, kInf}) {
      const MatrixParam A = MatrixParam::scalar(1, t);
      CHECK(std::abs(symbol_schatten_norm(rank_one_symbol(f, f, A), A, p) - 1.0) < 1e-12);
    }

  const Symbol a = test::random_symbol(g, rng);
  const MatrixParam A1 = MatrixParam::scalar(1, 0.37), A2 = MatrixParam::scalar(1, -0.2);
  const Symbol moved = symbol_transfer(symbol_transfer(a, A1), -A2);
  for (double p : {1.0, 2.0, 3.0}) {
    CHECK(std::abs(symbol_schatten_norm(moved, A2, p) - symbol_schatten_norm(a, A1, p)) <
          1e-11 * symbol_schatten_norm(a, A1, p));
  }
  for (double t : {0.0, 0.37, 0.5, 1.0})
    CHECK(std::abs(symbol_schatten_norm(a, MatrixParam::scalar(1, t), 2) - l2_norm(a.data) / 3.0) < 1e-11 * l2_norm(a.data));
  const GridSpec g2 = GridSpec::make(2, 5);
  const Symbol a2 = test::random_symbol(g2, rng);
  CHECK(std::abs(symbol_schatten_norm(a2, MatrixParam(2, {0.3, 0.1, -0.2, 0.6}), 2) - l2_norm(a2.data) / 5.0) <
        1e-11 * l2_norm(a2.data));
}

TEST_CASE("trace pairing") {
  Rng rng(65);
  const GridSpec g = GridSpec::make(1, 9);
  CHECK(std::abs(trace_pairing(OperatorMatrix::identity(g), OperatorMatrix::identity(g)) - 9.0) < 1e-14);
  const OperatorMatrix T1 = test::random_operator(g, rng), T2 = test::random_operator(g, rng);
  CHECK(trace_pairing(T1, OperatorMatrix::zeros(g)) == cplx(0.0));
  cplx tr = 0.0;
  const OperatorMatrix P = compose(test::adjoint(T2), T1);
  for (std::size_t i = 0; i < 9; ++i) tr += P.at(i, i);
  CHECK(std::abs(trace_pairing(T1, T2) - tr) < 1e-12 * std::abs(tr));
  CHECK(std::abs(trace_pairing(T1, T2) - test::inner(T1.data, T2.data)) < 1e-12 * std::abs(tr));
  CHECK_THROWS_AS(trace_pairing(T1, OperatorMatrix::identity(GridSpec::make(1, 3))), Error);
}

TEST_CASE("trace duality") {
  Rng rng(66);
  const GridSpec g3 = GridSpec::make(1, 3);
  const DualityResult d1 = duality_check(diag(g3, {3.0, 4.0, 0.0}), 1);
  CHECK(std::abs(d1.lhs - 7.0) < 1e-13);
  CHECK(std::abs(d1.rhs - 7.0) < 1e-13);
  const DualityResult dinf = duality_check(diag(g3, {3.0, 4.0, 0.0}), kInf);
  CHECK(std::abs(dinf.rhs - 4.0) < 1e-13);
  for (int n : {5, 9}) {
    const GridSpec g = GridSpec::make(1, n);
    for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
      const OperatorMatrix T = test::random_operator(g, rng);
      const DualityResult r = duality_check(T, p);
      CHECK(std::abs(r.ratio - 1.0) <= 1e-10);
      CHECK(std::abs(r.dual_norm - 1.0) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(duality_check(diag(g3, {1, 1, 1}), 0.5), Error);
}

TEST_CASE("hoelder inequality") {
  Rng rng(67);
  const GridSpec g = GridSpec::make(1, 9);
  const OperatorMatrix I = OperatorMatrix::identity(g);
  const HoelderResult id = hoelder_check(I, I, 2, 2);
  CHECK(std::abs(id.r - 1.0) < 1e-15);
  CHECK(std::abs(id.lhs - 9.0) < 1e-12);
  CHECK(std::abs(id.rhs - 9.0) < 1e-12);
  const HoelderResult zero = hoelder_check(I, OperatorMatrix::zeros(g), 1, kInf);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.holds);
  int violations = 0;
  for (auto [p1, p2] : {std::pair{1.0, kInf}, std::pair{2.0, 2.0}, std::pair{4.0, 4.0 / 3.0}}) {
    for (int trial = 0; trial < 100; ++trial) {
      const HoelderResult h = hoelder_check(test::random_operator(g, rng), test::random_operator(g, rng), p1, p2);
      if (!h.holds || h.lhs > h.rhs * (1 + 1e-10)) ++violations;
    }
  }
  CHECK(violations == 0);
}

}  // TEST_SUITE
