#include "psdo/schatten.hpp"

#include "psdo/error.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace psdo {

namespace {

using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const Mat> view(const OperatorMatrix& T) {
  const auto m = static_cast<Eigen::Index>(T.dim());
  return {T.data.data(), m, m};
}

void require_exponent(double p) {
  if (!(p > 0.0)) throw Error(Errc::invalid_exponent, "Schatten exponent must be in (0, inf]");
}

void require_same_dim(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim()) throw Error(Errc::dim_mismatch, "operator dimensions differ");
}

}  // namespace

SingularSpectrum singular_values(const OperatorMatrix& T) {
  Eigen::JacobiSVD<Mat> svd(view(T));
  const auto& s = svd.singularValues();
  SingularSpectrum out;
  out.values.assign(s.data(), s.data() + s.size());
  return out;
}

std::size_t numerical_rank(const SingularSpectrum& s) {
  if (s.values.empty() || s.values.front() == 0.0) return 0;
  const double floor = kRankTolerance * s.values.front();
  return static_cast<std::size_t>(std::count_if(s.values.begin(), s.values.end(), [&](double v) { return v > floor; }));
}

double schatten_norm(const SingularSpectrum& s, double p) {
  require_exponent(p);
  if (std::isinf(p)) return s.values.empty() ? 0.0 : s.values.front();
  double sum = 0.0;
  if (p == 2.0) {
    for (double v : s.values) sum += v * v;
    return std::sqrt(sum);
  }
  for (double v : s.values) sum += std::pow(v, p);
  return std::pow(sum, 1.0 / p);
}

double schatten_norm(const OperatorMatrix& T, double p) { return schatten_norm(singular_values(T), p); }

double symbol_schatten_norm(const Symbol& a, const MatrixParam& A, double p) {
  return schatten_norm(quantize(a, A), p);
}

cplx trace_pairing(const OperatorMatrix& T1, const OperatorMatrix& T2) {
  require_same_dim(T1, T2);
  // Tr(T2^* T1) = sum_{r,c} T1[r,c] conj(T2[r,c]), accumulated in index order.
  cplx sum = 0.0;
  for (std::size_t i = 0; i < T1.data.size(); ++i) sum += T1.data[i] * std::conj(T2.data[i]);
  return sum;
}

OperatorMatrix compose(const OperatorMatrix& T2, const OperatorMatrix& T1) {
  require_same_dim(T1, T2);
  OperatorMatrix out = OperatorMatrix::zeros(T1.grid);
  const auto m = static_cast<Eigen::Index>(T1.dim());
  Eigen::Map<Mat>(out.data.data(), m, m).noalias() = view(T2) * view(T1);
  return out;
}

DualityResult duality_check(const OperatorMatrix& T, double p) {
  if (!(p >= 1.0)) throw Error(Errc::invalid_exponent, "duality needs p in [1, inf]");
  Eigen::JacobiSVD<Mat> svd(view(T), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::Index m = s.size();
  SingularSpectrum spec;
  spec.values.assign(s.data(), s.data() + m);
  const double norm = schatten_norm(spec, p);

  Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
  double pc = 0.0;
  if (std::isinf(p)) {
    if (m > 0) w(0) = 1.0;
    pc = 1.0;
  } else if (p == 1.0) {
    w.setOnes();
    pc = std::numeric_limits<double>::infinity();
  } else {
    pc = p / (p - 1.0);
    for (Eigen::Index i = 0; i < m; ++i) w(i) = norm > 0.0 ? std::pow(s(i) / norm, p - 1.0) : 0.0;
  }
  OperatorMatrix T0 = OperatorMatrix::zeros(T.grid);
  Eigen::Map<Mat>(T0.data.data(), m, m) =
      svd.matrixU() * w.cast<cplx>().asDiagonal() * svd.matrixV().adjoint();

  DualityResult r;
  r.lhs = norm;
  r.rhs = std::abs(trace_pairing(T, T0));
  r.ratio = norm > 0.0 ? r.rhs / r.lhs : 1.0;
  r.dual_norm = schatten_norm(T0, pc);
  return r;
}

HoelderResult hoelder_check(const OperatorMatrix& T1, const OperatorMatrix& T2, double p1, double p2) {
  require_exponent(p1);
  require_exponent(p2);
  require_same_dim(T1, T2);
  const double inv_r = (std::isinf(p1) ? 0.0 : 1.0 / p1) + (std::isinf(p2) ? 0.0 : 1.0 / p2);
  HoelderResult h;
  h.r = inv_r == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inv_r;
  h.lhs = schatten_norm(compose(T2, T1), h.r);
  h.rhs = schatten_norm(T1, p1) * schatten_norm(T2, p2);
  h.holds = h.lhs <= h.rhs * (1.0 + 1e-10);
  return h;
}

}  // namespace psdo
