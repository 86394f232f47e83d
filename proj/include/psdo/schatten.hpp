#pragma once

// Singular numbers and Schatten-von Neumann norms of operator matrices, the
// symbol classes s_{A,p} (unweighted), trace duality and Hoelder's
// inequality for compositions.

#include "psdo/grid.hpp"
#include "psdo/quantizer.hpp"

#include <vector>

namespace psdo {

struct SingularSpectrum {
  std::vector<double> values;  // nonincreasing, >= 0
};

/// Relative floor below which singular values count as zero in rank statements.
inline constexpr double kRankTolerance = 1e-13;

SingularSpectrum singular_values(const OperatorMatrix& T);
std::size_t numerical_rank(const SingularSpectrum& s);

/// l^p norm of the spectrum; p in (0, inf], inf gives the operator norm.
double schatten_norm(const SingularSpectrum& s, double p);
double schatten_norm(const OperatorMatrix& T, double p);

/// ||Op_A(a)||_{I_p}.
double symbol_schatten_norm(const Symbol& a, const MatrixParam& A, double p);

/// (T1, T2)_{I_2} = Tr(T2^* T1).
cplx trace_pairing(const OperatorMatrix& T1, const OperatorMatrix& T2);

/// T2 * T1 as matrices (apply T1 first).
OperatorMatrix compose(const OperatorMatrix& T2, const OperatorMatrix& T1);

struct DualityResult {
  double lhs = 0.0;    // ||T||_{I_p}
  double rhs = 0.0;    // |(T, T0)_{I_2}| at the optimizer
  double ratio = 1.0;  // rhs / lhs
  double dual_norm = 0.0;  // ||T0||_{I_p'}, 1 up to roundoff
};
/// Evaluates the pairing at T0 = U diag(w) V^* with w the l^{p'}-unit vector
/// dual to the singular values; p in [1, inf].
DualityResult duality_check(const OperatorMatrix& T, double p);

struct HoelderResult {
  double r = 0.0;
  double lhs = 0.0;  // ||T2 T1||_{I_r}
  double rhs = 0.0;  // ||T1||_{I_p1} ||T2||_{I_p2}
  bool holds = false;
};
/// 1/r = 1/p1 + 1/p2.
HoelderResult hoelder_check(const OperatorMatrix& T1, const OperatorMatrix& T2, double p1, double p2);

}  // namespace psdo
