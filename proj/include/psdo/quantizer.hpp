#pragma once

// The matrix-parameterized calculi a -> Op_A(a) on the cyclic grid.
//
// Op_A is defined through the symbol-transfer multiplier: Op_A(a) =
// Op_0(T_A a), where T_A multiplies the full DFT of a by
// e^{2 pi i <A m, c>/n} (c dual to position, m dual to frequency) and Op_0 is
// the Kohn-Nirenberg matrix. The kernel formula is kept as an independent
// second route.

#include "psdo/grid.hpp"

#include <functional>
#include <span>
#include <vector>

namespace psdo {

/// Real d x d matrix A selecting the operator ordering. Row-major.
class MatrixParam {
 public:
  MatrixParam() = default;
  MatrixParam(int d, std::vector<double> entries);

  static MatrixParam zero(int d) { return scalar(d, 0.0); }
  static MatrixParam identity(int d) { return scalar(d, 1.0); }
  static MatrixParam scalar(int d, double t);

  int dim() const noexcept { return d_; }
  double operator()(int r, int c) const noexcept { return a_[static_cast<std::size_t>(r * d_ + c)]; }
  std::span<const double> entries() const noexcept { return a_; }
  bool is_integer() const noexcept { return integer_; }
  bool is_zero() const noexcept;

  MatrixParam transpose() const;
  MatrixParam operator-() const;
  friend MatrixParam operator+(const MatrixParam& x, const MatrixParam& y);
  friend MatrixParam operator-(const MatrixParam& x, const MatrixParam& y);
  friend MatrixParam operator*(double t, const MatrixParam& x);

  /// y = A x for real vectors.
  void apply(std::span<const double> x, std::span<double> y) const noexcept;
  /// y = A x on integer coordinates (requires is_integer()).
  Coord apply(const Coord& x) const noexcept;

 private:
  int d_ = 0;
  std::vector<double> a_;
  bool integer_ = true;
};

/// Throws ModeMismatch (mod mode with non-integer A) or DimMismatch.
void check_param(const GridSpec& grid, const MatrixParam& A);

enum class Route { multiplier, kernel };

struct QuantizationResult {
  OperatorMatrix matrix;
  MatrixParam param;
  Route route;
};

/// Applies a Fourier multiplier on the symbol's full 2-block DFT. The callback
/// receives c = rep(kappa) (dual to position) and m = rep(mu) (dual to
/// frequency).
Symbol apply_dual_multiplier(const Symbol& a, const std::function<cplx(const Coord& c, const Coord& m)>& multiplier);

/// T_A = e^{i<A D_xi, D_x>}. Unitary, T_A T_B = T_{A+B}, T_0 = identity
/// (returned as an exact copy).
Symbol symbol_transfer(const Symbol& a, const MatrixParam& A);

/// Op_0(b)[j, j'] = n^{-d} sum_k b(j, k) e^{2 pi i <j - j', k>/n}.
OperatorMatrix kohn_nirenberg(const Symbol& b);
/// Exact inverse of kohn_nirenberg.
Symbol kohn_nirenberg_symbol(const OperatorMatrix& K);

OperatorMatrix quantize(const Symbol& a, const MatrixParam& A);
QuantizationResult quantize_via(const Symbol& a, const MatrixParam& A, Route route);

/// K[j, j'] = n^{-d/2} (F_2^{-1} a)(j - A(j - j'), j - j'). Integer A uses
/// exact index arithmetic; real A evaluates the first argument by
/// trigonometric interpolation.
OperatorMatrix kernel_route(const Symbol& a, const MatrixParam& A);

/// Inverse of quantize: symbol_transfer(kohn_nirenberg_symbol(T), -A).
Symbol dequantize(const OperatorMatrix& T, const MatrixParam& A);

/// n^{d/2} W^A_{f1,f2}; quantize of the result is the outer product f1 f2^*.
Symbol rank_one_symbol(const Signal& f1, const Signal& f2, const MatrixParam& A);

/// Table of flattened differences (j - j') mod n over all pairs, row-major.
const std::vector<std::size_t>& difference_table(const GridSpec& grid);

}  // namespace psdo
