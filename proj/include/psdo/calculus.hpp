#pragma once

// Sharp products a #_A b, N-fold products, the cross-calculus transfer
// formula and hypothesis reports for the multilinear composition results.

#include "psdo/grid.hpp"
#include "psdo/modspace.hpp"
#include "psdo/quantizer.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace psdo {

/// dequantize(Op_A(a) Op_A(b), A).
Symbol sharp(const Symbol& a, const Symbol& b, const MatrixParam& A);
/// Left fold a_1 #_A a_2 #_A ... #_A a_N, computed as one operator product.
Symbol sharp_n(const std::vector<Symbol>& factors, const MatrixParam& A);

/// max |a #_A b - T_{A-B}^{-1}((T_{A-B} a) #_B (T_{A-B} b))|. Real mode.
double sharp_transfer_check(const Symbol& a, const Symbol& b, const MatrixParam& A, const MatrixParam& B);

struct AlgReport {
  std::size_t factors = 0;  // N
  bool pqconditions = false;
  bool pqconditions3 = false;
  bool weight_condition = false;
  double weight_constant = 0.0;
  std::string hy_p;  // R_N(p), exact
  bool estimated = false;
  std::size_t draws = 0;
  double max_ratio = 0.0;
  double median_ratio = 0.0;

  nlohmann::json to_json() const;
};

/// Evaluates the exponent and weight hypotheses for N = p_list.size() - 1
/// factors; if a set holds, estimates
/// ||a_1 # ... # a_N||_{M^{p0',q0'}_{(1/omega_0)}} / prod_j ||a_j||_{M^{p_j,q_j}_{(omega_j)}}
/// over `draws` random factor tuples.
AlgReport alg_hypotheses_report(const ExponentTuple& exponents, const std::vector<Weight>& weights,
                                const MatrixParam& A, const GridSpec& grid, std::uint64_t seed,
                                std::size_t draws = 50);

}  // namespace psdo
