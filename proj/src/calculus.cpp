#include "psdo/calculus.hpp"

#include "psdo/error.hpp"
#include "psdo/rng.hpp"
#include "psdo/schatten.hpp"

#include <algorithm>
#include <cmath>

namespace psdo {

Symbol sharp(const Symbol& a, const Symbol& b, const MatrixParam& A) {
  if (!(a.grid == b.grid)) throw Error(Errc::domain_mismatch, "sharp: factors live on different grids");
  return dequantize(compose(quantize(a, A), quantize(b, A)), A);
}

Symbol sharp_n(const std::vector<Symbol>& factors, const MatrixParam& A) {
  if (factors.size() < 2) throw Error(Errc::arity_mismatch, "sharp_n needs at least two factors");
  OperatorMatrix acc = quantize(factors.front(), A);
  for (std::size_t i = 1; i < factors.size(); ++i) {
    if (!(factors[i].grid == factors.front().grid)) {
      throw Error(Errc::domain_mismatch, "sharp_n: factors live on different grids");
    }
    acc = compose(acc, quantize(factors[i], A));
  }
  return dequantize(acc, A);
}

double sharp_transfer_check(const Symbol& a, const Symbol& b, const MatrixParam& A, const MatrixParam& B) {
  if (a.grid.mode != Mode::real) throw Error(Errc::mode_mismatch, "transfer formula is checked in real mode");
  const MatrixParam D = A - B;
  const Symbol lhs = sharp(a, b, A);
  const Symbol rhs = symbol_transfer(sharp(symbol_transfer(a, D), symbol_transfer(b, D), B), -D);
  return max_abs_diff(lhs.data, rhs.data);
}

nlohmann::json AlgReport::to_json() const {
  nlohmann::json j;
  j["factors"] = factors;
  j["predicates"] = {{"pqconditions", pqconditions},
                     {"pqconditions3", pqconditions3},
                     {"weightcondAcalc", weight_condition}};
  j["hy_functional_p"] = hy_p;
  j["weight_constant"] = weight_constant;
  j["estimated"] = estimated;
  if (estimated) {
    j["draws"] = draws;
    j["max_ratio"] = max_ratio;
    j["median_ratio"] = median_ratio;
  }
  return j;
}

AlgReport alg_hypotheses_report(const ExponentTuple& exponents, const std::vector<Weight>& weights,
                                const MatrixParam& A, const GridSpec& grid, std::uint64_t seed,
                                std::size_t draws) {
  if (exponents.p_list.size() != exponents.q_list.size() || exponents.p_list.size() != weights.size()) {
    throw Error(Errc::arity_mismatch, "need p_0..p_N, q_0..q_N and omega_0..omega_N of equal length");
  }
  AlgReport r;
  r.factors = exponents.p_list.size() - 1;
  r.pqconditions = holds_pqconditions(exponents);
  r.pqconditions3 = holds_pqconditions3(exponents);
  r.hy_p = to_string(hy_functional(exponents.p_list));
  const CheckResult wc = holds_weightcondAcalc(weights, A, grid);
  r.weight_condition = wc.holds;
  r.weight_constant = wc.constant;
  if (!(r.pqconditions || r.pqconditions3) || !r.weight_condition || draws == 0) return r;

  const MixedNormParams target{exponents.p_list[0].conjugate().value(), exponents.q_list[0].conjugate().value()};
  const Weight target_weight = weights[0].inverse();
  Rng rng = Rng(seed).split("alg-hypotheses");
  std::vector<double> ratios;
  ratios.reserve(draws);
  const std::size_t size = grid.size() * grid.size();
  for (std::size_t s = 0; s < draws; ++s) {
    Rng draw = rng.split(s);
    std::vector<Symbol> factors;
    double denom = 1.0;
    for (std::size_t j = 1; j <= r.factors; ++j) {
      factors.emplace_back(grid, draw.complex_normal(size));
      const MixedNormParams pq{exponents.p_list[j].value(), exponents.q_list[j].value()};
      denom *= symbol_modulation_norm(factors.back(), pq, weights[j]);
    }
    ratios.push_back(symbol_modulation_norm(sharp_n(factors, A), target, target_weight) / denom);
  }
  r.estimated = true;
  r.draws = draws;
  r.max_ratio = *std::max_element(ratios.begin(), ratios.end());
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  r.median_ratio = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  return r;
}

}  // namespace psdo
