#pragma once

// Moderate weights, weighted mixed sequence norms, modulation-space norms and
// the weight/exponent hypotheses of the boundedness and composition results.
//
// Norms use counting measure on the grid. Weights are functions on R^m
// evaluated at scaled centered coordinates: a position index j contributes
// rep(j), a frequency index k contributes 2*pi*rep(k)/n.

#include "psdo/grid.hpp"
#include "psdo/quantizer.hpp"
#include "psdo/wigner.hpp"

#include <json.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace psdo {

// ---------------------------------------------------------------- exponents

/// Exact rational number, normalized with positive denominator.
struct Rational {
  long num = 0;
  long den = 1;

  Rational() = default;
  Rational(long n, long d = 1);

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend Rational operator/(Rational a, Rational b);
  friend bool operator==(const Rational& a, const Rational& b) noexcept { return a.num == b.num && a.den == b.den; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;
};

std::string to_string(const Rational& r);

/// Lebesgue exponent in (0, inf], stored as the exact reciprocal 1/p
/// (reciprocal 0 is p = inf).
class Exponent {
 public:
  Exponent() : Exponent(1) {}
  Exponent(long p) : Exponent(Rational(p)) {}  // NOLINT: integers read naturally as exponents
  explicit Exponent(Rational p);

  static Exponent infinity() { return from_reciprocal(Rational(0)); }
  static Exponent from_reciprocal(Rational r);
  /// Rationalizes a double (continued fractions, denominators up to 10^6).
  static Exponent from_double(double p);
  /// "inf", "infinity", "3/2", "2" or a plain number.
  static Exponent parse(const std::string& text);
  static Exponent from_json(const nlohmann::json& j);

  Rational reciprocal() const noexcept { return inv_; }
  bool is_infinite() const noexcept { return inv_.num == 0; }
  double value() const noexcept;
  /// Hoelder conjugate: 1/p' = 1 - 1/p.
  Exponent conjugate() const;

  std::string to_string() const;
  nlohmann::json to_json() const;

  /// Order of the exponents themselves (p <= q iff 1/p >= 1/q).
  friend bool operator==(const Exponent& a, const Exponent& b) noexcept { return a.inv_ == b.inv_; }
  friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) noexcept { return b.inv_ <=> a.inv_; }

 private:
  Rational inv_{1};
};

struct ExponentTuple {
  std::vector<Exponent> p_list;
  std::vector<Exponent> q_list;
};

struct MixedNormParams {
  double p = 2.0;  // inner, over positions
  double q = 2.0;  // outer, over frequencies
};

/// R_N(p) = (N - 1)^{-1} (sum_{j=0}^N 1/p_j - 1) for N + 1 >= 3 entries.
Rational hy_functional(const std::vector<Exponent>& p_list);

/// 1/p1 - 1/p2 = 1/q1 - 1/q2 = 1 - 1/p - 1/q and q <= p2, q2 <= p.
/// p_list = (p, p1, p2), q_list = (q, q1, q2).
bool holds_A5(const ExponentTuple& t);
/// p1 <= p <= p2, q1 <= min(p, p'), q2 >= max(p, p').
/// p_list = (p, p1, p2), q_list = (q1, q2).
bool holds_A6(const ExponentTuple& t);
/// 1/p1 + 1/p2 = 1/q1 + 1/q2 = 1/p + 1/q. p_list = (p, p1, p2), q_list = (q, q1, q2).
bool holds_A8(const ExponentTuple& t);
/// holds_A8 together with p <= p_j, q_j <= q.
bool holds_A8_range(const ExponentTuple& t);
/// max(R_N(q'), 0) <= min_j(1/p_j, 1/q_j', R_N(p)); p_list and q_list both have N + 1 entries.
bool holds_pqconditions(const ExponentTuple& t);
/// R_N(p) >= 0 and 1/q_j' <= 1/p_j <= 1/2 for every j.
bool holds_pqconditions3(const ExponentTuple& t);

// ------------------------------------------------------------------ weights

enum class WeightKind { polynomial, exponential, product, custom };

/// Positive function on R^{blocks * d}. Product weights are tensor products:
/// each factor consumes its own consecutive blocks.
class Weight {
 public:
  static Weight polynomial(double s, int blocks = 2);
  static Weight exponential(double c, double s, int blocks = 2);
  static Weight product(std::vector<Weight> factors);
  /// Samples on the index grid Z_n^{blocks*d}, row-major; evaluation at a
  /// real point rounds coordinate/scale to the nearest index mod n.
  static Weight custom(int blocks, int d, int n, std::vector<double> block_scales, std::vector<double> samples);
  static Weight one(int blocks = 2) { return polynomial(0.0, blocks); }

  WeightKind kind() const noexcept { return kind_; }
  int blocks() const noexcept { return blocks_; }
  bool is_one() const noexcept;

  double operator()(std::span<const double> X) const;
  /// 1/omega, of the same kind (exponent negated) when possible.
  Weight inverse() const;

  nlohmann::json to_json() const;
  static Weight from_json(const nlohmann::json& j, int default_blocks = 2);

 private:
  WeightKind kind_ = WeightKind::polynomial;
  int blocks_ = 2;
  double s_ = 0.0;
  double c_ = 0.0;
  std::vector<Weight> factors_;
  int d_ = 0;
  int n_ = 0;
  std::vector<double> scales_;
  std::shared_ptr<const std::vector<double>> samples_;
};

/// Scale per block for the standard layouts: 1 -> (1), 2 -> (1, 2pi/n),
/// 4 -> (1, 2pi/n, 2pi/n, 1) for (x, xi, eta, y).
std::vector<double> block_scales(int blocks, int n);

/// omega at every grid point of Z_n^{blocks*d}, row-major, using `scales`.
std::vector<double> sample_weight(const Weight& w, const GridSpec& grid, std::span<const double> scales);

struct CheckResult {
  bool holds = false;
  double constant = 0.0;
};

/// Exhaustive pair enumeration up to this many pairs, sampling above it.
inline constexpr std::size_t kExhaustivePairs = 1'000'000;
inline constexpr std::size_t kSampledPairs = 100'000;
inline constexpr std::uint64_t kWeightSeed = 0x5EEDF00DULL;

/// C = max omega(X+Y)/(omega(X) v(Y)) over grid pairs, with X + Y summed in
/// real scaled coordinates.
CheckResult moderate_check(const Weight& omega, const Weight& v, const GridSpec& grid);

/// Inner l^p over rows sharing a column, outer l^q over columns:
/// F is row-major (rows x cols) and w holds the weight per entry (empty = 1).
double mixed_norm(std::span<const cplx> F, std::size_t rows, std::size_t cols, const MixedNormParams& params,
                  std::span<const double> w = {});
double mixed_norm(const TimeFrequencyArray& F, const MixedNormParams& params, const Weight& omega);
double mixed_norm(const FourDArray& F, const MixedNormParams& params, const Weight& omega);

double modulation_norm(const Signal& f, const MixedNormParams& params, const Weight& omega, const Signal& phi);
double modulation_norm(const Signal& f, const MixedNormParams& params, const Weight& omega);
double symbol_modulation_norm(const Symbol& a, const MixedNormParams& params, const Weight& omega,
                              const Symbol& Phi);
double symbol_modulation_norm(const Symbol& a, const MixedNormParams& params, const Weight& omega);

/// Constant C with ||V_psi f||_{p,q} <= C ||V_phi f||_{p,q} for every f and
/// every unweighted mixed norm: n^{-d/2} ||V_psi phi||_1 / ||phi||^2.
double window_change_bound(const Signal& phi, const Signal& psi);

/// omega2(x,xi)/omega1(y,eta) <= C omega(x,y,xi,-eta); omega is a kernel
/// weight in (x, y, xi, eta) order.
CheckResult holds_A2(const Weight& omega, const Weight& omega1, const Weight& omega2, const GridSpec& grid);

struct TwoSidedResult {
  bool holds = false;
  double upper = 0.0;  // max omega / omega0(...)
  double lower = 0.0;  // max omega0(...) / omega
};
/// omega(x,y,xi,eta) ~ omega0(x - A(x-y), A^T xi - (I - A^T)eta, xi + eta, y - x).
TwoSidedResult holds_A3(const Weight& omega, const Weight& omega0, const MatrixParam& A, const GridSpec& grid);
/// omega2(x,xi)/omega1(y,eta) <= C omega0(x - A(x-y), A^T xi + (I - A^T)eta, xi - eta, y - x).
CheckResult holds_A4(const Weight& omega0, const Weight& omega1, const Weight& omega2, const MatrixParam& A,
                     const GridSpec& grid);
/// omega0(x - A(x-y), A^T xi + (I - A^T)eta, xi - eta, y - x) <= C omega1(x,xi) omega2(y,eta).
CheckResult holds_A9(const Weight& omega0, const Weight& omega1, const Weight& omega2, const MatrixParam& A,
                     const GridSpec& grid);
/// 1 <= C omega_0(T_A(X_N, X_0)) prod_j omega_j(T_A(X_j, X_{j-1})) with
/// T_A(X, Y) = (y + A(x-y), xi + A^T(eta - xi), eta - xi, x - y).
CheckResult holds_weightcondAcalc(const std::vector<Weight>& omegas, const MatrixParam& A, const GridSpec& grid);

/// Constants of one weight check across grid sizes. `bounded` is false when
/// the constant increases monotonically and grows by more than 1.5x.
struct GrowthReport {
  std::vector<int> sizes;
  std::vector<double> constants;
  bool bounded = true;
};
GrowthReport growth_probe(const std::function<double(const GridSpec&)>& constant, int d,
                          const std::vector<int>& sizes = {9, 17, 33});

}  // namespace psdo
