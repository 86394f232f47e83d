#include "psdo/modspace.hpp"

#include "psdo/error.hpp"
#include "psdo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace psdo {

// ---------------------------------------------------------------- rationals

Rational::Rational(long n, long d) {
  if (d == 0) throw Error(Errc::invalid_exponent, "rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long g = std::gcd(n, d);
  num = g == 0 ? 0 : n / g;
  den = g == 0 ? 1 : d / g;
}

Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  return static_cast<__int128>(a.num) * b.den <=> static_cast<__int128>(b.num) * a.den;
}

std::string to_string(const Rational& r) {
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

// ---------------------------------------------------------------- exponents

Exponent::Exponent(Rational p) {
  if (p.num <= 0) throw Error(Errc::invalid_exponent, "exponent must be positive, got " + psdo::to_string(p));
  inv_ = Rational(p.den, p.num);
}

Exponent Exponent::from_reciprocal(Rational r) {
  if (r.num < 0) throw Error(Errc::invalid_exponent, "reciprocal exponent must be >= 0");
  Exponent e;
  e.inv_ = r;
  return e;
}

Exponent Exponent::from_double(double p) {
  if (std::isinf(p) && p > 0) return infinity();
  if (!(p > 0) || !std::isfinite(p)) throw Error(Errc::invalid_exponent, "exponent must be in (0, inf]");
  // Continued-fraction convergents until the value is reproduced.
  long h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  double x = p;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(x);
    const long ai = static_cast<long>(a);
    const long h2 = ai * h0 + h1;
    const long k2 = ai * k0 + k1;
    if (k2 > 1'000'000) break;
    h1 = h0;
    h0 = h2;
    k1 = k0;
    k0 = k2;
    if (std::abs(static_cast<double>(h0) / static_cast<double>(k0) - p) <= 1e-12 * p) break;
    const double frac = x - a;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  return Exponent(Rational(h0, k0));
}

Exponent Exponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF") return infinity();
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      return Exponent(Rational(std::stol(text.substr(0, slash)), std::stol(text.substr(slash + 1))));
    }
    return from_double(std::stod(text));
  } catch (const std::logic_error&) {
    throw Error(Errc::invalid_exponent, "cannot parse exponent '" + text + "'");
  }
}

Exponent Exponent::from_json(const nlohmann::json& j) {
  if (j.is_number()) return from_double(j.get<double>());
  if (j.is_string()) return parse(j.get<std::string>());
  throw Error(Errc::invalid_exponent, "exponent must be a number or a string");
}

double Exponent::value() const noexcept {
  return is_infinite() ? std::numeric_limits<double>::infinity() : static_cast<double>(inv_.den) / inv_.num;
}

Exponent Exponent::conjugate() const {
  const Rational r = Rational(1) - inv_;
  if (r.num < 0) throw Error(Errc::invalid_exponent, "conjugate exponent undefined for p < 1");
  return from_reciprocal(r);
}

std::string Exponent::to_string() const {
  if (is_infinite()) return "inf";
  return psdo::to_string(Rational(inv_.den, inv_.num));
}

nlohmann::json Exponent::to_json() const {
  if (is_infinite()) return "inf";
  if (inv_.num == 1) return inv_.den;
  return to_string();
}

// --------------------------------------------------------------- predicates

namespace {

void require_arity(const ExponentTuple& t, std::size_t np, std::size_t nq, const char* name) {
  if (t.p_list.size() != np || t.q_list.size() != nq) {
    throw Error(Errc::arity_mismatch, std::string(name) + " expects " + std::to_string(np) + " p and " +
                                          std::to_string(nq) + " q exponents");
  }
}

Rational inv(const Exponent& e) { return e.reciprocal(); }

}  // namespace

Rational hy_functional(const std::vector<Exponent>& p_list) {
  if (p_list.size() < 3) throw Error(Errc::too_few_entries, "R_N needs at least three exponents");
  const long N = static_cast<long>(p_list.size()) - 1;
  Rational sum(0);
  for (const auto& p : p_list) sum = sum + p.reciprocal();
  return (sum - Rational(1)) / Rational(N - 1);
}

bool holds_A5(const ExponentTuple& t) {
  require_arity(t, 3, 3, "A5");
  const auto& p = t.p_list[0];
  const auto& p1 = t.p_list[1];
  const auto& p2 = t.p_list[2];
  const auto& q = t.q_list[0];
  const auto& q1 = t.q_list[1];
  const auto& q2 = t.q_list[2];
  const Rational rhs = Rational(1) - inv(p) - inv(q);
  return inv(p1) - inv(p2) == rhs && inv(q1) - inv(q2) == rhs && q <= p2 && p2 <= p && q <= q2 && q2 <= p;
}

bool holds_A6(const ExponentTuple& t) {
  require_arity(t, 3, 2, "A6");
  const auto& p = t.p_list[0];
  const auto& p1 = t.p_list[1];
  const auto& p2 = t.p_list[2];
  const auto& q1 = t.q_list[0];
  const auto& q2 = t.q_list[1];
  if (p < Exponent(1)) return false;
  const Exponent pc = p.conjugate();
  return p1 <= p && p <= p2 && q1 <= std::min(p, pc) && q2 >= std::max(p, pc);
}

bool holds_A8(const ExponentTuple& t) {
  require_arity(t, 3, 3, "A8");
  const Rational target = inv(t.p_list[0]) + inv(t.q_list[0]);
  return inv(t.p_list[1]) + inv(t.p_list[2]) == target && inv(t.q_list[1]) + inv(t.q_list[2]) == target;
}

bool holds_A8_range(const ExponentTuple& t) {
  if (!holds_A8(t)) return false;
  const auto& p = t.p_list[0];
  const auto& q = t.q_list[0];
  for (int j = 1; j <= 2; ++j) {
    const auto& pj = t.p_list[static_cast<std::size_t>(j)];
    const auto& qj = t.q_list[static_cast<std::size_t>(j)];
    if (!(p <= pj && pj <= q && p <= qj && qj <= q)) return false;
  }
  return true;
}

bool holds_pqconditions(const ExponentTuple& t) {
  if (t.p_list.size() != t.q_list.size()) throw Error(Errc::arity_mismatch, "p and q lists differ in length");
  if (t.p_list.size() < 3) throw Error(Errc::too_few_entries, "pqconditions needs N + 1 >= 3 exponents");
  std::vector<Exponent> qc;
  qc.reserve(t.q_list.size());
  for (const auto& q : t.q_list) {
    if (q < Exponent(1)) return false;
    qc.push_back(q.conjugate());
  }
  const Rational lhs = std::max(hy_functional(qc), Rational(0));
  Rational rhs = hy_functional(t.p_list);
  for (std::size_t j = 0; j < t.p_list.size(); ++j) rhs = std::min({rhs, inv(t.p_list[j]), inv(qc[j])});
  return lhs <= rhs;
}

bool holds_pqconditions3(const ExponentTuple& t) {
  if (t.p_list.size() != t.q_list.size()) throw Error(Errc::arity_mismatch, "p and q lists differ in length");
  if (t.p_list.size() < 3) throw Error(Errc::too_few_entries, "pqconditions3 needs N + 1 >= 3 exponents");
  if (hy_functional(t.p_list) < Rational(0)) return false;
  for (std::size_t j = 0; j < t.p_list.size(); ++j) {
    if (t.q_list[j] < Exponent(1)) return false;
    const Rational qc = Rational(1) - inv(t.q_list[j]);
    const Rational ip = inv(t.p_list[j]);
    if (!(qc <= ip && ip <= Rational(1, 2))) return false;
  }
  return true;
}

// ------------------------------------------------------------------ weights

Weight Weight::polynomial(double s, int blocks) {
  if (!std::isfinite(s)) throw Error(Errc::invalid_params, "polynomial weight needs a finite exponent");
  Weight w;
  w.kind_ = WeightKind::polynomial;
  w.s_ = s;
  w.blocks_ = blocks;
  return w;
}

Weight Weight::exponential(double c, double s, int blocks) {
  if (!std::isfinite(c) || !(s >= 1.0) || !std::isfinite(s)) {
    throw Error(Errc::invalid_params, "exponential weight needs finite c and s >= 1");
  }
  Weight w;
  w.kind_ = WeightKind::exponential;
  w.c_ = c;
  w.s_ = s;
  w.blocks_ = blocks;
  return w;
}

Weight Weight::product(std::vector<Weight> factors) {
  if (factors.empty()) throw Error(Errc::invalid_params, "product weight needs at least one factor");
  Weight w;
  w.kind_ = WeightKind::product;
  w.blocks_ = 0;
  for (const auto& f : factors) w.blocks_ += f.blocks();
  w.factors_ = std::move(factors);
  return w;
}

Weight Weight::custom(int blocks, int d, int n, std::vector<double> scales, std::vector<double> samples) {
  if (blocks < 1 || d < 1 || n < 1 || scales.size() != static_cast<std::size_t>(blocks)) {
    throw Error(Errc::invalid_params, "custom weight needs one scale per block");
  }
  std::size_t expected = 1;
  for (int i = 0; i < blocks * d; ++i) expected *= static_cast<std::size_t>(n);
  if (samples.size() != expected) throw Error(Errc::invalid_params, "custom weight needs n^{blocks*d} samples");
  if (std::any_of(samples.begin(), samples.end(), [](double v) { return !(v > 0) || !std::isfinite(v); })) {
    throw Error(Errc::invalid_params, "custom weight samples must be positive and finite");
  }
  if (std::any_of(scales.begin(), scales.end(), [](double v) { return !(v > 0); })) {
    throw Error(Errc::invalid_params, "custom weight scales must be positive");
  }
  Weight w;
  w.kind_ = WeightKind::custom;
  w.blocks_ = blocks;
  w.d_ = d;
  w.n_ = n;
  w.scales_ = std::move(scales);
  w.samples_ = std::make_shared<const std::vector<double>>(std::move(samples));
  return w;
}

bool Weight::is_one() const noexcept {
  switch (kind_) {
    case WeightKind::polynomial: return s_ == 0.0;
    case WeightKind::exponential: return c_ == 0.0;
    case WeightKind::product:
      return std::all_of(factors_.begin(), factors_.end(), [](const Weight& f) { return f.is_one(); });
    case WeightKind::custom:
      return std::all_of(samples_->begin(), samples_->end(), [](double v) { return v == 1.0; });
  }
  return false;
}

double Weight::operator()(std::span<const double> X) const {
  switch (kind_) {
    case WeightKind::polynomial: {
      if (s_ == 0.0) return 1.0;
      double r2 = 0.0;
      for (double x : X) r2 += x * x;
      return std::pow(1.0 + r2, 0.5 * s_);
    }
    case WeightKind::exponential: {
      if (c_ == 0.0) return 1.0;
      double r2 = 0.0;
      for (double x : X) r2 += x * x;
      return std::exp(c_ * std::pow(std::sqrt(r2), 1.0 / s_));
    }
    case WeightKind::product: {
      const std::size_t d = X.size() / static_cast<std::size_t>(blocks_);
      double v = 1.0;
      std::size_t offset = 0;
      for (const auto& f : factors_) {
        const std::size_t len = d * static_cast<std::size_t>(f.blocks());
        v *= f(X.subspan(offset, len));
        offset += len;
      }
      return v;
    }
    case WeightKind::custom: {
      if (X.size() != static_cast<std::size_t>(blocks_ * d_)) {
        throw Error(Errc::domain_mismatch, "custom weight evaluated with the wrong number of coordinates");
      }
      std::size_t index = 0;
      for (std::size_t a = 0; a < X.size(); ++a) {
        const double scale = scales_[a / static_cast<std::size_t>(d_)];
        const long k = static_cast<long>(std::llround(X[a] / scale));
        index = index * static_cast<std::size_t>(n_) + static_cast<std::size_t>(mod(k, n_));
      }
      return (*samples_)[index];
    }
  }
  return 1.0;
}

Weight Weight::inverse() const {
  switch (kind_) {
    case WeightKind::polynomial: return polynomial(-s_, blocks_);
    case WeightKind::exponential: return exponential(-c_, s_, blocks_);
    case WeightKind::product: {
      std::vector<Weight> inv;
      for (const auto& f : factors_) inv.push_back(f.inverse());
      return product(std::move(inv));
    }
    case WeightKind::custom: {
      std::vector<double> inv(samples_->size());
      std::transform(samples_->begin(), samples_->end(), inv.begin(), [](double v) { return 1.0 / v; });
      return custom(blocks_, d_, n_, scales_, std::move(inv));
    }
  }
  return *this;
}

nlohmann::json Weight::to_json() const {
  nlohmann::json j;
  j["blocks"] = blocks_;
  switch (kind_) {
    case WeightKind::polynomial:
      j["kind"] = "polynomial";
      j["params"] = {{"s", s_}};
      break;
    case WeightKind::exponential:
      j["kind"] = "exponential";
      j["params"] = {{"c", c_}, {"s", s_}};
      break;
    case WeightKind::product: {
      j["kind"] = "product";
      nlohmann::json f = nlohmann::json::array();
      for (const auto& w : factors_) f.push_back(w.to_json());
      j["params"] = {{"factors", f}};
      break;
    }
    case WeightKind::custom:
      j["kind"] = "custom";
      j["params"] = {{"d", d_}, {"n", n_}, {"scales", scales_}, {"samples", *samples_}};
      break;
  }
  return j;
}

Weight Weight::from_json(const nlohmann::json& j, int default_blocks) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const int blocks = j.value("blocks", default_blocks);
    const nlohmann::json params = j.value("params", nlohmann::json::object());
    if (kind == "one") return one(blocks);
    if (kind == "polynomial") return polynomial(params.at("s").get<double>(), blocks);
    if (kind == "exponential") return exponential(params.at("c").get<double>(), params.at("s").get<double>(), blocks);
    if (kind == "product") {
      std::vector<Weight> factors;
      for (const auto& f : params.at("factors")) factors.push_back(from_json(f, 1));
      return product(std::move(factors));
    }
    if (kind == "custom") {
      return custom(blocks, params.at("d").get<int>(), params.at("n").get<int>(),
                    params.at("scales").get<std::vector<double>>(), params.at("samples").get<std::vector<double>>());
    }
    throw Error(Errc::invalid_params, "unknown weight kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_params, std::string("malformed weight descriptor: ") + e.what());
  }
}

std::vector<double> block_scales(int blocks, int n) {
  const double f = kTwoPi / n;
  switch (blocks) {
    case 1: return {1.0};
    case 2: return {1.0, f};
    case 4: return {1.0, f, f, 1.0};
    default: throw Error(Errc::domain_mismatch, "no standard scaling for " + std::to_string(blocks) + " blocks");
  }
}

namespace {

std::size_t ipow(std::size_t base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Scaled centered coordinates of every point of Z_n^{axes}, row-major.
std::vector<double> coordinate_table(int axes, int d, int n, std::span<const double> scales) {
  const std::size_t M = ipow(static_cast<std::size_t>(n), axes);
  std::vector<double> table(M * static_cast<std::size_t>(axes));
  for (std::size_t idx = 0; idx < M; ++idx) {
    std::size_t rest = idx;
    for (int a = axes - 1; a >= 0; --a) {
      const long k = static_cast<long>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
      table[idx * static_cast<std::size_t>(axes) + static_cast<std::size_t>(a)] =
          static_cast<double>(rep(k, n)) * scales[static_cast<std::size_t>(a / d)];
    }
  }
  return table;
}

void require_blocks(const Weight& w, int blocks, const char* what) {
  if (w.blocks() != blocks) {
    throw Error(Errc::domain_mismatch, std::string(what) + " expects a weight on " + std::to_string(blocks) +
                                           " blocks, got " + std::to_string(w.blocks()));
  }
}

double lp(std::span<const double> v, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
  }
  double s = 0.0;
  if (p == 1.0) {
    for (double x : v) s += x;
    return s;
  }
  if (p == 2.0) {
    for (double x : v) s += x * x;
    return std::sqrt(s);
  }
  for (double x : v) s += std::pow(x, p);
  return std::pow(s, 1.0 / p);
}

}  // namespace

std::vector<double> sample_weight(const Weight& w, const GridSpec& grid, std::span<const double> scales) {
  const int axes = static_cast<int>(scales.size()) * grid.d;
  const std::vector<double> coords = coordinate_table(axes, grid.d, grid.n, scales);
  const std::size_t M = coords.size() / static_cast<std::size_t>(axes);
  std::vector<double> out(M);
  for (std::size_t i = 0; i < M; ++i) {
    out[i] = w(std::span<const double>(coords.data() + i * static_cast<std::size_t>(axes), static_cast<std::size_t>(axes)));
  }
  return out;
}

CheckResult moderate_check(const Weight& omega, const Weight& v, const GridSpec& grid) {
  if (omega.blocks() != v.blocks()) throw Error(Errc::domain_mismatch, "moderate_check: weight domains differ");
  const std::vector<double> scales = block_scales(omega.blocks(), grid.n);
  const int axes = omega.blocks() * grid.d;
  const std::vector<double> coords = coordinate_table(axes, grid.d, grid.n, scales);
  const std::size_t M = coords.size() / static_cast<std::size_t>(axes);
  const std::size_t L = static_cast<std::size_t>(axes);
  std::vector<double> wx(M), vy(M);
  for (std::size_t i = 0; i < M; ++i) {
    wx[i] = omega(std::span<const double>(coords.data() + i * L, L));
    vy[i] = v(std::span<const double>(coords.data() + i * L, L));
  }
  std::vector<double> sum(L);
  double worst = 0.0;
  auto visit = [&](std::size_t x, std::size_t y) {
    for (std::size_t a = 0; a < L; ++a) sum[a] = coords[x * L + a] + coords[y * L + a];
    worst = std::max(worst, omega(sum) / (wx[x] * vy[y]));
  };
  if (M * M <= kExhaustivePairs) {
    for (std::size_t x = 0; x < M; ++x)
      for (std::size_t y = 0; y < M; ++y) visit(x, y);
  } else {
    Rng rng(kWeightSeed);
    for (std::size_t s = 0; s < kSampledPairs; ++s) {
      const std::size_t x = rng.index(M);
      visit(x, rng.index(M));
    }
  }
  return {std::isfinite(worst), worst};
}

// ------------------------------------------------------------------- norms

double mixed_norm(std::span<const cplx> F, std::size_t rows, std::size_t cols, const MixedNormParams& params,
                  std::span<const double> w) {
  if (F.size() != rows * cols || (!w.empty() && w.size() != F.size())) {
    throw Error(Errc::domain_mismatch, "mixed_norm: array and weight shapes differ");
  }
  std::vector<double> column(rows), inner(cols);
  for (std::size_t k = 0; k < cols; ++k) {
    for (std::size_t j = 0; j < rows; ++j) {
      const double v = std::abs(F[j * cols + k]);
      column[j] = w.empty() ? v : v * w[j * cols + k];
    }
    inner[k] = lp(column, params.p);
  }
  return lp(inner, params.q);
}

double mixed_norm(const TimeFrequencyArray& F, const MixedNormParams& params, const Weight& omega) {
  require_blocks(omega, 2, "mixed_norm");
  const std::size_t N = F.grid.size();
  if (omega.is_one()) return mixed_norm(F.data, N, N, params);
  const std::vector<double> w = sample_weight(omega, F.grid, block_scales(2, F.grid.n));
  return mixed_norm(F.data, N, N, params, w);
}

double mixed_norm(const FourDArray& F, const MixedNormParams& params, const Weight& omega) {
  require_blocks(omega, 4, "mixed_norm");
  const std::size_t N2 = F.grid.size() * F.grid.size();
  if (omega.is_one()) return mixed_norm(F.data, N2, N2, params);
  const std::vector<double> w = sample_weight(omega, F.grid, block_scales(4, F.grid.n));
  return mixed_norm(F.data, N2, N2, params, w);
}

double modulation_norm(const Signal& f, const MixedNormParams& params, const Weight& omega, const Signal& phi) {
  return mixed_norm(stft(f, phi), params, omega);
}

double modulation_norm(const Signal& f, const MixedNormParams& params, const Weight& omega) {
  return modulation_norm(f, params, omega, default_window(f.grid));
}

double symbol_modulation_norm(const Symbol& a, const MixedNormParams& params, const Weight& omega,
                              const Symbol& Phi) {
  require_blocks(omega, 4, "symbol_modulation_norm");
  return mixed_norm(stft_symbol(a, Phi), params, omega);
}

double symbol_modulation_norm(const Symbol& a, const MixedNormParams& params, const Weight& omega) {
  return symbol_modulation_norm(a, params, omega, default_symbol_window(a.grid));
}

double window_change_bound(const Signal& phi, const Signal& psi) {
  const TimeFrequencyArray V = stft(phi, psi);
  double l1 = 0.0;
  for (const auto& v : V.data) l1 += std::abs(v);
  const double nphi = l2_norm(phi.data);
  return std::pow(static_cast<double>(phi.grid.n), -0.5 * phi.grid.d) * l1 / (nphi * nphi);
}

// ----------------------------------------------------------- weight checks

namespace {

// Visits (x, xi, y, eta) in scaled coordinates, exhaustively when n^{4d} is
// small and on a fixed-seed sample otherwise; returns the largest ratio.
template <class Ratio>
double max_over_quads(const GridSpec& g, Ratio&& ratio) {
  const std::size_t d = static_cast<std::size_t>(g.d);
  const std::vector<double> one = {1.0};
  const std::vector<double> pos = coordinate_table(g.d, g.d, g.n, one);
  const std::vector<double> freq_scale = {kTwoPi / g.n};
  const std::vector<double> freq = coordinate_table(g.d, g.d, g.n, freq_scale);
  const std::size_t N = g.size();
  double worst = 0.0;
  auto visit = [&](std::size_t x, std::size_t xi, std::size_t y, std::size_t eta) {
    worst = std::max(worst, ratio(std::span<const double>(pos.data() + x * d, d),
                                  std::span<const double>(freq.data() + xi * d, d),
                                  std::span<const double>(pos.data() + y * d, d),
                                  std::span<const double>(freq.data() + eta * d, d)));
  };
  if (N * N * N * N <= kExhaustivePairs) {
    for (std::size_t x = 0; x < N; ++x)
      for (std::size_t xi = 0; xi < N; ++xi)
        for (std::size_t y = 0; y < N; ++y)
          for (std::size_t eta = 0; eta < N; ++eta) visit(x, xi, y, eta);
  } else {
    Rng rng(kWeightSeed);
    for (std::size_t s = 0; s < kSampledPairs; ++s) {
      const std::size_t x = rng.index(N), xi = rng.index(N), y = rng.index(N);
      visit(x, xi, y, rng.index(N));
    }
  }
  return worst;
}

// Real-vector helpers on d-dimensional blocks.
struct Vec {
  std::array<double, kMaxDim> v{};
};

Vec from(std::span<const double> s) {
  Vec r;
  std::copy(s.begin(), s.end(), r.v.begin());
  return r;
}

Vec lin(double a, const Vec& x, double b, const Vec& y, int d) {
  Vec r;
  for (int i = 0; i < d; ++i) r.v[static_cast<std::size_t>(i)] = a * x.v[static_cast<std::size_t>(i)] + b * y.v[static_cast<std::size_t>(i)];
  return r;
}

Vec mul(const MatrixParam& A, const Vec& x, int d) {
  Vec r;
  A.apply(std::span<const double>(x.v.data(), static_cast<std::size_t>(d)),
          std::span<double>(r.v.data(), static_cast<std::size_t>(d)));
  return r;
}

// Concatenation of blocks into one evaluation point.
template <std::size_t K>
std::array<double, K * kMaxDim> cat(const std::array<Vec, K>& blocks, int d, std::size_t& len) {
  std::array<double, K * kMaxDim> out{};
  len = 0;
  for (const auto& b : blocks)
    for (int i = 0; i < d; ++i) out[len++] = b.v[static_cast<std::size_t>(i)];
  return out;
}

template <std::size_t K>
double eval(const Weight& w, const std::array<Vec, K>& blocks, int d) {
  std::size_t len = 0;
  const auto pt = cat(blocks, d, len);
  return w(std::span<const double>(pt.data(), len));
}

// omega0 argument shared by A4 and A9:
// (x - A(x-y), A^T xi + (I - A^T) eta, xi - eta, y - x).
std::array<Vec, 4> a9_argument(const Vec& x, const Vec& xi, const Vec& y, const Vec& eta, const MatrixParam& A,
                               const MatrixParam& AT, int d) {
  const Vec xmy = lin(1, x, -1, y, d);
  const Vec ximeta = lin(1, xi, -1, eta, d);
  return {lin(1, x, -1, mul(A, xmy, d), d), lin(1, eta, 1, mul(AT, ximeta, d), d), ximeta, lin(-1, xmy, 0, xmy, d)};
}

// T_A(X, Y) = (y + A(x-y), xi + A^T(eta - xi), eta - xi, x - y).
std::array<Vec, 4> transfer_point(const Vec& x, const Vec& xi, const Vec& y, const Vec& eta, const MatrixParam& A,
                                  const MatrixParam& AT, int d) {
  const Vec xmy = lin(1, x, -1, y, d);
  const Vec etamxi = lin(1, eta, -1, xi, d);
  return {lin(1, y, 1, mul(A, xmy, d), d), lin(1, xi, 1, mul(AT, etamxi, d), d), etamxi, xmy};
}

}  // namespace

CheckResult holds_A2(const Weight& omega, const Weight& omega1, const Weight& omega2, const GridSpec& grid) {
  require_blocks(omega, 4, "A2 kernel weight");
  require_blocks(omega1, 2, "A2 omega1");
  require_blocks(omega2, 2, "A2 omega2");
  const int d = grid.d;
  const double c = max_over_quads(grid, [&](auto x, auto xi, auto y, auto eta) {
    const Vec vx = from(x), vxi = from(xi), vy = from(y), veta = from(eta);
    const Vec meta = lin(-1, veta, 0, veta, d);
    return eval<2>(omega2, {vx, vxi}, d) / (eval<2>(omega1, {vy, veta}, d) * eval<4>(omega, {vx, vy, vxi, meta}, d));
  });
  return {std::isfinite(c), c};
}

TwoSidedResult holds_A3(const Weight& omega, const Weight& omega0, const MatrixParam& A, const GridSpec& grid) {
  require_blocks(omega, 4, "A3 kernel weight");
  require_blocks(omega0, 4, "A3 omega0");
  check_param(grid.with_mode(Mode::real), A);
  const int d = grid.d;
  const MatrixParam AT = A.transpose();
  auto both = [&](auto x, auto xi, auto y, auto eta) {
    const Vec vx = from(x), vxi = from(xi), vy = from(y), veta = from(eta);
    const Vec xmy = lin(1, vx, -1, vy, d);
    // A^T xi - (I - A^T) eta = A^T(xi + eta) - eta.
    const std::array<Vec, 4> arg = {lin(1, vx, -1, mul(A, xmy, d), d),
                                    lin(1, mul(AT, lin(1, vxi, 1, veta, d), d), -1, veta, d),
                                    lin(1, vxi, 1, veta, d), lin(-1, xmy, 0, xmy, d)};
    return std::make_pair(eval<4>(omega, {vx, vy, vxi, veta}, d), eval<4>(omega0, arg, d));
  };
  const double upper = max_over_quads(grid, [&](auto... a) {
    const auto [w, w0] = both(a...);
    return w / w0;
  });
  const double lower = max_over_quads(grid, [&](auto... a) {
    const auto [w, w0] = both(a...);
    return w0 / w;
  });
  return {std::isfinite(upper) && std::isfinite(lower), upper, lower};
}

CheckResult holds_A4(const Weight& omega0, const Weight& omega1, const Weight& omega2, const MatrixParam& A,
                     const GridSpec& grid) {
  require_blocks(omega0, 4, "A4 omega0");
  require_blocks(omega1, 2, "A4 omega1");
  require_blocks(omega2, 2, "A4 omega2");
  check_param(grid.with_mode(Mode::real), A);
  const int d = grid.d;
  const MatrixParam AT = A.transpose();
  const double c = max_over_quads(grid, [&](auto x, auto xi, auto y, auto eta) {
    const Vec vx = from(x), vxi = from(xi), vy = from(y), veta = from(eta);
    return eval<2>(omega2, {vx, vxi}, d) /
           (eval<2>(omega1, {vy, veta}, d) * eval<4>(omega0, a9_argument(vx, vxi, vy, veta, A, AT, d), d));
  });
  return {std::isfinite(c), c};
}

CheckResult holds_A9(const Weight& omega0, const Weight& omega1, const Weight& omega2, const MatrixParam& A,
                     const GridSpec& grid) {
  require_blocks(omega0, 4, "A9 omega0");
  require_blocks(omega1, 2, "A9 omega1");
  require_blocks(omega2, 2, "A9 omega2");
  check_param(grid.with_mode(Mode::real), A);
  const int d = grid.d;
  const MatrixParam AT = A.transpose();
  const double c = max_over_quads(grid, [&](auto x, auto xi, auto y, auto eta) {
    const Vec vx = from(x), vxi = from(xi), vy = from(y), veta = from(eta);
    return eval<4>(omega0, a9_argument(vx, vxi, vy, veta, A, AT, d), d) /
           (eval<2>(omega1, {vx, vxi}, d) * eval<2>(omega2, {vy, veta}, d));
  });
  return {std::isfinite(c), c};
}

CheckResult holds_weightcondAcalc(const std::vector<Weight>& omegas, const MatrixParam& A, const GridSpec& grid) {
  if (omegas.size() < 3) throw Error(Errc::arity_mismatch, "weightcondAcalc needs omega_0, ..., omega_N with N >= 2");
  for (const auto& w : omegas) require_blocks(w, 4, "weightcondAcalc");
  check_param(grid.with_mode(Mode::real), A);
  const int d = grid.d;
  const std::size_t ud = static_cast<std::size_t>(d);
  const MatrixParam AT = A.transpose();
  const std::size_t Nf = omegas.size() - 1;
  const std::vector<double> one = {1.0};
  const std::vector<double> fs = {kTwoPi / grid.n};
  const std::vector<double> pos = coordinate_table(d, d, grid.n, one);
  const std::vector<double> freq = coordinate_table(d, d, grid.n, fs);
  const std::size_t N = grid.size();
  const std::size_t points = N * N;  // one phase-space point X_j = (x_j, xi_j)
  std::vector<std::size_t> idx(Nf + 1);
  std::vector<Vec> px(Nf + 1), pxi(Nf + 1);
  double worst = 0.0;
  auto visit = [&]() {
    for (std::size_t j = 0; j <= Nf; ++j) {
      px[j] = from(std::span<const double>(pos.data() + (idx[j] / N) * ud, ud));
      pxi[j] = from(std::span<const double>(freq.data() + (idx[j] % N) * ud, ud));
    }
    double prod = eval<4>(omegas[0], transfer_point(px[Nf], pxi[Nf], px[0], pxi[0], A, AT, d), d);
    for (std::size_t j = 1; j <= Nf; ++j) {
      prod *= eval<4>(omegas[j], transfer_point(px[j], pxi[j], px[j - 1], pxi[j - 1], A, AT, d), d);
    }
    worst = std::max(worst, 1.0 / prod);
  };
  double total = 1.0;
  for (std::size_t j = 0; j <= Nf; ++j) total *= static_cast<double>(points);
  if (total <= static_cast<double>(kExhaustivePairs)) {
    const auto count = static_cast<std::size_t>(total);
    for (std::size_t c = 0; c < count; ++c) {
      std::size_t rest = c;
      for (std::size_t j = 0; j <= Nf; ++j) {
        idx[j] = rest % points;
        rest /= points;
      }
      visit();
    }
  } else {
    Rng rng(kWeightSeed);
    for (std::size_t s = 0; s < kSampledPairs; ++s) {
      for (std::size_t j = 0; j <= Nf; ++j) idx[j] = rng.index(points);
      visit();
    }
  }
  return {std::isfinite(worst), worst};
}

GrowthReport growth_probe(const std::function<double(const GridSpec&)>& constant, int d, const std::vector<int>& sizes) {
  GrowthReport r;
  r.sizes = sizes;
  for (int n : sizes) r.constants.push_back(constant(GridSpec::make(d, n, Mode::real)));
  bool increasing = r.constants.size() >= 2;
  for (std::size_t i = 1; i < r.constants.size(); ++i) increasing = increasing && r.constants[i] > r.constants[i - 1];
  r.bounded = !(increasing && r.constants.back() > 1.5 * r.constants.front());
  return r;
}

}  // namespace psdo
