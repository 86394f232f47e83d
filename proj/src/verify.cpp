#include "psdo/verify.hpp"

#include "psdo/calculus.hpp"
#include "psdo/error.hpp"
#include "psdo/modspace.hpp"
#include "psdo/schatten.hpp"
#include "psdo/schemes.hpp"
#include "psdo/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>

namespace psdo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kLemmaSamples = 200;
constexpr std::size_t kExpOpSamples = 60;

struct Context {
  GridSpec real;
  GridSpec mod;
  int d;
  int n;
};

struct Check {
  std::string suite;
  std::string name;
  std::string tag;
  double tolerance;
  std::function<double(const Context&, Rng&)> run;
  std::function<bool(const Context&)> applies = [](const Context&) { return true; };
};

Signal random_signal(const GridSpec& g, Rng& rng) { return Signal(g, rng.complex_normal(g.size())); }
Symbol random_symbol(const GridSpec& g, Rng& rng) { return Symbol(g, rng.complex_normal(g.size() * g.size())); }

Symbol random_real_symbol(const GridSpec& g, Rng& rng) {
  CVec v(g.size() * g.size());
  for (auto& z : v) z = rng.normal();
  return Symbol(g, std::move(v));
}

MatrixParam scalar(const Context& c, double t) { return MatrixParam::scalar(c.d, t); }

OperatorMatrix adjoint(const OperatorMatrix& T) {
  OperatorMatrix H = OperatorMatrix::zeros(T.grid);
  for (std::size_t r = 0; r < T.dim(); ++r)
    for (std::size_t c = 0; c < T.dim(); ++c) H.at(c, r) = std::conj(T.at(r, c));
  return H;
}

double hermitian_defect(const OperatorMatrix& T) {
  const OperatorMatrix H = adjoint(T);
  return max_abs_diff(T.data, H.data) / std::max(1.0, l2_norm(T.data));
}

Signal apply(const OperatorMatrix& T, const Signal& f) {
  Signal out = Signal::zeros(f.grid);
  const std::size_t N = T.dim();
  for (std::size_t r = 0; r < N; ++r) {
    cplx s = 0.0;
    for (std::size_t c = 0; c < N; ++c) s += T.at(r, c) * f[c];
    out[r] = s;
  }
  return out;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

Signal unit(Signal f) {
  const double nf = l2_norm(f.data);
  for (auto& v : f.data) v /= nf;
  return f;
}

Symbol scaled_multiplier(const Symbol& a, const std::function<double(double, double)>& m) {
  const int d = a.grid.d;
  const double scale = kTwoPi / a.grid.n;
  return apply_dual_multiplier(a, [&](const Coord& c, const Coord& mu) {
    double nm = 0.0, nc = 0.0;
    for (int i = 0; i < d; ++i) {
      nm += static_cast<double>(mu[static_cast<std::size_t>(i)] * mu[static_cast<std::size_t>(i)]);
      nc += static_cast<double>(c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)]);
    }
    return cplx(m(scale * static_cast<double>(dot(mu, c, d)), scale * std::sqrt(nm * nc)), 0.0);
  });
}

// Enough Gauss-Legendre nodes for e^{i t theta} on [0, 1] at the largest
// grid phase; 20 at desk sizes.
int bj_nodes(const Context& c) {
  const double theta = kTwoPi * c.d * std::pow((c.n - 1) / 2.0, 2.0) / c.n;
  return std::max(20, static_cast<int>(std::ceil(0.75 * theta)) + 10);
}

std::vector<Check> registry() {
  std::vector<Check> r;

  // ---------------------------------------------------------- calculus
  r.push_back({"calculus", "calculi transfer", "calculi-transfer", 1e-11, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 for (auto [t1, t2] : {std::pair{0.0, 0.5}, std::pair{1.0, 0.0}, std::pair{0.37, -0.2}}) {
                   const MatrixParam A1 = scalar(c, t1), A2 = scalar(c, t2);
                   for (int k = 0; k < 4; ++k) {
                     const Symbol a = random_symbol(c.real, rng);
                     const OperatorMatrix T1 = quantize(a, A1);
                     const OperatorMatrix T2 = quantize(symbol_transfer(symbol_transfer(a, A1), -A2), A2);
                     worst = std::max(worst, rel_error(T2.data, T1.data));
                   }
                 }
                 return worst;
               }});
  r.push_back({"calculus", "kernel route vs multiplier route", "kernel-formula", 1e-12, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 for (double t : {0.0, 1.0, -1.0}) {
                   const Symbol a = random_symbol(c.mod, rng);
                   worst = std::max(worst, max_abs_diff(kernel_route(a, scalar(c, t)).data, quantize(a, scalar(c, t)).data));
                 }
                 return worst;
               }});
  r.push_back({"calculus", "rank-one symbols quantize to outer products", "rank-one", 1e-12, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 for (auto [g, t] : {std::pair{c.mod, 0.0}, std::pair{c.mod, 1.0}, std::pair{c.real, 0.5}}) {
                   const MatrixParam A = scalar(c, t);
                   for (int k = 0; k < 3; ++k) {
                     const Signal f1 = random_signal(g, rng), f2 = random_signal(g, rng);
                     const OperatorMatrix P = quantize(rank_one_symbol(f1, f2, A), A);
                     worst = std::max(worst, max_abs_diff(P.data, OperatorMatrix::outer(f1, f2).data));
                   }
                 }
                 return worst;
               }});
  r.push_back({"calculus", "dequantize inverts quantize", "symbol-bijection", 1e-12, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 for (double t : {0.0, 0.37, 0.5, 1.0}) {
                   const Symbol a = random_symbol(c.real, rng);
                   worst = std::max(worst, rel_error(dequantize(quantize(a, scalar(c, t)), scalar(c, t)).data, a.data));
                 }
                 return worst;
               }});
  r.push_back({"calculus", "weyl quantization of real symbols is hermitian", "weyl-symmetry", 1e-11,
               [](const Context& c, Rng& rng) { return hermitian_defect(quantize(random_real_symbol(c.real, rng), scalar(c, 0.5))); }});
  r.push_back({"calculus", "sharp product unit law", "sharp-unit", 1e-12, [](const Context& c, Rng& rng) {
                 const Symbol one = Symbol::constant(c.real, 1.0);
                 double worst = 0.0;
                 for (double t : {0.0, 0.5, 0.37}) {
                   const Symbol b = random_symbol(c.real, rng);
                   worst = std::max({worst, max_abs_diff(sharp(one, b, scalar(c, t)).data, b.data),
                                     max_abs_diff(sharp(b, one, scalar(c, t)).data, b.data)});
                 }
                 return worst;
               }});
  r.push_back({"calculus", "sharp product associativity", "sharp-associative", 1e-11, [](const Context& c, Rng& rng) {
                 const MatrixParam A = scalar(c, 0.37);
                 const Symbol a = random_symbol(c.real, rng), b = random_symbol(c.real, rng), e = random_symbol(c.real, rng);
                 const Symbol left = sharp(sharp(a, b, A), e, A), right = sharp(a, sharp(b, e, A), A);
                 return rel_error(left.data, right.data);
               }});
  r.push_back({"calculus", "quantization of sharp products", "sharp-homomorphism", 1e-11, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 for (double t : {0.5, 0.0, 1.0}) {
                   const MatrixParam A = scalar(c, t);
                   const Symbol a = random_symbol(c.real, rng), b = random_symbol(c.real, rng);
                   const OperatorMatrix lhs = quantize(sharp(a, b, A), A);
                   const OperatorMatrix rhs = compose(quantize(a, A), quantize(b, A));
                   worst = std::max(worst, rel_error(lhs.data, rhs.data));
                 }
                 return worst;
               }});
  r.push_back({"calculus", "composition transfer between calculi", "sharp-transfer", 1e-11, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 for (auto [ta, tb] : {std::pair{0.5, 0.0}, std::pair{0.0, 0.5}, std::pair{0.37, -0.2}}) {
                   const Symbol a = random_symbol(c.real, rng), b = random_symbol(c.real, rng);
                   const double scale = l2_norm(a.data) * l2_norm(b.data);
                   worst = std::max(worst, sharp_transfer_check(a, b, scalar(c, ta), scalar(c, tb)) / scale);
                 }
                 return worst;
               }});

  // ------------------------------------------------------------ wigner
  r.push_back({"wigner", "stft norm equals window norm times signal norm", "stft-moyal", 1e-12, [](const Context& c, Rng& rng) {
                 const Signal f = random_signal(c.real, rng), phi = random_signal(c.real, rng);
                 const double expected = l2_norm(f.data) * l2_norm(phi.data);
                 return std::abs(l2_norm(stft(f, phi).data) - expected) / expected;
               }});
  r.push_back({"wigner", "wigner norm equals the product of norms", "wigner-moyal", 1e-12, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 for (double t : {0.0, 1.0, -1.0, 2.0}) {
                   const Signal f1 = random_signal(c.mod, rng), f2 = random_signal(c.mod, rng);
                   const double expected = l2_norm(f1.data) * l2_norm(f2.data);
                   worst = std::max(worst, std::abs(l2_norm(wigner(f1, f2, scalar(c, t)).data) - expected) / expected);
                 }
                 return worst;
               }});
  r.push_back({"wigner", "direct wigner sum vs dequantized outer product", "wigner-modes", 1e-12, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 for (double t : {0.0, 1.0, 2.0}) {
                   const Signal f1 = random_signal(c.mod, rng), f2 = random_signal(c.mod, rng);
                   const TimeFrequencyArray Wm = wigner(f1, f2, scalar(c, t));
                   const TimeFrequencyArray Wr = wigner(Signal(c.real, f1.data), Signal(c.real, f2.data), scalar(c, t));
                   worst = std::max(worst, max_abs_diff(Wm.data, Wr.data));
                 }
                 return worst;
               }});
  r.push_back({"wigner", "operator-wigner pairing", "wigner-link", 1e-11, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 const double scale = std::pow(static_cast<double>(c.n), -0.5 * c.d);
                 for (auto [g, t] : {std::pair{c.real, 0.5}, std::pair{c.real, 0.37}, std::pair{c.mod, 1.0}, std::pair{c.mod, 0.0}}) {
                   const MatrixParam A = scalar(c, t);
                   const Symbol a = random_symbol(g, rng);
                   const Signal f = random_signal(g, rng), h = random_signal(g, rng);
                   const cplx lhs = inner(apply(quantize(a, A), f).data, h.data);
                   const cplx rhs = scale * inner(a.data, wigner(h, f, A).data);
                   worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
                 }
                 return worst;
               }});
  r.push_back({"wigner", "weyl distribution vs stft at doubled arguments", "weyl-stft", 1e-10, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 for (int k = 0; k < 3; ++k) {
                   worst = std::max(worst, weyl_wigner_stft_relation_check(random_signal(c.mod, rng), random_signal(c.mod, rng)));
                 }
                 return worst;
               }});
  r.push_back({"wigner", "stft of a wigner distribution", "stft-wigner", 1e-10, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 const bool full = std::pow(static_cast<double>(c.n), 4.0 * c.d) <= static_cast<double>(kMax4dEntries);
                 for (double t : {0.0, 1.0}) {
                   const MatrixParam A = scalar(c, t);
                   const Signal f = random_signal(c.mod, rng), g = random_signal(c.mod, rng);
                   const Signal phi = default_window(c.mod), psi = random_signal(c.mod, rng);
                   if (full) {
                     worst = std::max(worst, max_abs_diff(stft_of_wigner(f, g, phi, psi, A).data,
                                                          stft_of_wigner_rhs(f, g, phi, psi, A).data));
                   } else {
                     Rng sampler = rng.split("samples");
                     worst = std::max(worst, stft_of_wigner_sampled_deviation(f, g, phi, psi, A, sampler, kLemmaSamples));
                   }
                 }
                 return worst;
               }});
  r.push_back({"wigner", "transfer operator under the symbol stft", "expop-stft", 1e-10, [](const Context& c, Rng& rng) {
                 const Symbol a = random_symbol(c.mod, rng);
                 const Symbol phi = default_symbol_window(c.mod);
                 const MatrixParam A = scalar(c, 1.0);
                 if (std::pow(static_cast<double>(c.n), 4.0 * c.d) <= static_cast<double>(kMax4dEntries) && 2 * c.d <= kMaxDim) {
                   return expop_stft_check(a, phi, A);
                 }
                 Rng sampler = rng.split("samples");
                 return expop_stft_sampled_deviation(a, phi, A, sampler, kExpOpSamples);
               }});
  r.push_back({"wigner", "transfer operator at A = 0 is the identity", "expop-stft", 0.0, [](const Context& c, Rng& rng) {
                 const Symbol a = random_symbol(c.mod, rng);
                 return expop_stft_check(a, default_symbol_window(c.mod), scalar(c, 0.0));
               },
               [](const Context& c) { return std::pow(static_cast<double>(c.n), 4.0 * c.d) <= static_cast<double>(kMax4dEntries); }});

  // ---------------------------------------------------------- modspace
  r.push_back({"modspace", "M^2 norm with unit window equals l2 norm", "modnorm-l2", 1e-12, [](const Context& c, Rng& rng) {
                 const Signal f = random_signal(c.real, rng);
                 return std::abs(modulation_norm(f, {2, 2}, Weight::one()) - l2_norm(f.data)) / l2_norm(f.data);
               }});
  r.push_back({"modspace", "symbol M^2 norm equals l2 norm", "symbol-modnorm-l2", 1e-12, [](const Context& c, Rng& rng) {
                 const Symbol a = random_symbol(c.real, rng);
                 return std::abs(symbol_modulation_norm(a, {2, 2}, Weight::one(4)) - l2_norm(a.data)) / l2_norm(a.data);
               },
               [](const Context& c) { return c.d == 1 && std::pow(static_cast<double>(c.n), 4.0) <= static_cast<double>(kMax4dEntries); }});
  r.push_back({"modspace", "mixed norms decrease in the exponents", "norm-monotone", 0.0, [](const Context& c, Rng& rng) {
                 const std::vector<double> ps = {1.0, 1.5, 2.0, 3.0, kInf};
                 const TimeFrequencyArray F = stft(random_signal(c.real, rng), default_window(c.real));
                 double worst = 0.0;
                 for (std::size_t i = 0; i + 1 < ps.size(); ++i)
                   for (double q : {1.0, 2.0, kInf}) {
                     worst = std::max(worst, mixed_norm(F, {ps[i + 1], q}, Weight::one()) - mixed_norm(F, {ps[i], q}, Weight::one()));
                     worst = std::max(worst, mixed_norm(F, {q, ps[i + 1]}, Weight::one()) - mixed_norm(F, {q, ps[i]}, Weight::one()));
                   }
                 return worst;
               }});
  r.push_back({"modspace", "window change within the reconstruction bound", "window-equivalence", 1e-12,
               [](const Context& c, Rng& rng) {
                 const Signal phi = default_window(c.real);
                 Signal psi = Signal::zeros(c.real);
                 for (std::size_t j = 0; j < c.real.size(); ++j) {
                   const Coord x = unflatten(j, c.real);
                   double r2 = 0.0;
                   for (int i = 0; i < c.d; ++i) r2 += std::abs(static_cast<double>(rep(x[static_cast<std::size_t>(i)], c.n)));
                   psi[j] = std::exp(-0.5 * r2);
                 }
                 const double c1 = window_change_bound(phi, psi), c2 = window_change_bound(psi, phi);
                 double worst = 0.0;
                 for (int k = 0; k < 20; ++k) {
                   const Signal f = random_signal(c.real, rng);
                   for (MixedNormParams pq : {MixedNormParams{1, 1}, MixedNormParams{2, 2}, MixedNormParams{1, kInf}}) {
                     const double a = modulation_norm(f, pq, Weight::one(), phi), b = modulation_norm(f, pq, Weight::one(), psi);
                     worst = std::max({worst, b / (c1 * a) - 1.0, a / (c2 * b) - 1.0});
                   }
                 }
                 return std::max(worst, 0.0);
               }});
  r.push_back({"modspace", "polynomial weights are moderate", "moderate-weight", 1e-12, [](const Context& c, Rng&) {
                 double worst = 0.0;
                 for (double s : {-2.0, -1.0, 1.0, 2.0}) {
                   const CheckResult m = moderate_check(Weight::polynomial(s), Weight::polynomial(std::abs(s)), c.real);
                   worst = std::max(worst, m.constant - std::pow(2.0, std::abs(s) / 2.0));
                 }
                 return std::max(worst, 0.0);
               }});
  r.push_back({"modspace", "exponent predicates on reference tuples", "exponent-predicates", 0.0, [](const Context&, Rng&) {
                 const Exponent inf = Exponent::infinity();
                 int wrong = 0;
                 wrong += hy_functional({1, 1, 1}) == Rational(2) ? 0 : 1;
                 wrong += hy_functional({2, 2, 2}) == Rational(1, 2) ? 0 : 1;
                 wrong += hy_functional({2, 3, 6, 4}) == hy_functional({6, 4, 3, 2}) ? 0 : 1;
                 wrong += holds_A5({{2, 2, 2}, {2, 2, 2}}) ? 0 : 1;
                 wrong += holds_A6({{2, 1, inf}, {1, inf}}) ? 0 : 1;
                 wrong += holds_A8({{2, 2, 2}, {2, 2, 2}}) ? 0 : 1;
                 wrong += holds_pqconditions3({{2, 2, 2}, {2, 2, 2}}) ? 0 : 1;
                 wrong += holds_pqconditions3({{2, 2, 2}, {inf, 2, 2}}) ? 1 : 0;
                 return static_cast<double>(wrong);
               }});

  // ---------------------------------------------------------- schatten
  r.push_back({"schatten", "I_2 norm equals the kernel l2 norm", "hilbert-schmidt", 1e-12, [](const Context& c, Rng& rng) {
                 const OperatorMatrix T = quantize(random_symbol(c.real, rng), scalar(c, 0.37));
                 return std::abs(schatten_norm(T, 2) - l2_norm(T.data)) / l2_norm(T.data);
               }});
  r.push_back({"schatten", "I_2 norm of Op_A(a) is n^{-d/2} |a|", "hilbert-schmidt-symbol", 1e-11, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 const double scale = std::pow(static_cast<double>(c.n), -0.5 * c.d);
                 for (double t : {0.0, 0.5, 0.37}) {
                   const Symbol a = random_symbol(c.real, rng);
                   const double expected = scale * l2_norm(a.data);
                   worst = std::max(worst, std::abs(symbol_schatten_norm(a, scalar(c, t), 2) - expected) / expected);
                 }
                 return worst;
               }});
  r.push_back({"schatten", "trace duality", "schatten-duality", 1e-10, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 const OperatorMatrix T = quantize(random_symbol(c.real, rng), scalar(c, 0.5));
                 for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) worst = std::max(worst, std::abs(duality_check(T, p).ratio - 1.0));
                 return worst;
               }});
  r.push_back({"schatten", "hoelder inequality for products", "schatten-hoelder", 1e-10, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 for (auto [p1, p2] : {std::pair{1.0, kInf}, std::pair{2.0, 2.0}, std::pair{4.0, 4.0 / 3.0}}) {
                   for (int k = 0; k < 5; ++k) {
                     const OperatorMatrix T1 = quantize(random_symbol(c.real, rng), scalar(c, 0.0));
                     const OperatorMatrix T2 = quantize(random_symbol(c.real, rng), scalar(c, 0.0));
                     const HoelderResult h = hoelder_check(T1, T2, p1, p2);
                     worst = std::max(worst, h.lhs / h.rhs - 1.0);
                   }
                 }
                 return std::max(worst, 0.0);
               }});
  r.push_back({"schatten", "schatten norms are calculus independent", "schatten-transfer", 1e-11, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 const MatrixParam A1 = scalar(c, 0.37), A2 = scalar(c, -0.2);
                 const Symbol a = random_symbol(c.real, rng);
                 const Symbol moved = symbol_transfer(symbol_transfer(a, A1), -A2);
                 for (double p : {1.0, 3.0, kInf}) {
                   const double ref = symbol_schatten_norm(a, A1, p);
                   worst = std::max(worst, std::abs(symbol_schatten_norm(moved, A2, p) - ref) / ref);
                 }
                 return worst;
               }});
  r.push_back({"schatten", "rank-one projectors have unit norms", "schatten-rank-one", 1e-12, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 const Signal f = unit(random_signal(c.real, rng));
                 for (double p : {1.0, 2.0, kInf}) {
                   worst = std::max(worst, std::abs(symbol_schatten_norm(rank_one_symbol(f, f, scalar(c, 0.5)), scalar(c, 0.5), p) - 1.0));
                 }
                 return worst;
               }});

  // ----------------------------------------------------------- schemes
  r.push_back({"schemes", "BJ quadrature vs sinc multiplier", "born-jordan", 1e-12, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 for (int k = 0; k < 3; ++k) {
                   const Symbol a = random_symbol(c.real, rng);
                   worst = std::max(worst, max_abs_diff(quantize_scheme(a, SchemeSpec::born_jordan()).data,
                                                        born_jordan_by_quadrature(a, bj_nodes(c)).data));
                 }
                 return worst;
               }});
  r.push_back({"schemes", "orthogonal average at r = 0 is weyl", "un-average", 0.0, [](const Context& c, Rng& rng) {
                 const Symbol a = random_symbol(c.real, rng);
                 return max_abs_diff(quantize_scheme(a, SchemeSpec::un_avg(0.0)).data, quantize_scheme(a, SchemeSpec::weyl()).data);
               }});
  r.push_back({"schemes", "orthogonal average as a weyl multiplier", "un-average", 1e-11, [](const Context& c, Rng& rng) {
                 double worst = 0.0;
                 for (double r : {0.5, 1.0}) {
                   const Symbol a = random_symbol(c.real, rng);
                   const Symbol w = dequantize(quantize_scheme(a, SchemeSpec::un_avg(r)), scalar(c, 0.5));
                   const int d = c.d;
                   const Symbol expected = scaled_multiplier(a, [r, d](double theta, double radial) {
                     return d == 1 ? std::cos(r * theta) : std::cyl_bessel_j(0.0, r * radial);
                   });
                   worst = std::max(worst, max_abs_diff(w.data, expected.data));
                 }
                 return worst;
               }});
  r.push_back({"schemes", "averaged schemes are hermitian on real symbols", "scheme-symmetry", 1e-11, [](const Context& c, Rng& rng) {
                 const Symbol a = random_real_symbol(c.real, rng);
                 double worst = 0.0;
                 for (const SchemeSpec& s : {SchemeSpec::weyl(), SchemeSpec::born_jordan(), SchemeSpec::un_avg(0.5),
                                             SchemeSpec::un_avg_time(1.0, 6, 32)}) {
                   worst = std::max(worst, hermitian_defect(quantize_scheme(a, s)));
                 }
                 return worst;
               }});
  r.push_back({"schemes", "psi_1 is cosh", "psi-function", 1e-14, [](const Context&, Rng&) {
                 double worst = 0.0;
                 for (int i = 0; i <= 50; ++i) {
                   const double rho = 0.1 * i;
                   worst = std::max(worst, std::abs(psi(1, rho) - std::cosh(rho)) / std::cosh(rho));
                 }
                 return worst;
               }});
  r.push_back({"schemes", "psi_{0,1} is sinh", "psi-function", 1e-14, [](const Context&, Rng&) {
                 double worst = 0.0;
                 for (int i = 0; i <= 50; ++i) {
                   const double rho = 0.1 * i;
                   worst = std::max(worst, std::abs(psi0(1, rho) - std::sinh(rho)) / std::max(1.0, std::sinh(rho)));
                 }
                 return worst;
               }});
  r.push_back({"schemes", "psi_2 over the circle average is constant in rho", "psi-function", 1e-3, [](const Context&, Rng& rng) {
                 const int samples = 100'000;
                 std::vector<double> ratios;
                 for (double rho : {0.0, 1.0, 2.5, 5.0}) {
                   double s = 0.0;
                   for (int i = 0; i < samples; ++i) {
                     s += std::exp(rho * std::cos(2.0 * std::numbers::pi * (i + rng.uniform()) / samples));
                   }
                   ratios.push_back(psi(2, rho) / (s / samples));
                 }
                 const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
                 return *hi - *lo;
               }});
  r.push_back({"schemes", "psi_{0,d}(r)/r tends to psi_d(0)", "psi-function", 1e-9, [](const Context&, Rng&) {
                 double worst = 0.0;
                 for (int d : {1, 2, 3}) worst = std::max(worst, std::abs(psi0(d, 1e-6) / 1e-6 - psi(d, 0.0)));
                 return worst;
               }});
  return r;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> suites = {"all", "calculus", "wigner", "modspace", "schatten", "schemes"};
  return suites;
}

bool VerifyReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.pass; });
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json j;
  j["suite"] = options.suite;
  j["grid"] = {{"n", options.n}, {"d", options.d}};
  j["seed"] = options.seed;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) {
    list.push_back({{"suite", c.suite},
                    {"name", c.name},
                    {"tag", c.tag},
                    {"deviation", c.deviation},
                    {"tolerance", c.tolerance},
                    {"pass", c.pass}});
  }
  j["checks"] = list;
  j["passed"] = passed();
  return j;
}

std::string VerifyReport::to_text() const {
  std::size_t wn = 5, wt = 3;
  for (const auto& c : checks) {
    wn = std::max(wn, c.name.size());
    wt = std::max(wt, c.tag.size());
  }
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(s.size(), w), ' ');
    return s;
  };
  std::string out = pad("check", wn) + "  " + pad("tag", wt) + "  deviation   tolerance   result\n";
  for (const auto& c : checks) {
    out += pad(c.name, wn) + "  " + pad(c.tag, wt) + "  " + pad(format_double(c.deviation), 10) + "  " +
           pad(format_double(c.tolerance), 10) + "  " + (c.pass ? "PASS" : "FAIL") + "\n";
  }
  std::size_t failed = 0;
  for (const auto& c : checks) failed += c.pass ? 0 : 1;
  out += std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) + " checks passed\n";
  return out;
}

VerifyReport run_verify(const VerifyOptions& options) {
  const auto& suites = verify_suites();
  if (std::find(suites.begin(), suites.end(), options.suite) == suites.end()) {
    throw Error(Errc::invalid_params, "unknown verify suite '" + options.suite + "'");
  }
  if (options.d != 1 && options.d != 2) throw Error(Errc::invalid_params, "verify supports d = 1 or d = 2");
  if (options.n < 3 || options.n % 2 == 0) throw Error(Errc::invalid_params, "verify needs an odd n >= 3");

  const Context ctx{GridSpec::make(options.d, options.n, Mode::real), GridSpec::make(options.d, options.n, Mode::mod),
                    options.d, options.n};
  const Rng root(options.seed);
  VerifyReport report{options, {}};
  for (const Check& c : registry()) {
    if (options.suite != "all" && options.suite != c.suite) continue;
    if (!c.applies(ctx)) continue;
    Rng rng = root.split(c.suite + "/" + c.name);
    const double dev = c.run(ctx, rng);
    report.checks.push_back({c.suite, c.name, c.tag, dev, c.tolerance, std::isfinite(dev) && dev <= c.tolerance});
  }
  return report;
}

}  // namespace psdo
