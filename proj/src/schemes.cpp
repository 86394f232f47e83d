#include "psdo/schemes.hpp"

#include "psdo/error.hpp"
#include "psdo/quadrature.hpp"

#include <cmath>

namespace psdo {

namespace {

void accumulate(OperatorMatrix& acc, const OperatorMatrix& term, double w) {
  for (std::size_t i = 0; i < acc.data.size(); ++i) acc.data[i] += w * term.data[i];
}

void require_real(const GridSpec& g, const char* what) {
  if (g.mode != Mode::real) throw Error(Errc::mode_mismatch, std::string(what) + " requires real mode");
}

OperatorMatrix un_avg_operator(const Symbol& a, double r, int angle_nodes) {
  const int d = a.grid.d;
  if (d > 2) throw Error(Errc::unsupported_dimension, "orthogonal averaging is implemented for d <= 2");
  const MatrixParam half = MatrixParam::scalar(d, 0.5);
  if (r == 0.0) return quantize(a, half);
  require_real(a.grid, "orthogonal averaging");
  const std::vector<MatrixParam> group = orthogonal_nodes(d, angle_nodes);
  const double w = 1.0 / static_cast<double>(group.size());
  OperatorMatrix acc = OperatorMatrix::zeros(a.grid);
  for (const auto& U : group) accumulate(acc, quantize(a, r * U + half), w);
  return acc;
}

}  // namespace

void SchemeSpec::validate() const {
  if (!std::isfinite(t)) throw Error(Errc::invalid_params, "scheme parameter t must be finite");
  if (!(r >= 0.0) || !std::isfinite(r)) throw Error(Errc::invalid_params, "scheme radius r must be >= 0");
  if (quad_nodes < 1 || angle_nodes < 1 || t_nodes < 1) {
    throw Error(Errc::invalid_params, "scheme node counts must be >= 1");
  }
}

std::string scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kn: return "kn";
    case SchemeKind::weyl: return "weyl";
    case SchemeKind::t: return "t";
    case SchemeKind::born_jordan: return "born_jordan";
    case SchemeKind::un_avg: return "un_avg";
    case SchemeKind::un_avg_time: return "un_avg_time";
  }
  return "?";
}

nlohmann::json SchemeSpec::to_json() const {
  nlohmann::json params = nlohmann::json::object();
  switch (kind) {
    case SchemeKind::kn:
    case SchemeKind::weyl: break;
    case SchemeKind::t: params["t"] = t; break;
    case SchemeKind::born_jordan: params["quad_nodes"] = quad_nodes; break;
    case SchemeKind::un_avg:
      params["r"] = r;
      params["angle_nodes"] = angle_nodes;
      break;
    case SchemeKind::un_avg_time:
      params["r"] = r;
      params["t_nodes"] = t_nodes;
      params["angle_nodes"] = angle_nodes;
      break;
  }
  return {{"kind", scheme_name(kind)}, {"params", params}};
}

SchemeSpec SchemeSpec::from_json(const nlohmann::json& j) {
  SchemeSpec s;
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const nlohmann::json p = j.value("params", nlohmann::json::object());
    if (kind == "kn") {
      s = kn();
    } else if (kind == "weyl") {
      s = weyl();
    } else if (kind == "t") {
      s = op_t(p.at("t").get<double>());
    } else if (kind == "born_jordan") {
      s = born_jordan(p.value("quad_nodes", 20));
    } else if (kind == "un_avg") {
      s = un_avg(p.at("r").get<double>(), p.value("angle_nodes", 64));
    } else if (kind == "un_avg_time") {
      s = un_avg_time(p.at("r").get<double>(), p.value("t_nodes", 20), p.value("angle_nodes", 64));
    } else {
      throw Error(Errc::invalid_params, "unknown scheme kind '" + kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_params, std::string("malformed scheme descriptor: ") + e.what());
  }
  s.validate();
  return s;
}

double bj_multiplier(double theta) {
  const double x = 0.5 * theta;
  if (std::abs(theta) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0;
  }
  return std::sin(x) / x;
}

Symbol born_jordan_weyl_symbol(const Symbol& a) {
  require_real(a.grid, "Born-Jordan quantization");
  const int d = a.grid.d;
  const double scale = kTwoPi / a.grid.n;
  return apply_dual_multiplier(a, [&](const Coord& c, const Coord& m) {
    return cplx(bj_multiplier(scale * static_cast<double>(dot(m, c, d))), 0.0);
  });
}

OperatorMatrix born_jordan_by_quadrature(const Symbol& a, int nodes) {
  const QuadratureRule rule = gauss_legendre(nodes, 0.0, 1.0);
  OperatorMatrix acc = OperatorMatrix::zeros(a.grid);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    accumulate(acc, quantize(a, MatrixParam::scalar(a.grid.d, rule.nodes[i])), rule.weights[i]);
  }
  return acc;
}

OperatorMatrix quantize_scheme(const Symbol& a, const SchemeSpec& spec) {
  spec.validate();
  const int d = a.grid.d;
  switch (spec.kind) {
    case SchemeKind::kn: return quantize(a, MatrixParam::zero(d));
    case SchemeKind::weyl: return quantize(a, MatrixParam::scalar(d, 0.5));
    case SchemeKind::t: return quantize(a, MatrixParam::scalar(d, spec.t));
    case SchemeKind::born_jordan: return quantize(born_jordan_weyl_symbol(a), MatrixParam::scalar(d, 0.5));
    case SchemeKind::un_avg: return un_avg_operator(a, spec.r, spec.angle_nodes);
    case SchemeKind::un_avg_time: {
      if (spec.r == 0.0) return quantize(a, MatrixParam::scalar(d, 0.5));
      if (d > 2) throw Error(Errc::unsupported_dimension, "orthogonal averaging is implemented for d <= 2");
      const QuadratureRule rule = gauss_legendre(spec.t_nodes, 0.0, spec.r);
      OperatorMatrix acc = OperatorMatrix::zeros(a.grid);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        accumulate(acc, un_avg_operator(a, rule.nodes[i], spec.angle_nodes), rule.weights[i] / spec.r);
      }
      return acc;
    }
  }
  throw Error(Errc::invalid_params, "unknown scheme");
}

namespace {

void require_psi_args(int d, double x) {
  if (d < 1) throw Error(Errc::invalid_dimension, "psi needs d >= 1");
  if (!(x >= 0.0)) throw Error(Errc::invalid_params, "psi argument must be >= 0");
}

// Gamma(d/2) (1/2)^{(d-2)/2}: the prefactor of the literal series.
double psi_prefactor(int d) { return std::tgamma(0.5 * d) * std::pow(0.5, 0.5 * (d - 2)); }

}  // namespace

double psi(int d, double rho) {
  require_psi_args(d, rho);
  if (d == 1) return std::cosh(rho);
  const double nu1 = 0.5 * d;  // m + d/2 at m = 0
  const double q = 0.25 * rho * rho;
  double term = 1.0 / std::tgamma(nu1);
  double sum = term;
  for (int m = 0; m < 10'000; ++m) {
    term *= q / ((m + 1.0) * (m + nu1));
    sum += term;
    if (m >= 10 && term < 1e-16 * sum) break;
  }
  return psi_prefactor(d) * sum;
}

double psi0(int d, double r) {
  require_psi_args(d, r);
  if (d == 1) return std::sinh(r);
  const double nu1 = 0.5 * d;
  const double q = 0.25 * r * r;
  double term = 1.0 / std::tgamma(nu1);  // (r/2)^{2m} / (m! Gamma(m + d/2))
  double sum = r * term;
  for (int m = 0; m < 10'000; ++m) {
    term *= q / ((m + 1.0) * (m + nu1));
    const double add = r * term / (2.0 * m + 3.0);
    sum += add;
    if (m >= 10 && add < 1e-16 * sum) break;
  }
  return psi_prefactor(d) * sum;
}

std::vector<MatrixParam> orthogonal_nodes(int d, int angle_nodes) {
  if (d == 1) return {MatrixParam(1, {1.0}), MatrixParam(1, {-1.0})};
  if (d != 2) throw Error(Errc::unsupported_dimension, "orthogonal averaging is implemented for d <= 2");
  const QuadratureRule rule = periodic_trapezoid(angle_nodes);
  std::vector<MatrixParam> out;
  for (double a : rule.nodes) {
    const double c = std::cos(a), s = std::sin(a);
    out.emplace_back(2, std::vector<double>{c, -s, s, c});
  }
  for (double a : rule.nodes) {
    const double c = std::cos(a), s = std::sin(a);
    out.emplace_back(2, std::vector<double>{c, s, s, -c});
  }
  return out;
}

cplx un_avg_multiplier(int d, double r, std::span<const double> m, std::span<const double> c, int angle_nodes) {
  if (static_cast<int>(m.size()) != d || static_cast<int>(c.size()) != d) {
    throw Error(Errc::dim_mismatch, "multiplier arguments must have length d");
  }
  if (r == 0.0) return 1.0;
  const std::vector<MatrixParam> group = orthogonal_nodes(d, angle_nodes);
  std::vector<double> um(static_cast<std::size_t>(d));
  cplx sum = 0.0;
  for (const auto& U : group) {
    U.apply(m, um);
    double phase = 0.0;
    for (int i = 0; i < d; ++i) phase += um[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)];
    sum += std::polar(1.0, r * phase);
  }
  return sum / static_cast<double>(group.size());
}

}  // namespace psdo
