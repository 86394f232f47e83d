#pragma once

// Named quantization schemes: Kohn-Nirenberg, Weyl, Op_t, Born-Jordan and
// the orthogonal-group averages Op_{r,UN} and Op^0_{r,UN}, with the
// special functions psi_d and psi_{0,d}.

#include "psdo/grid.hpp"
#include "psdo/quantizer.hpp"

#include <json.hpp>

#include <span>
#include <string>

namespace psdo {

enum class SchemeKind { kn, weyl, t, born_jordan, un_avg, un_avg_time };

struct SchemeSpec {
  SchemeKind kind = SchemeKind::weyl;
  double t = 0.5;
  int quad_nodes = 20;
  double r = 0.0;
  int angle_nodes = 64;
  int t_nodes = 20;

  static SchemeSpec kn() { return {SchemeKind::kn}; }
  static SchemeSpec weyl() { return {SchemeKind::weyl}; }
  static SchemeSpec op_t(double t) { return {SchemeKind::t, t}; }
  static SchemeSpec born_jordan(int nodes = 20) { return {SchemeKind::born_jordan, 0.5, nodes}; }
  static SchemeSpec un_avg(double r, int angle_nodes = 64) {
    return {SchemeKind::un_avg, 0.5, 20, r, angle_nodes};
  }
  static SchemeSpec un_avg_time(double r, int t_nodes = 20, int angle_nodes = 64) {
    return {SchemeKind::un_avg_time, 0.5, 20, r, angle_nodes, t_nodes};
  }

  /// Throws InvalidParams for r < 0 or node counts < 1.
  void validate() const;
  nlohmann::json to_json() const;
  static SchemeSpec from_json(const nlohmann::json& j);
};

std::string scheme_name(SchemeKind kind);

OperatorMatrix quantize_scheme(const Symbol& a, const SchemeSpec& spec);

/// sinc(theta/2), with a Taylor expansion for |theta| < 1e-4.
double bj_multiplier(double theta);

/// Weyl symbol of the Born-Jordan operator: the sinc(theta/2) multiplier,
/// theta = 2 pi <rep(mu), rep(kappa)>/n, on the symbol's 2-block DFT.
Symbol born_jordan_weyl_symbol(const Symbol& a);
/// Gauss-Legendre average of Op_t(a) over t in [0, 1].
OperatorMatrix born_jordan_by_quadrature(const Symbol& a, int nodes);

/// psi_d(rho): cosh for d = 1, the modified-Bessel series otherwise.
double psi(int d, double rho);
/// psi_{0,d}(r) = int_0^r psi_d(t) dt: sinh for d = 1, termwise otherwise.
double psi0(int d, double r);

/// Haar average over U in O(d) of e^{i r <U m, c>} for real d-vectors m, c
/// (callers fold the 2 pi / n scaling into m or c). d = 1 gives
/// cos(r m c); d = 2 uses the periodic trapezoid rule on both components.
cplx un_avg_multiplier(int d, double r, std::span<const double> m, std::span<const double> c, int angle_nodes = 64);

/// The O(d) elements used by un_avg for d in {1, 2}, each with weight 1/size.
std::vector<MatrixParam> orthogonal_nodes(int d, int angle_nodes);

}  // namespace psdo
