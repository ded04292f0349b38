#pragma once

// Geometry of the localization trade-off curve Gamma_q in the (u, v) =
// (1/r, 1/s) sector 0 <= v <= u <= 1. q may be +infinity.

namespace bllab {

enum class Region { Below, On, Above };

enum class CurveBranch { Steep, Flat };  // Steep: u + 3v <= 1, Flat: u + 3v > 1

struct TradeoffPoint {
  double u;
  double v;
  double q;
  Region classification;
};

/// (3q - 2)/(q + 2), slope of the steep branch; 3 at q = infinity.
double steep_slope(double q);

/// q / (2(q - 1)), level of the flat branch; 1/2 at q = infinity.
double flat_level(double q);

/// Range of u over which the curve stays inside the sector.
double sector_u_min(double q);
double sector_u_max(double q);

/// u at which the two branches meet.
double branch_switch_u(double q);

/// v on the curve above u. Throws OutOfSectorError outside the sector.
double gamma_q(double u, double q);

/// Branch that carries the curve at u.
CurveBranch gamma_q_branch(double u, double q);

/// Signed distance-like residual of (u, v): positive above, negative below.
double region_residual(double u, double v, double q);

inline constexpr double kOnCurveTol = 1e-12;

/// Region of (u, v) relative to Gamma_q. Throws OutOfSectorError unless
/// 0 <= v <= u <= 1.
TradeoffPoint classify(double u, double v, double q);

/// Intersection of Gamma_q with the diagonal u = v.
double symmetric_point(double q);

}  // namespace bllab
