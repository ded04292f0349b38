#include "bllab/tradeoff.hpp"

#include <cmath>

#include "bllab/errors.hpp"

namespace bllab {

namespace {

void require_q(double q) {
  if (!(q >= 2.0)) throw ParameterError("q must be >= 2 (infinity allowed)");
}

}  // namespace

double steep_slope(double q) {
  require_q(q);
  return std::isinf(q) ? 3.0 : (3.0 * q - 2.0) / (q + 2.0);
}

double flat_level(double q) {
  require_q(q);
  return std::isinf(q) ? 0.5 : q / (2.0 * (q - 1.0));
}

double branch_switch_u(double q) {
  require_q(q);
  return std::isinf(q) ? 0.25 : (q + 2.0) / (4.0 * (q - 1.0));
}

double sector_u_min(double q) { return 0.5 * flat_level(q); }

double sector_u_max(double q) { return 1.0 / steep_slope(q); }

CurveBranch gamma_q_branch(double u, double q) {
  // Evaluate each branch and keep the one whose own side condition holds.
  const double v_steep = 1.0 - steep_slope(q) * u;
  return u + 3.0 * v_steep <= 1.0 ? CurveBranch::Steep : CurveBranch::Flat;
}

double gamma_q(double u, double q) {
  require_q(q);
  const double lo = sector_u_min(q);
  const double hi = sector_u_max(q);
  if (!(u >= lo - kOnCurveTol && u <= hi + kOnCurveTol)) {
    throw OutOfSectorError("gamma_q: u outside the sector range of the curve");
  }
  const double v = gamma_q_branch(u, q) == CurveBranch::Steep ? 1.0 - steep_slope(q) * u
                                                              : flat_level(q) - u;
  return std::max(v, 0.0);
}

double region_residual(double u, double v, double q) {
  if (u + 3.0 * v > 1.0) return u + v - flat_level(q);
  return steep_slope(q) * u + v - 1.0;
}

TradeoffPoint classify(double u, double v, double q) {
  require_q(q);
  if (!(v >= 0.0 && v <= u && u <= 1.0)) {
    throw OutOfSectorError("classify: need 0 <= v <= u <= 1");
  }
  const double res = region_residual(u, v, q);
  Region region = Region::Below;
  if (std::abs(res) <= kOnCurveTol) {
    region = Region::On;
  } else if (res > 0.0) {
    region = Region::Above;
  }
  return {u, v, q, region};
}

double symmetric_point(double q) {
  // u = v on the flat branch needs 4u > 1; otherwise the steep branch carries it.
  const double flat = 0.5 * flat_level(q);
  if (4.0 * flat > 1.0) return flat;
  return 1.0 / (steep_slope(q) + 1.0);
}

}  // namespace bllab
