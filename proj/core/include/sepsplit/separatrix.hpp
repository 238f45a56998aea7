#pragma once
// Unperturbed system H0 = y^2/2 + V(x): hyperbolic critical points, the
// separatrix parameterization (q0(u), p0(u)) on real and complex time, the
// complex-time singularity data (a, C+), and the unperturbed action T0.

#include <optional>
#include <vector>

#include "sepsplit/hamiltonian.hpp"
#include "sepsplit/taylor.hpp"

namespace sepsplit {

enum class loop_topology { graph, figure_eight };

struct critical_point {
  real x_star;     // in [0, 2*pi)
  real energy;     // V(x_star)
  real lambda;     // sqrt(-V''(x_star))
  loop_topology topology = loop_topology::graph;
};

struct critical_point_scan {
  std::vector<critical_point> saddles;      // non-degenerate maxima of V, sorted by x
  std::vector<real> degenerate;             // excluded degenerate maxima locations
  std::vector<real> minima;                 // linearly stable centers (context)
};

critical_point_scan find_critical_points(const potential& V);

struct separatrix_options {
  int digits = 50;
  double u_max = 0.0;      // 0: derive from digits and lambda
  int branch_sign = +1;    // +1 upper branch, -1 lower
  int loop_sign = +1;      // figure-eight loop selector (+1 right of saddle)
};

class separatrix_orbit {
 public:
  separatrix_orbit(const potential& V, const critical_point& cp, separatrix_options opt);

  const critical_point& saddle() const { return cp_; }
  const real& energy() const { return E_; }
  const real& u_max() const { return umax_; }
  const real& apex_x() const { return apex_x_; }
  const real& flight_time() const { return t_flight_; }
  int digits() const { return opt_.digits; }
  const potential& pot() const { return V_; }

  // real-time evaluation, u = 0 at the apex
  real q0(const real& u) const;
  real p0(const real& u) const;
  // unperturbed action T0(u) = int_{-inf}^u p0^2, exponential-tail corrected
  real action_T0(const real& u) const;
  real total_action() const { return action_T0(umax_); }

  // analytic continuation along the polygonal path re(u0) -> u0 -> ... -> un;
  // returns (q0, p0) at the final point
  std::pair<creal, creal> continue_path(const std::vector<creal>& waypoints) const;
  // same with first-order jets in u (for Newton on 1/p0)
  std::pair<jet1<creal>, jet1<creal>> continue_path_jet(const std::vector<creal>& waypoints) const;

  // apply the post-hoc phase shift that puts the fitted singularity on the
  // imaginary axis (u_new = u_old - shift)
  void apply_phase_shift(const real& shift);

 private:
  void build();
  const taylor_segment<real>* find_segment(const real& u) const;

  potential V_;
  critical_point cp_;
  separatrix_options opt_;
  real E_;
  real apex_x_;
  real t_flight_;
  real umax_;
  real u_shift_{0};
  // dense output of [q, p, c1, s1, T] over [-umax, umax], T(0)=0 at apex
  std::vector<taylor_segment<real>> segs_;
  // tail data: p ~ sgn * lambda * A_pm * exp(-lambda |u|)
  real tail_amp_minus_, tail_amp_plus_;
  real t0_at_minus_umax_;  // action of the left tail
};

struct singularity_data {
  real a;                  // height of the nearest singularity
  creal C_plus;            // residue-like coefficient of p0 at u = i a
  creal C1_hat, C2_hat;    // cos/sin expansion constants (diagnostic)
  int M = 1;
  real fit_residual;
  real real_part_shift;    // phase shift applied to center the singularity
  int distinct_on_boundary = 1;
  std::vector<creal> scan_log;  // per-ray singularity estimates
  int sign_realized = -1;       // C+ ~ sign * i * 2/M
};

struct singularity_options {
  double im_cap = 25.0;       // give up above this height
  double blowup_threshold = 1e6;
  int rays = 5;
  double ray_spread = 0.7;    // offsets in [-spread, spread]
};

// HP6-style scan plus refinement of (a, C+); may apply a phase shift to sep
singularity_data locate_singularity(separatrix_orbit& sep, int M,
                                    singularity_options opt = {});

}  // namespace sepsplit
