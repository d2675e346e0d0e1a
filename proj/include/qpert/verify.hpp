#ifndef QPERT_VERIFY_HPP_
#define QPERT_VERIFY_HPP_

#include <string>
#include <vector>

#include "qpert/diagram.hpp"
#include "qpert/quadrature.hpp"

namespace qpert {

struct HeavisideConfig {
  int n3 = 12;             // nodes per spatial axis
  double k0_cut = 0.0;     // 0 = automatic from t and the box
  int panel_order = 12;
  double pole_min_len = 0.0;  // 0 = track the smallest epsilon
};

struct HeavisideResult {
  cplx lhs;
  cplx rhs;               // extrapolated
  double relerr;
  double extrap_errbar;
  std::vector<double> eps_used;
  std::vector<cplx> rhs_by_eps;
};

//! The Heaviside/i-eps identity on a Gaussian (or bump) test function:
//! 3D quadrature of H(t) e^{s i t E_m} phi against the eps-extrapolated 4D
//! quadrature of e^{i t k0} phi / (k0 - s E_m - i eps) / (2 pi i).
HeavisideResult verify_heaviside_identity(double t, int sign, double mass,
                                          const TestFunction& phi, const EpsSchedule& eps,
                                          const HeavisideConfig& cfg = {});

//! The 1D representation 2 pi i H(t) = lim int e^{i t tau}/(tau - i eps).
HeavisideResult verify_heaviside_1d(double t, const EpsSchedule& eps, double tau_cut = 2000.0,
                                    int panel_order = 12);

struct PropagatorCombinationConfig {
  double smear_sigma = 0.05;
  int n_radial = 48;
  int n_time_panels = 0;   // 0 = automatic from the window and frequencies
  int panel_order = 12;
  int n_windows = 4;
  double t_window = 0.0;   // 0 = automatic 40/E_min
};

struct PropagatorCombinationResult {
  std::vector<double> windows;
  std::vector<cplx> timeordered;   // (1/2T) (I' + I''), per window
  cplx closed_form;                // smeared i/(g(k,k) + i eps), extrapolated
  std::vector<double> relerr;      // per window
  bool monotone_tail = false;      // last three windows decrease
};

//! Time-ordered I' + I'' double-time quadrature on smeared states vs the
//! closed-form propagator, for CM 2->2 kinematics with the given internal
//! mass. The conserved-energy delta is normalized out by the window length.
PropagatorCombinationResult verify_propagator_combination(
    double m_internal, const std::array<FourMomentum, 4>& externals, const EpsSchedule& eps,
    const PropagatorCombinationConfig& cfg = {});

struct LoopProbeConfig {
  double eps = 0.5;        // fixed pole displacement for the growth probe
  int n_nodes = 32;        // per integration axis
  double cauchy_rtol = 0.01;
};

struct LoopProbeResult {
  std::string figure;
  std::vector<double> cutoffs;
  std::vector<double> magnitudes;  // |I(cutoff)|
  double growth_exponent = 0.0;    // log-log fit over the tail
  bool monotone = false;
  bool divergent = false;
};

//! Cutoff-growth probe of a catalog loop figure (by diagram name); the
//! energy integrals are closed-form logarithms, the spatial integrals are
//! reduced to their symmetry-adapted dimensions.
LoopProbeResult probe_loop_divergence(const Diagram& d, const std::vector<double>& cutoffs,
                                      const CouplingSpec& coupling, const LoopProbeConfig& cfg = {},
                                      bool regulated_control = false);

//! <LambdaBar, f> for a product-Gaussian test element, carrying every
//! explicit length-unit factor (coefficient, measure, component scaling);
//! the result is l-independent.
double lambda_contraction(double length_unit, const std::array<int, 3>& signs,
                          const std::array<double, 3>& masses,
                          const std::array<TestFunction, 3>& legs, int n_per_axis = 10);

}  // namespace qpert

#endif  // QPERT_VERIFY_HPP_
