#include "qpert/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qpert/kernels.hpp"

namespace qpert {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);

//! Asymptotic tails of int e^{i t u} / (u - a - i eps) du beyond +-K,
//! two orders of integration by parts.
cplx k0_tail(double K, double a, double t, double eps) {
  const cplx it(0.0, t);
  const cplx gu = 1.0 / (cplx(K - a, -eps));
  const cplx gpu = -gu * gu;
  const cplx gl = 1.0 / (cplx(-K - a, -eps));
  const cplx gpl = -gl * gl;
  const cplx eKu = std::exp(it * K);
  const cplx eKl = std::exp(-it * K);
  const cplx up = -eKu * gu / it + eKu * gpu / (it * it);
  const cplx low = eKl * gl / it - eKl * gpl / (it * it);
  return up + low;
}

//! int_{-K}^{K} e^{i t k0} / (k0 - a - i eps) dk0 by pole subtraction on a
//! shared grid: the subtracted integrand is entire, the pole term is the
//! closed-form logarithm.
struct K0Grid {
  std::vector<double> x, w, ph_re, ph_im, ones_re, ones_im;
  double K = 0.0;
  double t = 0.0;

  void build(double K_, double t_, int order) {
    K = K_;
    t = t_;
    CompositeRule rule;
    const double period = kPi / (2.0 * std::max(std::abs(t), 1e-3));
    const int panels = std::max(8, static_cast<int>(std::ceil(2.0 * K / period)));
    rule.append_interval(-K, K, panels, order);
    x = rule.x;
    w = rule.w;
    ph_re.resize(x.size());
    ph_im.resize(x.size());
    kernels::active().phases(x.data(), t, ph_re.data(), ph_im.data(), x.size());
    ones_re.assign(x.size(), 1.0);
    ones_im.assign(x.size(), 0.0);
  }

  cplx integral(double a, double eps) const {
    double sr, si;
    kernels::active().pole_sum(w.data(), ph_re.data(), ph_im.data(), x.data(), x.size(), a, eps,
                               &sr, &si);
    const cplx osc(sr, si);
    kernels::active().pole_sum(w.data(), ones_re.data(), ones_im.data(), x.data(), x.size(), a,
                               eps, &sr, &si);
    const cplx flat(sr, si);
    const cplx ea = std::exp(kI * (t * a)) * std::exp(-eps * t);
    // log((K - a - i eps)/(-K - a - i eps))
    const cplx pole_term = std::log(cplx(K - a, -eps)) - std::log(cplx(-K - a, -eps));
    return (osc - ea * flat) + ea * pole_term + k0_tail(K, a, t, eps);
  }
};

void check_extrapolation(const Extrapolation& ex, double scale) {
  if (!(ex.errbar <= 0.5 * std::max(std::abs(ex.value), scale)))
    throw std::runtime_error("numerics: eps extrapolation not converging (increasing residuals)");
}

}  // namespace

HeavisideResult verify_heaviside_identity(double t, int sign, double mass,
                                          const TestFunction& phi, const EpsSchedule& eps,
                                          const HeavisideConfig& cfg) {
  if (t == 0.0) throw std::runtime_error("numerics: the identity needs t != 0");
  if (sign != 1 && sign != -1) throw std::runtime_error("numerics: sign must be +-1");
  eps.validate();

  HeavisideResult out;

  // Left side: H(t) int d^3k e^{s i t E} phi.
  if (t > 0.0) {
    out.lhs = integrate_box3(phi, cfg.n3, [&](const Vec3& k, double pv) {
      const double E = on_shell_energy(mass, k);
      return std::exp(kI * (sign * t * E)) * pv;
    });
  } else {
    out.lhs = {0.0, 0.0};
  }

  // Right side: (1/2 pi i) int d^3k phi K(a = s E; eps), extrapolated.
  double e_max = 0.0;
  {
    const double hw = phi.box_halfwidth();
    double corner = 0.0;
    for (int i = 0; i < 3; ++i) corner += (std::abs(phi.center[i]) + hw) * (std::abs(phi.center[i]) + hw);
    e_max = std::sqrt(mass * mass + corner);
  }
  const double K = cfg.k0_cut > 0.0 ? cfg.k0_cut : std::max(4.0 * e_max, 30.0 / std::abs(t));
  K0Grid grid;
  grid.build(K, t, cfg.panel_order);

  for (double e : eps.eps) {
    const cplx val = integrate_box3(phi, cfg.n3, [&](const Vec3& k, double pv) {
      const double E = on_shell_energy(mass, k);
      return grid.integral(sign * E, e) * pv;
    });
    out.eps_used.push_back(e);
    out.rhs_by_eps.push_back(val / (2.0 * kPi * kI));
  }
  const Extrapolation ex = richardson_extrapolate(out.eps_used, out.rhs_by_eps, eps.order);
  const double scale = std::max(std::abs(out.lhs), 1e-6);
  check_extrapolation(ex, scale);
  out.rhs = ex.value;
  out.extrap_errbar = ex.errbar;
  out.relerr = std::abs(out.rhs - out.lhs) / scale;
  return out;
}

HeavisideResult verify_heaviside_1d(double t, const EpsSchedule& eps, double tau_cut,
                                    int panel_order) {
  if (t == 0.0) throw std::runtime_error("numerics: the identity needs t != 0");
  eps.validate();
  HeavisideResult out;
  out.lhs = t > 0.0 ? cplx(0.0, 2.0 * kPi) : cplx(0.0, 0.0);

  K0Grid grid;
  grid.build(tau_cut, t, panel_order);
  for (double e : eps.eps) {
    out.eps_used.push_back(e);
    out.rhs_by_eps.push_back(grid.integral(0.0, e));
  }
  const Extrapolation ex = richardson_extrapolate(out.eps_used, out.rhs_by_eps, eps.order);
  check_extrapolation(ex, 2.0 * kPi);
  out.rhs = ex.value;
  out.extrap_errbar = ex.errbar;
  out.relerr = std::abs(out.rhs - out.lhs) / (2.0 * kPi);
  return out;
}

namespace {

//! Triangle-domain double-time integral with prefix sums over a shared
//! composite grid: J(T; a, b) = int_{-T}^{T} dt2 e^{i b t2} int_{-T}^{t2}
//! dt1 e^{i a t1}.
struct TimeWindowRule {
  double T = 0.0;
  int panels = 0;
  int order = 12;
  std::vector<double> nodes, weights;  // shared grid for the outer variable

  void build(double T_, int panels_, int order_) {
    T = T_;
    panels = panels_;
    order = order_;
    CompositeRule r;
    r.append_interval(-T, T, panels, order);
    nodes = r.x;
    weights = r.w;
  }

  cplx integrate_pair(double a, double b) const {
    const auto& gx = GaussLegendre::nodes(order);
    const auto& gw = GaussLegendre::weights(order);
    const double h = 2.0 * T / panels;

    // Panel integrals of e^{i a t} and their prefix sums.
    std::vector<cplx> prefix(panels + 1, cplx(0.0, 0.0));
    {
      std::vector<double> xs(order), re(order), im(order);
      for (int p = 0; p < panels; ++p) {
        const double lo = -T + p * h;
        const double mid = lo + 0.5 * h;
        for (int i = 0; i < order; ++i) xs[i] = mid + 0.5 * h * gx[i];
        kernels::active().phases(xs.data(), a, re.data(), im.data(), xs.size());
        cplx acc(0.0, 0.0);
        for (int i = 0; i < order; ++i) acc += 0.5 * h * gw[i] * cplx(re[i], im[i]);
        prefix[p + 1] = prefix[p] + acc;
      }
    }

    cplx total(0.0, 0.0);
    std::vector<double> xs(order), re(order), im(order), re2(order), im2(order);
    for (int p = 0; p < panels; ++p) {
      const double lo = -T + p * h;
      for (int i = 0; i < order; ++i) {
        const double t2 = lo + 0.5 * h * (gx[i] + 1.0);
        // inner integral up to t2: full panels below + partial panel
        cplx inner = prefix[p];
        const double plen = t2 - lo;
        if (plen > 0.0) {
          const double mid = lo + 0.5 * plen;
          for (int j = 0; j < order; ++j) xs[j] = mid + 0.5 * plen * gx[j];
          kernels::active().phases(xs.data(), a, re.data(), im.data(), xs.size());
          cplx acc(0.0, 0.0);
          for (int j = 0; j < order; ++j) acc += 0.5 * plen * gw[j] * cplx(re[j], im[j]);
          inner += acc;
        }
        xs[0] = t2;
        kernels::active().phases(xs.data(), b, re2.data(), im2.data(), 1);
        total += 0.5 * h * gw[i] * cplx(re2[0], im2[0]) * inner;
      }
    }
    return total;
  }
};

}  // namespace

PropagatorCombinationResult verify_propagator_combination(
    double m_internal, const std::array<FourMomentum, 4>& externals, const EpsSchedule& eps,
    const PropagatorCombinationConfig& cfg) {
  eps.validate();
  const FourMomentum& p = externals[0];
  const FourMomentum& q = externals[1];
  const FourMomentum& pp = externals[2];
  const FourMomentum& qp = externals[3];
  for (const auto& m : externals)
    if (!m.on_shell || !m.shell_residual_ok(1e-9))
      throw std::runtime_error("numerics: externals must be on-shell");
  const Vec3 in_total = p.spatial + q.spatial;
  const Vec3 out_total = pp.spatial + qp.spatial;
  if (norm3(in_total) > 1e-9 || norm3(out_total) > 1e-9)
    throw std::runtime_error("numerics: propagator combination expects CM kinematics");
  const double e_in = p.energy + q.energy;
  const double e_out = pp.energy + qp.energy;
  if (std::abs(e_in - e_out) > 1e-9)
    throw std::runtime_error("numerics: external energies must balance");

  const double sigma = cfg.smear_sigma;
  const double r_max = 6.0 * sigma;
  const double E = e_in;

  CompositeRule radial;
  radial.append_interval(0.0, r_max, std::max(4, cfg.n_radial / 8), 8);

  auto omega = [&](double r) { return std::sqrt(m_internal * m_internal + r * r); };
  auto pair_weight = [&](double r) {
    return 4.0 * kPi * r * r * std::exp(-r * r / (sigma * sigma));
  };

  PropagatorCombinationResult out;

  // Closed form: smeared i/(g(k,k) - m^2 + i eps) at k0 = E, extrapolated.
  {
    std::vector<cplx> by_eps;
    for (double e : eps.eps) {
      cplx acc(0.0, 0.0);
      for (std::size_t j = 0; j < radial.size(); ++j) {
        const double r = radial.x[j];
        const double g = E * E - omega(r) * omega(r);
        acc += radial.w[j] * pair_weight(r) * kI / cplx(g, e);
      }
      by_eps.push_back(acc);
    }
    const Extrapolation ex = richardson_extrapolate(eps.eps, by_eps, eps.order);
    out.closed_form = ex.value;
  }

  const double e_min = std::min({p.energy, q.energy, pp.energy, qp.energy});
  const double T_base = cfg.t_window > 0.0 ? cfg.t_window : 40.0 / e_min;
  // Stroboscopic windows: spaced by the dominant boundary period so the
  // oscillatory remainder is sampled in phase and the envelope decay shows.
  const double dT = 2.0 * kPi / E;

  for (int jw = 0; jw < cfg.n_windows; ++jw) {
    const double T = T_base + jw * dT;
    const double f_max = E + omega(r_max) + 1.0;
    const int panels =
        cfg.n_time_panels > 0
            ? cfg.n_time_panels
            : std::max(24, static_cast<int>(std::ceil(2.0 * T * f_max / (kPi / 2.0))));
    TimeWindowRule rule;
    rule.build(T, panels, cfg.panel_order);

    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < radial.size(); ++j) {
      const double r = radial.x[j];
      const double wgt = radial.w[j] * pair_weight(r);
      if (wgt == 0.0) continue;
      const double om = omega(r);
      // I': absorb (p,q) at t1 creating the internal line, absorb it at t2
      // creating (p',q').  I'': all-create first, all-absorb later.
      const cplx jp = rule.integrate_pair(om - e_in, e_out - om);
      const cplx jpp = rule.integrate_pair(e_out + om, -(e_in + om));
      acc += wgt * (jp + jpp) / (2.0 * om);
    }
    out.windows.push_back(T);
    out.timeordered.push_back(acc / (2.0 * T));
    out.relerr.push_back(std::abs(out.timeordered.back() - out.closed_form) /
                         std::abs(out.closed_form));
  }

  const std::size_t n = out.relerr.size();
  out.monotone_tail =
      n >= 3 && out.relerr[n - 1] < out.relerr[n - 2] && out.relerr[n - 2] < out.relerr[n - 3];
  return out;
}

namespace {

cplx energy_log(double X, double cut, double eps) {
  return std::log(cplx(X + cut, -eps)) - std::log(cplx(X - cut, -eps));
}

}  // namespace

LoopProbeResult probe_loop_divergence(const Diagram& d, const std::vector<double>& cutoffs,
                                      const CouplingSpec& coupling, const LoopProbeConfig& cfg,
                                      bool regulated_control) {
  if (cutoffs.size() < 3) throw std::runtime_error("numerics: need at least three cutoffs");
  for (std::size_t i = 1; i < cutoffs.size(); ++i)
    if (cutoffs[i] <= cutoffs[i - 1])
      throw std::runtime_error("numerics: cutoffs must increase");
  {
    const DeltaReduction red = reduce_deltas(d.vertex_deltas(), d.internal_symbols());
    if (red.free_internals.empty())
      throw std::runtime_error("numerics: probe requires a loop diagram");
  }
  const double m = coupling.species("massive").mass;
  const double eps = cfg.eps;
  const int n = cfg.n_nodes;

  LoopProbeResult out;
  out.figure = d.name + (regulated_control ? "+regulator" : "");
  auto Em = [&](double q2) { return std::sqrt(m * m + q2); };

  for (double cut : cutoffs) {
    cplx total(0.0, 0.0);
    CompositeRule rr;
    rr.append_interval(0.0, cut, std::max(8, n / 4), 8);
    const auto& mu_x = GaussLegendre::nodes(16);
    const auto& mu_w = GaussLegendre::weights(16);

    if (d.name == "self_energy_massive") {
      // 4 pi int r^2 dr / (4 E_m(r) r) D(omega = r)
      for (std::size_t i = 0; i < rr.size(); ++i) {
        const double r = rr.x[i];
        double f = 4.0 * kPi * r * r / (4.0 * Em(r * r) * std::max(r, 1e-300));
        if (regulated_control) f /= (1.0 + r * r * r * r);
        total += rr.w[i] * f * energy_log(r, cut, eps);
      }
    } else if (d.name == "self_energy_massless") {
      const double kappa = norm3(d.externals.front().momentum.spatial);
      for (std::size_t i = 0; i < rr.size(); ++i) {
        const double r = rr.x[i];
        for (std::size_t jm = 0; jm < mu_x.size(); ++jm) {
          const double mu = mu_x[jm];
          const double e1 = Em(r * r);
          const double e2 = Em(r * r + kappa * kappa - 2.0 * r * kappa * mu);
          const double f = 2.0 * kPi * r * r / (4.0 * e1 * e2);
          total += rr.w[i] * mu_w[jm] * f * energy_log(e1, cut, eps);
        }
      }
    } else if (d.name == "vertex_correction") {
      const Vec3 kout = d.externals[2].momentum.spatial;
      const double ko = norm3(kout);
      for (std::size_t i = 0; i < rr.size(); ++i) {
        const double r = rr.x[i];
        for (std::size_t jm = 0; jm < mu_x.size(); ++jm) {
          const double mu = mu_x[jm];
          const double ea = Em(r * r);
          const double eb2 = r * r + ko * ko - 2.0 * r * ko * mu;
          const double eb = Em(eb2);
          const double f = 2.0 * kPi * r * r / (8.0 * std::max(r, 1e-300) * ea * eb);
          total += rr.w[i] * mu_w[jm] * f * energy_log(r, cut, eps) * energy_log(eb, cut, eps);
        }
      }
    } else if (d.name == "ladder_two_loop") {
      CompositeRule r2 = rr;
      for (std::size_t i = 0; i < rr.size(); ++i) {
        const double r1 = rr.x[i];
        for (std::size_t j = 0; j < r2.size(); ++j) {
          const double rb = r2.x[j];
          for (std::size_t jm = 0; jm < mu_x.size(); ++jm) {
            const double mu = mu_x[jm];
            const double e1 = Em(r1 * r1);
            const double e2 = Em(r1 * r1 + rb * rb + 2.0 * r1 * rb * mu);
            const double e3 = Em(rb * rb);
            const double f = 8.0 * kPi * kPi * r1 * r1 * rb * rb /
                             (32.0 * std::max(r1, 1e-300) * std::max(rb, 1e-300) * e1 * e2 * e3);
            total += rr.w[i] * r2.w[j] * mu_w[jm] * f * energy_log(r1, cut, eps) *
                     energy_log(rb, cut, eps) * energy_log(e2, cut, eps);
          }
        }
      }
    } else {
      throw std::runtime_error("numerics: no probe integrand for figure '" + d.name + "'");
    }
    out.cutoffs.push_back(cut);
    out.magnitudes.push_back(std::abs(total));
  }

  // Tail growth exponent by least squares on log|I| vs log(cutoff).
  {
    const std::size_t nfit = std::min<std::size_t>(4, out.cutoffs.size());
    const std::size_t off = out.cutoffs.size() - nfit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = off; i < out.cutoffs.size(); ++i) {
      const double lx = std::log(out.cutoffs[i]);
      const double ly = std::log(std::max(out.magnitudes[i], 1e-300));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double den = nfit * sxx - sx * sx;
    out.growth_exponent = den != 0.0 ? (nfit * sxy - sx * sy) / den : 0.0;
  }

  out.monotone = true;
  for (std::size_t i = 1; i < out.magnitudes.size(); ++i)
    if (out.magnitudes[i] <= out.magnitudes[i - 1]) out.monotone = false;
  const double last_increment =
      out.magnitudes.back() - out.magnitudes[out.magnitudes.size() - 2];
  out.divergent = out.monotone && last_increment > cfg.cauchy_rtol * out.magnitudes.back();
  return out;
}

double lambda_contraction(double length_unit, const std::array<int, 3>& signs,
                          const std::array<double, 3>& masses,
                          const std::array<TestFunction, 3>& legs, int n_per_axis) {
  const double l = length_unit;
  if (l <= 0.0) throw std::runtime_error("numerics: length unit must be positive");
  const double l3 = l * l * l;
  const double measure = l3 * l3 * l3;            // one unscaled volume per index pair
  const double components = std::pow(l, -4.5);    // l^{-9/2} per test element
  const double coeff_l = std::pow(l, -4.5);       // 1/sqrt(l^9) in the Lambda coefficient

  const auto& gx = GaussLegendre::nodes(n_per_axis);
  const auto& gw = GaussLegendre::weights(n_per_axis);
  const double hw0 = legs[0].box_halfwidth();
  const double hw1 = legs[1].box_halfwidth();

  double acc = 0.0;
  for (int i0 = 0; i0 < n_per_axis; ++i0)
    for (int j0 = 0; j0 < n_per_axis; ++j0)
      for (int l0 = 0; l0 < n_per_axis; ++l0) {
        const Vec3 p1{legs[0].center[0] + hw0 * gx[i0], legs[0].center[1] + hw0 * gx[j0],
                      legs[0].center[2] + hw0 * gx[l0]};
        const double w1 = hw0 * hw0 * hw0 * gw[i0] * gw[j0] * gw[l0] * legs[0](p1);
        if (w1 == 0.0) continue;
        for (int i1 = 0; i1 < n_per_axis; ++i1)
          for (int j1 = 0; j1 < n_per_axis; ++j1)
            for (int l1 = 0; l1 < n_per_axis; ++l1) {
              const Vec3 p2{legs[1].center[0] + hw1 * gx[i1], legs[1].center[1] + hw1 * gx[j1],
                            legs[1].center[2] + hw1 * gx[l1]};
              const double w2 = hw1 * hw1 * hw1 * gw[i1] * gw[j1] * gw[l1] * legs[1](p2);
              if (w2 == 0.0) continue;
              // delta fixes the third leg: s1 p1 + s2 p2 + s3 p3 = 0
              const Vec3 p3 = (-1.0 * signs[2]) * (signs[0] * p1 + signs[1] * p2);
              const double f3 = legs[2](p3);
              if (f3 == 0.0) continue;
              const double e1 = on_shell_energy(masses[0], p1);
              const double e2 = on_shell_energy(masses[1], p2);
              const double e3 = on_shell_energy(masses[2], p3);
              const double coeff = coeff_l / std::sqrt(8.0 * e1 * e2 * e3);
              acc += w1 * w2 * f3 * measure * components * coeff;
            }
      }
  return acc;
}

}  // namespace qpert
