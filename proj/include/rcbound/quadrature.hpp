#pragma once

#include <cstdint>
#include <functional>
#include <utility>

// Globally adaptive Gauss-Kronrod quadrature (15-point Kronrod rule with the
// embedded 7-point Gauss rule for error estimation). The worst interval is
// bisected until the summed error estimate meets tolerance or a depth/interval
// cap is hit; hitting a cap flags the result instead of failing. Integration
// runs in linear space; integrands are expected to assemble their values from
// log-domain parts and exponentiate last.

namespace rcbound {

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-15;
  int max_depth = 40;        // no interval is bisected beyond this depth
  double tail_mass = 1e-12;  // probability mass trimmed off infinite domains
};

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;
  bool depth_exceeded = false;  // tolerance unmet when a cap was reached
  std::int64_t cells = 0;       // final interval count (1D) or total inner+outer
};

QuadResult integrate_1d(const std::function<double(double)>& f, double lo, double hi,
                        const QuadratureConfig& cfg = {});

// Iterated 2D integral: for each outer point x, the inner integral of
// f(x, y) over [inner_bounds(x).first, inner_bounds(x).second] runs at a
// 10x tighter relative tolerance; inner error estimates propagate additively
// into the reported err_est.
QuadResult integrate_2d_iterated(
    const std::function<double(double, double)>& f,
    double outer_lo, double outer_hi,
    const std::function<std::pair<double, double>(double)>& inner_bounds,
    const QuadratureConfig& cfg = {});

}  // namespace rcbound
