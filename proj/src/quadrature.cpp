#include "rcbound/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <queue>
#include <vector>

#include "rcbound/errors.hpp"

namespace rcbound {

namespace {

// 15-point Kronrod abscissae on [-1, 1] (positive half; symmetric) with the
// embedded 7-point Gauss rule at the odd indices.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Cell {
  double lo, hi;
  double value, err;
  int depth;
  std::int64_t idx;  // creation order; keeps the heap deterministic
};

struct CellWorse {
  bool operator()(const Cell& a, const Cell& b) const {
    if (a.err != b.err) return a.err < b.err;
    return a.idx > b.idx;
  }
};

// One Kronrod-15 evaluation with the QUADPACK-style error estimate.
void eval_cell(const std::function<double(double)>& f, Cell& c) {
  const double mid = 0.5 * (c.lo + c.hi);
  const double h = 0.5 * (c.hi - c.lo);
  double fv1[7], fv2[7];
  const double fc = f(mid);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = std::fabs(resk);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    fv1[j] = f(mid - dx);
    fv2[j] = f(mid + dx);
    const double sum = fv1[j] + fv2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
  }
  const double ah = std::fabs(h);
  resabs *= ah;
  resasc *= ah;
  c.value = resk * h;
  double err = std::fabs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > DBL_MIN / (50.0 * DBL_EPSILON)) {
    err = std::max(DBL_EPSILON * 50.0 * resabs, err);
  }
  c.err = err;
}

}  // namespace

QuadResult integrate_1d(const std::function<double(double)>& f, double lo, double hi,
                        const QuadratureConfig& cfg) {
  if (!(std::isfinite(lo) && std::isfinite(hi))) {
    throw DomainError("integrate_1d: bounds must be finite");
  }
  QuadResult out;
  if (lo == hi) return out;

  constexpr std::int64_t kMaxCells = 100000;
  std::int64_t next_idx = 0;

  Cell root{lo, hi, 0.0, 0.0, 0, next_idx++};
  eval_cell(f, root);

  std::priority_queue<Cell, std::vector<Cell>, CellWorse> active;
  std::vector<Cell> frozen;  // at max depth, no further refinement
  active.push(root);
  double total_value = root.value;
  double total_err = root.err;

  while (total_err > std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total_value))) {
    if (active.empty() || next_idx >= kMaxCells) {
      out.depth_exceeded = true;
      break;
    }
    Cell worst = active.top();
    active.pop();
    if (worst.depth >= cfg.max_depth) {
      frozen.push_back(worst);
      continue;  // unsplittable; try the next-worst cell
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    Cell left{worst.lo, mid, 0.0, 0.0, worst.depth + 1, next_idx++};
    Cell right{mid, worst.hi, 0.0, 0.0, worst.depth + 1, next_idx++};
    eval_cell(f, left);
    eval_cell(f, right);
    total_value += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    active.push(left);
    active.push(right);
  }

  // Final sums in creation order, independent of heap internals.
  std::vector<Cell> cells = std::move(frozen);
  while (!active.empty()) {
    cells.push_back(active.top());
    active.pop();
  }
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.idx < b.idx; });
  out.value = 0.0;
  out.err_est = 0.0;
  for (const Cell& c : cells) {
    out.value += c.value;
    out.err_est += c.err;
  }
  out.cells = std::int64_t(cells.size());
  return out;
}

QuadResult integrate_2d_iterated(
    const std::function<double(double, double)>& f,
    double outer_lo, double outer_hi,
    const std::function<std::pair<double, double>(double)>& inner_bounds,
    const QuadratureConfig& cfg) {
  QuadratureConfig inner_cfg = cfg;
  inner_cfg.rel_tol = cfg.rel_tol * 0.1;
  inner_cfg.abs_tol = cfg.abs_tol * 0.1;

  std::int64_t inner_cells = 0;
  bool inner_depth_exceeded = false;

  auto outer_f = [&](double x) {
    const auto [ylo, yhi] = inner_bounds(x);
    const QuadResult r = integrate_1d([&](double y) { return f(x, y); }, ylo, yhi, inner_cfg);
    inner_cells += r.cells;
    inner_depth_exceeded = inner_depth_exceeded || r.depth_exceeded;
    return r.value;
  };

  QuadResult outer = integrate_1d(outer_f, outer_lo, outer_hi, cfg);
  QuadResult out;
  out.value = outer.value;
  // Inner integrals carry up to rel_tol/10 relative error each; budget twice
  // that against the outer value, additively with the outer estimate.
  out.err_est = outer.err_est + 0.2 * cfg.rel_tol * std::fabs(outer.value) + cfg.abs_tol;
  out.depth_exceeded = outer.depth_exceeded || inner_depth_exceeded;
  out.cells = outer.cells + inner_cells;
  return out;
}

}  // namespace rcbound
