#include "quantlab/stratum_density.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

namespace quantlab::stratum {

namespace {

const cd kI(0.0, 1.0);
constexpr int kChunks = 16;
constexpr double kEdgeTol = 1e-12;

struct RowAccumulator {
  NormParts parts;
  bool touches = false;
};

/// Stencil over rows [lo, hi) given a row provider.
template <typename RowFn>
RowAccumulator sweep(int n, double h, int lo, int hi, RowFn row) {
  RowAccumulator acc;
  std::vector<cd> prev = row(lo - 1), cur = row(lo), next;
  const double area = h * h;
  for (int iy = lo; iy < hi; ++iy) {
    next = row(iy + 1);
    for (int ix = 0; ix < n; ++ix) {
      const cd v = cur[static_cast<std::size_t>(ix)];
      const cd left = ix > 0 ? cur[static_cast<std::size_t>(ix - 1)] : cd(0.0);
      const cd right = ix + 1 < n ? cur[static_cast<std::size_t>(ix + 1)] : cd(0.0);
      const cd dx = (right - left) / (2.0 * h);
      const cd dy = (next[static_cast<std::size_t>(ix)] - prev[static_cast<std::size_t>(ix)]) / (2.0 * h);
      const bool edge = ix < 2 || ix >= n - 2 || iy < 2 || iy >= n - 2;
      if (edge && std::abs(v) > kEdgeTol) acc.touches = true;
      acc.parts.l2_sq += area * std::norm(v);
      acc.parts.dx_sq += area * std::norm(dx);
      acc.parts.dy_sq += area * std::norm(dy);
      acc.parts.dbar_sq += area * std::norm(0.5 * (dx + kI * dy));
    }
    prev.swap(cur);
    cur.swap(next);
  }
  return acc;
}

/// Fixed chunking keeps the summation order independent of the thread count.
template <typename RowFn>
NormParts chunked(int n, RowFn row) {
  const double h = 2.0 / n;
  std::vector<RowAccumulator> parts(kChunks);
  std::vector<std::thread> pool;
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  auto work = [&](int c) {
    const int lo = n * c / kChunks, hi = n * (c + 1) / kChunks;
    parts[static_cast<std::size_t>(c)] = sweep(n, h, lo, hi, row);
  };
  for (int c = 0; c < kChunks;) {
    for (unsigned t = 0; t < hw && c < kChunks; ++t, ++c) pool.emplace_back(work, c);
    for (auto& th : pool) th.join();
    pool.clear();
  }
  NormParts total;
  bool touches = false;
  for (const auto& p : parts) {
    total.l2_sq += p.parts.l2_sq;
    total.dx_sq += p.parts.dx_sq;
    total.dy_sq += p.parts.dy_sq;
    total.dbar_sq += p.parts.dbar_sq;
    touches = touches || p.touches;
  }
  if (touches) throw UsageError("grid field support reaches the boundary of [-1, 1]^2");
  return total;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

GridField GridField::sample(int n, const std::function<cd(double, double)>& f) {
  if (n < 8) throw UsageError("grid needs at least 8 cells per axis");
  GridField g;
  g.n = n;
  g.h = 2.0 / n;
  g.values.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      g.values[static_cast<std::size_t>(iy) * static_cast<std::size_t>(n) + static_cast<std::size_t>(ix)] =
          f(g.coord(ix), g.coord(iy));
  return g;
}

cd GridField::at(int ix, int iy) const {
  if (ix < 0 || iy < 0 || ix >= n || iy >= n) return 0.0;
  return values[static_cast<std::size_t>(iy) * static_cast<std::size_t>(n) + static_cast<std::size_t>(ix)];
}

double NormParts::h1() const { return std::sqrt(l2_sq + dx_sq + dy_sq); }
double NormParts::graph() const { return std::sqrt(l2_sq + 2.0 * dbar_sq); }

NormParts norm_parts(const GridField& f) {
  return chunked(f.n, [&](int iy) {
    std::vector<cd> r(static_cast<std::size_t>(f.n));
    for (int ix = 0; ix < f.n; ++ix) r[static_cast<std::size_t>(ix)] = f.at(ix, iy);
    return r;
  });
}

double h1_norm(const GridField& f) { return norm_parts(f).h1(); }
double dolbeault_graph_norm(const GridField& f) { return norm_parts(f).graph(); }

NormParts streamed_norm_parts(int n, const std::function<cd(double, double)>& f) {
  if (n < 8) throw UsageError("grid needs at least 8 cells per axis");
  const double h = 2.0 / n;
  return chunked(n, [&](int iy) {
    std::vector<cd> r(static_cast<std::size_t>(n), cd(0.0));
    if (iy < 0 || iy >= n) return r;
    const double y = -1.0 + (iy + 0.5) * h;
    for (int ix = 0; ix < n; ++ix) r[static_cast<std::size_t>(ix)] = f(-1.0 + (ix + 0.5) * h, y);
    return r;
  });
}

double cutoff_profile(double m, double d) {
  if (d <= 0.0) return 0.0;
  return std::clamp(std::log(m * m * d) / std::log(m), 0.0, 1.0);
}

double bump(double x, double y, double radius, double cx, double cy) {
  const double rho2 = ((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (radius * radius);
  if (rho2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - rho2));
}

double removal_error(int n, double m, Removed set, double bump_radius) {
  return streamed_norm_parts(n, [&](double x, double y) {
           const double d = set == Removed::point ? std::hypot(x, y) : std::abs(x);
           return cd((1.0 - cutoff_profile(m, d)) * bump(x, y, bump_radius));
         })
      .graph();
}

nlohmann::json DensityDemo::to_json() const {
  nlohmann::json refined = nlohmann::json::array();
  for (double e : error_refined) refined.push_back(std::isfinite(e) ? nlohmann::json(e) : nlohmann::json(nullptr));
  return {{"m", m},
          {"E", error},
          {"E_refined", refined},
          {"E_line", error_line},
          {"resolved", resolved},
          {"min_usable_m", min_usable_m},
          {"rate_exponent", rate}};
}

std::string DensityDemo::csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "m,E\n";
  for (std::size_t i = 0; i < m.size(); ++i) os << m[i] << "," << error[i] << "\n";
  return os.str();
}

DensityDemo removal_density_demo(const StratumConfig& cfg) {
  if (cfg.log_m.size() < 2) throw UsageError("density demo needs at least two values of m");
  if (cfg.bump_radius <= 0.0 || cfg.bump_radius > 0.9) throw UsageError("bump radius must lie in (0, 0.9]");
  DensityDemo d;
  const double h = 2.0 / cfg.grid;
  // smallest m whose inner radius 1/m^2 fails to span resolve_cells cells
  d.min_usable_m = 1.0 / std::sqrt(cfg.resolve_cells * h);
  for (double lm : cfg.log_m) {
    if (lm <= 0.0) throw UsageError("m must exceed 1");
    const double m = std::exp(lm);
    d.m.push_back(m);
    d.error.push_back(removal_error(cfg.grid, m, Removed::point, cfg.bump_radius));
    d.error_line.push_back(removal_error(cfg.grid, m, Removed::line, cfg.bump_radius));
    const bool ok = 1.0 / (m * m) >= cfg.resolve_cells * h;
    d.resolved.push_back(ok);
    d.error_refined.push_back(ok && cfg.refined_grid > 0 ? removal_error(cfg.refined_grid, m, Removed::point, cfg.bump_radius)
                                                         : NAN);
  }
  std::vector<double> x, y;
  for (std::size_t i = 0; i < d.m.size(); ++i) {
    x.push_back(std::log(std::sqrt(std::log(d.m[i]))));
    y.push_back(std::log(d.error[i]));
  }
  d.rate = -log_log_slope(x, y);
  return d;
}

ReportList density_certificates(const DensityDemo& d) {
  ReportList out;
  nlohmann::json base = d.to_json();
  base["norm"] = "(|g|^2 + 2 |dbar g|^2)^{1/2}, dbar = (d_x + i d_y) / 2";
  base["profile"] = "clamp(log(m^2 r) / log m, 0, 1)";

  int increases = 0;
  double worst_step = -INFINITY;
  for (std::size_t i = 0; i + 1 < d.error.size(); ++i) {
    if (!(d.error[i + 1] < d.error[i])) ++increases;
    worst_step = std::max(worst_step, d.error[i + 1] - d.error[i]);
  }
  auto meta = base;
  meta["largest_step"] = worst_step;
  out.push_back(CheckReport::make("density.removal_decreasing", "is dense in $H^s(\\mathbb{R}^n)$", 0.0,
                                  static_cast<double>(increases), meta));

  meta = base;
  std::vector<double> scaled;
  for (std::size_t i = 0; i < d.m.size(); ++i) scaled.push_back(d.error[i] * std::pow(std::log(d.m[i]), d.rate / 2.0));
  meta["scaled_E"] = scaled;
  meta["rate_window"] = {0.5, 2.0};
  const double outside = std::max({0.0, 0.5 - d.rate, d.rate - 2.0});
  out.push_back(CheckReport::make("density.capacity_rate", "is dense in $H^s(\\mathbb{R}^n)$", 0.0,
                                  std::isfinite(d.rate) ? outside : INFINITY, meta));

  meta = base;
  double refine = 0.0;
  int used = 0;
  std::vector<double> rel;
  for (std::size_t i = 0; i < d.m.size(); ++i) {
    if (!d.resolved[i] || !std::isfinite(d.error_refined[i])) continue;
    const double r = std::abs(d.error[i] - d.error_refined[i]) / d.error_refined[i];
    rel.push_back(r);
    refine = std::max(refine, r);
    ++used;
  }
  meta["relative_change"] = rel;
  meta["resolved_values"] = used;
  out.push_back(CheckReport::make("density.refinement", "graph norm of the Dolbeault--Dirac operator", 0.1,
                                  used > 0 ? refine : INFINITY, meta));

  meta = base;
  const double floor = 0.1 * d.error.front();
  const double lowest = *std::min_element(d.error_line.begin(), d.error_line.end());
  meta["line_floor"] = floor;
  meta["line_minimum"] = lowest;
  out.push_back(CheckReport::make("density.line_contrast", "is dense in $H^s(\\mathbb{R}^n)$", 0.0,
                                  std::max(0.0, floor - lowest), meta));
  return out;
}

CheckReport norm_equivalence_certificate(int n) {
  const auto f = GridField::sample(n, [](double x, double y) {
    return bump(x, y, 0.6, 0.1, -0.05) * std::exp(kI * (3.0 * x - 2.0 * y + x * y));
  });
  const NormParts p = norm_parts(f);
  const double lhs = p.graph() * p.graph() - p.l2_sq;
  const double rhs = 0.5 * (p.dx_sq + p.dy_sq);
  const double ratio = p.graph() / p.h1();
  nlohmann::json meta{{"grid", n},
                      {"graph_norm", p.graph()},
                      {"h1_norm", p.h1()},
                      {"ratio", ratio},
                      {"lower_constant", kEquivalenceLower},
                      {"upper_constant", kEquivalenceUpper}};
  const bool bounded = ratio >= kEquivalenceLower - 1e-12 && ratio <= kEquivalenceUpper + 1e-12;
  return CheckReport::make("density.norm_equivalence", "graph norm of the Dolbeault--Dirac operator", 1e-12,
                           bounded ? std::abs(lhs - rhs) / rhs : INFINITY, meta);
}

}  // namespace quantlab::stratum
