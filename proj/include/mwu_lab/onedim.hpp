// Copyright 2026 The mwu_lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MWU_LAB_ONEDIM_HPP
#define MWU_LAB_ONEDIM_HPP

// Interval maps F : [lo, hi] → [lo, hi] and the tools used to certify their
// periodic orbits: grid scan plus bisection root finding for F^k(x) = x,
// sign partitions of (F^k)', period-three search and the Li-Yorke
// hypothesis d <= a < b < c (or d >= a > b > c) with b = F(a), c = F²(a),
// d = F³(a).
//
// Root finding never differentiates iterated maps; H and G have slopes up
// to e^{18} near the boundary, so Newton-type refinements are unreliable.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mwu_lab/dynamics.hpp"
#include "mwu_lab/error.hpp"
#include "mwu_lab/game.hpp"

namespace mwu_lab::onedim {

using ScalarFunction = std::function<double(double)>;

class IntervalMap {
 public:
  static constexpr double kFiniteDifferenceStep = 1e-7;
  static constexpr std::size_t kInvarianceGrid = 10000;
  static constexpr double kInvarianceTolerance = 1e-12;

  // Checks on a 10^4-point grid that the map sends [lo, hi] into itself.
  IntervalMap(std::string name, double lo, double hi, ScalarFunction rule,
              std::optional<ScalarFunction> derivative = std::nullopt)
      : name_(std::move(name)),
        lo_(lo),
        hi_(hi),
        rule_(std::move(rule)),
        derivative_(std::move(derivative)) {
    if (!(lo_ < hi_)) throw DomainError(name_ + ": empty domain");
    for (std::size_t i = 0; i <= kInvarianceGrid; ++i) {
      const double x = grid_point(i, kInvarianceGrid);
      const double y = rule_(x);
      if (!(y >= lo_ - kInvarianceTolerance && y <= hi_ + kInvarianceTolerance)) {
        throw DomainError(name_ + " maps " + std::to_string(x) + " to " +
                          std::to_string(y) + ", outside its domain");
      }
    }
  }

  const std::string& name() const { return name_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  double operator()(double x) const {
    check_domain(x);
    return std::clamp(rule_(x), lo_, hi_);
  }

  // Closed form when supplied, else a central difference with h = 1e-7
  // (one-sided at the boundary).
  double derivative(double x) const {
    check_domain(x);
    if (derivative_) return (*derivative_)(x);
    const double h = kFiniteDifferenceStep;
    const double a = std::max(lo_, x - h);
    const double b = std::min(hi_, x + h);
    return (rule_(b) - rule_(a)) / (b - a);
  }

  bool has_closed_form_derivative() const { return derivative_.has_value(); }

  double grid_point(std::size_t i, std::size_t n) const {
    if (i == n) return hi_;
    return lo_ + (hi_ - lo_) * static_cast<double>(i) / static_cast<double>(n);
  }

 private:
  void check_domain(double x) const {
    if (!(x >= lo_ && x <= hi_)) {
      throw DomainError(name_ + ": " + std::to_string(x) + " outside [" +
                        std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
    }
  }

  std::string name_;
  double lo_;
  double hi_;
  ScalarFunction rule_;
  std::optional<ScalarFunction> derivative_;
};

namespace detail {

// x e^{A(x)} / (x e^{A(x)} + (1−x) e^{B(x)}) with affine exponents, evaluated
// with the larger log-weight subtracted.
inline double exp_ratio(double x, double a_slope, double a_offset, double b_slope,
                        double b_offset) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("x = " + std::to_string(x) + " outside [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double la = std::log(x) + a_slope * x + a_offset;
  const double lb = std::log1p(-x) + b_slope * x + b_offset;
  const double top = std::max(la, lb);
  const double wa = std::exp(la - top);
  const double wb = std::exp(lb - top);
  return wa / (wa + wb);
}

// Derivative of the map above: with D(x) = B(x) − A(x) = s x + t,
// F'(x) = e^{D} (1 − s x + s x²) / (x + (1 − x) e^{D})².
inline double exp_ratio_derivative(double x, double s, double t) {
  const double ed = std::exp(s * x + t);
  const double den = x + (1.0 - x) * ed;
  return ed * (1.0 - s * x + s * x * x) / (den * den);
}

}  // namespace detail

// H(x) = x e^{−5(x+1)} / (x e^{−5(x+1)} + (1−x) e^{−5(2−x)}).
inline double map_h(double x) { return detail::exp_ratio(x, -5.0, -5.0, 5.0, -10.0); }

// H'(x) = e^{5+10x} (1 − 10x + 10x²) / (e^{10x}(x − 1) − e^5 x)².
inline double map_h_derivative(double x) { return detail::exp_ratio_derivative(x, 10.0, -5.0); }

// G(x) = x e^{−10(x+1)} / (x e^{−10(x+1)} + (1−x) e^{−14(2−x)}).
inline double map_g(double x) { return detail::exp_ratio(x, -10.0, -10.0, 14.0, -28.0); }

inline double map_g_derivative(double x) { return detail::exp_ratio_derivative(x, 24.0, -18.0); }

inline IntervalMap h_map() { return IntervalMap("H", 0.0, 1.0, map_h, map_h_derivative); }
inline IntervalMap g_map() { return IntervalMap("G", 0.0, 1.0, map_g, map_g_derivative); }

inline double iterate(const IntervalMap& map, double x, std::size_t k) {
  for (std::size_t t = 0; t < k; ++t) x = map(x);
  return x;
}

// (F^k)'(x) by the chain rule.
inline double iterate_derivative(const IntervalMap& map, double x, std::size_t k) {
  double d = 1.0;
  for (std::size_t t = 0; t < k; ++t) {
    d *= map.derivative(x);
    x = map(x);
  }
  return d;
}

// H's critical points (5 ∓ √15)/10, the roots of 1 − 10x + 10x².
inline double h_critical_low() { return (5.0 - std::sqrt(15.0)) / 10.0; }
inline double h_critical_high() { return (5.0 + std::sqrt(15.0)) / 10.0; }

enum class OrbitKind { kFixed, kPeriodic, kLiYorke };

struct OrbitCertificate {
  OrbitKind kind = OrbitKind::kFixed;
  std::size_t period = 1;
  std::vector<double> points;
  double residual = 0.0;  // max |F^period(z) − z| over the orbit
  // Min pairwise distance among orbit points; +inf for a single point.
  double separation = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> brackets;
};

inline std::string kind_label(const OrbitCertificate& c) {
  switch (c.kind) {
    case OrbitKind::kFixed: return "fixed";
    case OrbitKind::kPeriodic: return "periodic-" + std::to_string(c.period);
    case OrbitKind::kLiYorke: return "li-yorke";
  }
  return "unknown";
}

namespace detail {

// Bisection on a sign change of f in [a, b]; stops once |f| <= tol or the
// bracket cannot shrink further.
template <typename F>
std::pair<double, double> bisect(const F& f, double a, double b, double fa, double tol,
                                 std::pair<double, double>* bracket = nullptr) {
  double fb = f(b);
  for (int it = 0; it < 2000; ++it) {
    const double mid = a + 0.5 * (b - a);
    if (mid <= a || mid >= b) break;
    const double fm = f(mid);
    if (std::abs(fm) <= tol) {
      if (bracket) *bracket = {a, b};
      return {mid, fm};
    }
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
  }
  if (bracket) *bracket = {a, b};
  return std::abs(fa) <= std::abs(fb) ? std::pair{a, fa} : std::pair{b, fb};
}

// Errors grow along an orbit when F is steep, so each iterate is re-solved
// as a root of F^k(x) − x inside a small bracket around it.
inline double polish_periodic_point(const IntervalMap& map, double x, std::size_t k,
                                    double tol) {
  const auto f = [&](double t) { return iterate(map, t, k) - t; };
  const double fx = f(x);
  if (std::abs(fx) <= tol) return x;
  for (double delta = 1e-14; delta <= 1e-6; delta *= 4.0) {
    const double a = std::max(map.lo(), x - delta);
    const double b = std::min(map.hi(), x + delta);
    const double fa = f(a);
    const double fb = f(b);
    if ((fa < 0.0) != (fb < 0.0)) {
      const auto [root, value] = bisect(f, a, b, fa, tol);
      return std::abs(value) < std::abs(fx) ? root : x;
    }
  }
  return x;
}

}  // namespace detail

// Orbit of z under F with the residual and separation filled in.
inline OrbitCertificate make_orbit_certificate(const IntervalMap& map, double z,
                                               std::size_t period,
                                               std::pair<double, double> bracket,
                                               double tol = 1e-12) {
  OrbitCertificate cert;
  cert.kind = period == 1 ? OrbitKind::kFixed : OrbitKind::kPeriodic;
  cert.period = period;
  cert.brackets.push_back(bracket);
  double x = z;
  for (std::size_t j = 0; j < period; ++j) {
    cert.points.push_back(j == 0 ? x : detail::polish_periodic_point(map, x, period, tol));
    x = map(x);
  }
  for (double p : cert.points) {
    cert.residual = std::max(cert.residual, std::abs(iterate(map, p, period) - p));
  }
  for (std::size_t a = 0; a < cert.points.size(); ++a) {
    for (std::size_t b = a + 1; b < cert.points.size(); ++b) {
      cert.separation = std::min(cert.separation, std::abs(cert.points[a] - cert.points[b]));
    }
  }
  return cert;
}

struct RootScanOptions {
  std::size_t grid = 100000;
  double tolerance = 1e-12;   // bisection target on |F^k(z) − z|
  double dedup = 1e-9;        // roots closer than this are merged
  double period_tol = 1e-9;   // distance to a lower-period root
  double degenerate_fraction = 0.5;
};

namespace detail {

struct Root {
  double x;
  double value;
  std::pair<double, double> bracket;
};

inline std::vector<Root> scan_roots(const IntervalMap& map, std::size_t k,
                                    const RootScanOptions& options) {
  if (k == 0) throw DomainError("iteration count must be at least 1");
  const auto f = [&](double x) { return iterate(map, x, k) - x; };
  const std::size_t n = options.grid;
  std::vector<double> xs(n + 1);
  std::vector<double> values(n + 1);
  std::size_t flat = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    xs[i] = map.grid_point(i, n);
    values[i] = f(xs[i]);
    if (std::abs(values[i]) < options.tolerance) ++flat;
  }
  if (static_cast<double>(flat) > options.degenerate_fraction * static_cast<double>(n + 1)) {
    throw DegenerateMap(map.name() + "^" + std::to_string(k) +
                        " coincides with the identity on most of the grid");
  }
  std::vector<Root> roots;
  for (std::size_t i = 0; i <= n; ++i) {
    if (std::abs(values[i]) <= options.tolerance) {
      roots.push_back({xs[i], values[i], {xs[i], xs[i]}});
      continue;
    }
    if (i < n && std::abs(values[i + 1]) > options.tolerance &&
        (values[i] < 0.0) != (values[i + 1] < 0.0)) {
      std::pair<double, double> bracket;
      const auto [x, value] = bisect(f, xs[i], xs[i + 1], values[i], options.tolerance, &bracket);
      roots.push_back({x, value, bracket});
    }
  }
  std::vector<Root> merged;
  for (const auto& r : roots) {
    if (!merged.empty() && r.x - merged.back().x <= options.dedup) {
      if (std::abs(r.value) < std::abs(merged.back().value)) merged.back() = r;
      continue;
    }
    merged.push_back(r);
  }
  return merged;
}

}  // namespace detail

// Every root of F^k(x) = x, each tagged with its true period: the smallest
// divisor d of k such that the root lies within period_tol of a root of
// F^d(x) = x. Throws DegenerateMap when F^k is the identity on most of the
// grid.
inline std::vector<OrbitCertificate> find_fixed_points(const IntervalMap& map, std::size_t k,
                                                       const RootScanOptions& options = {}) {
  const auto roots = detail::scan_roots(map, k, options);
  std::vector<std::pair<std::size_t, std::vector<detail::Root>>> lower;
  for (std::size_t d = 1; d < k; ++d) {
    if (k % d == 0) lower.emplace_back(d, detail::scan_roots(map, d, options));
  }
  std::vector<OrbitCertificate> out;
  for (const auto& r : roots) {
    std::size_t period = k;
    for (const auto& [d, candidates] : lower) {
      const bool near = std::any_of(candidates.begin(), candidates.end(), [&](const auto& c) {
        return std::abs(c.x - r.x) <= options.period_tol;
      });
      if (near) {
        period = d;
        break;
      }
    }
    out.push_back(make_orbit_certificate(map, r.x, period, r.bracket));
  }
  return out;
}

// Certificates of exact period k whose orbit points are separated by more
// than `min_separation`.
inline std::vector<OrbitCertificate> genuine_orbits(const std::vector<OrbitCertificate>& certs,
                                                    std::size_t k, double min_separation = 1e-6) {
  std::vector<OrbitCertificate> out;
  for (const auto& c : certs) {
    if (c.period == k && (k == 1 || c.separation > min_separation)) out.push_back(c);
  }
  return out;
}

struct SignInterval {
  double lo;
  double hi;
  int sign;  // +1 increasing, -1 decreasing
};

// Partition of the domain by the sign of (F^k)', k ∈ {1, 2}. Breakpoints
// are refined by bisection to width `tol`.
inline std::vector<SignInterval> derivative_sign_intervals(const IntervalMap& map,
                                                           std::size_t k,
                                                           std::size_t grid = 100000,
                                                           double tol = 1e-10) {
  if (k != 1 && k != 2) throw DomainError("derivative signs are analysed for k = 1, 2");
  const auto sign_at = [&](double x) {
    const double d = iterate_derivative(map, x, k);
    return d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
  };
  std::vector<SignInterval> out;
  double start = map.lo();
  int current = 0;
  double prev_x = map.lo();
  for (std::size_t i = 0; i <= grid; ++i) {
    const double x = map.grid_point(i, grid);
    const int s = sign_at(x);
    if (s == 0) continue;
    if (current == 0) {
      current = s;
    } else if (s != current) {
      double a = prev_x;
      double b = x;
      while (b - a > tol) {
        const double mid = a + 0.5 * (b - a);
        if (mid <= a || mid >= b) break;
        const int sm = sign_at(mid);
        if (sm == current) {
          a = mid;
        } else {
          b = mid;
        }
      }
      const double breakpoint = a + 0.5 * (b - a);
      out.push_back({start, breakpoint, current});
      start = breakpoint;
      current = s;
    }
    prev_x = x;
  }
  out.push_back({start, map.hi(), current == 0 ? 1 : current});
  return out;
}

// Root y of F³(x) = x in (lo, hi) with y, F(y), F²(y) pairwise distinct.
inline OrbitCertificate find_period3(const IntervalMap& map, double lo, double hi,
                                     double tolerance = 1e-12, double min_separation = 1e-6) {
  const auto f = [&](double x) { return iterate(map, x, 3) - x; };
  const double flo = f(lo);
  const double fhi = f(hi);
  if (!((flo < 0.0 && fhi > 0.0) || (flo > 0.0 && fhi < 0.0))) {
    throw NoSignChange(map.name() + "^3(x) - x has the same sign at " + std::to_string(lo) +
                       " and " + std::to_string(hi));
  }
  std::pair<double, double> bracket;
  const double y = detail::bisect(f, lo, hi, flo, tolerance, &bracket).first;
  auto cert = make_orbit_certificate(map, y, 3, bracket, tolerance);
  if (!(cert.separation > min_separation) || std::abs(map(y) - y) <= min_separation ||
      std::abs(iterate(map, y, 2) - y) <= min_separation) {
    throw CollapsedOrbit("orbit of " + std::to_string(y) +
                         " does not have three distinct points");
  }
  return cert;
}

struct LiYorkeReport {
  double a = 0.0;
  double b = 0.0;  // F(a)
  double c = 0.0;  // F²(a)
  double d = 0.0;  // F³(a)
  bool holds = false;
};

// Checks d <= a < b < c or d >= a > b > c. The strict inequalities are exact;
// the comparison of d with a allows `tol`, since at a period-3 point d = a
// only up to rounding.
inline LiYorkeReport li_yorke_certificate(const IntervalMap& map, double a, double tol = 1e-10) {
  LiYorkeReport r;
  r.a = a;
  r.b = map(a);
  r.c = map(r.b);
  r.d = map(r.c);
  const bool ascending = r.d <= r.a + tol && r.a < r.b && r.b < r.c;
  const bool descending = r.d >= r.a - tol && r.a > r.b && r.b > r.c;
  r.holds = ascending || descending;
  return r;
}

// First orbit point of a period-3 certificate at which the hypothesis holds.
inline std::optional<LiYorkeReport> li_yorke_from_orbit(const IntervalMap& map,
                                                        const OrbitCertificate& cert,
                                                        double tol = 1e-10) {
  for (double a : cert.points) {
    auto report = li_yorke_certificate(map, a, tol);
    if (report.holds) return report;
  }
  return std::nullopt;
}

struct GapRange {
  double min_gap = 0.0;
  double max_gap = 0.0;
};

// min and max of |F^n(x) − F^n(y)| over 1 <= n <= horizon. Finite-horizon
// evidence only.
inline GapRange scrambled_pair_evidence(const IntervalMap& map, double x, double y,
                                        std::size_t horizon) {
  if (horizon == 0) throw DomainError("horizon must be at least 1");
  GapRange g{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t n = 1; n <= horizon; ++n) {
    x = map(x);
    y = map(y);
    const double gap = std::abs(x - y);
    g.min_gap = std::min(g.min_gap, gap);
    g.max_gap = std::max(g.max_gap, gap);
  }
  return g;
}

// The scalar map x ↦ p'_{1,1} obtained by running one dynamics step from
// the symmetric profile p_1 = p_2 = (x, 1 − x). Needs two agents with the
// same two strategies and the same rate.
inline IntervalMap symmetric_reduction(const CongestionGame& game, const LearningRates& rates,
                                       Variant variant) {
  if (game.num_agents() != 2) throw AsymmetricGame("reduction needs exactly two agents");
  if (game.num_strategies(0) != 2 || game.strategies(0) != game.strategies(1)) {
    throw AsymmetricGame("agents must share the same two strategies");
  }
  if (rates.size() != 2 || !(rates[0] == rates[1])) {
    throw AsymmetricGame("agents must share the learning rate");
  }
  check_admissible(game, rates, variant);
  auto rule = [game, rates, variant](double x) {
    const MixedProfile p({{x, 1.0 - x}, {x, 1.0 - x}});
    return step(game, p, rates, variant)(0, 0);
  };
  return IntervalMap(variant == Variant::kLinear ? "reduced-linear" : "reduced-exp", 0.0, 1.0,
                     std::move(rule));
}

// Rows x, F(x), F²(x), F³(x), F¹⁰(x) on an (n+1)-point grid.
inline std::vector<std::vector<double>> cobweb_table(const IntervalMap& map, std::size_t n = 1000,
                                                     const std::vector<std::size_t>& powers = {1, 2, 3, 10}) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = map.grid_point(i, n);
    std::vector<double> row{x};
    for (auto k : powers) row.push_back(iterate(map, x, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mwu_lab::onedim

#endif  // MWU_LAB_ONEDIM_HPP
