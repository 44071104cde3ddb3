#pragma once

#include <map>
#include <set>

#include "tubenorm/geometry.hpp"

namespace tubenorm {

inline constexpr const char* kSystemsVersion = "curve_systems/1";

// ---------------------------------------------------------------------------
// Finite families of closed curves with multiplicity bookkeeping
// ---------------------------------------------------------------------------

struct CurveSystem {
  std::vector<Curve> curves;

  explicit CurveSystem(std::vector<Curve> cs) : curves(std::move(cs)) {
    if (curves.empty()) throw DegenerateInput("CurveSystem: at least one curve");
    for (const auto& c : curves)
      if (!c.closed()) throw DegenerateInput("CurveSystem: members must be closed");
  }

  int count() const { return static_cast<int>(curves.size()); }
  double length() const {
    double s = 0.0;
    for (const auto& c : curves) s += c.length;  // summation order fixed by index
    return s;
  }
  double max_sample_spacing() const {
    double m = 0.0;
    for (const auto& c : curves) m = std::max(m, c.length * c.h());
    return m;
  }
};

enum class CrossingClass { Tangent, Transverse };

struct CrossingReport {
  Vec2 location;
  int curve_a = 0, curve_b = 0;
  double s_a = 0.0, s_b = 0.0;
  CrossingClass classification = CrossingClass::Tangent;
  double angle = 0.0;  // angle between tangent lines, in [0, pi/2]
};

namespace detail {

// spatial hash over trace samples for neighbour queries
class TraceIndex {
 public:
  TraceIndex(const CurveSystem& sys, double cell) : sys_(sys), cell_(cell) {
    for (int ci = 0; ci < sys.count(); ++ci) {
      const auto& c = sys.curves[ci];
      for (int i = 0; i < c.n(); ++i) buckets_[key(c.pts[i])].push_back({ci, i});
    }
  }

  template <typename F>
  void for_near(Vec2 p, double radius, F&& fn) const {
    const int r = static_cast<int>(std::ceil(radius / cell_));
    const auto [kx, ky] = cell_of(p);
    for (int dx = -r; dx <= r; ++dx)
      for (int dy = -r; dy <= r; ++dy) {
        auto it = buckets_.find({kx + dx, ky + dy});
        if (it == buckets_.end()) continue;
        for (const auto& [ci, i] : it->second) fn(ci, i);
      }
  }

 private:
  const CurveSystem& sys_;
  double cell_;
  std::map<std::pair<long, long>, std::vector<std::pair<int, int>>> buckets_;

  std::pair<long, long> cell_of(Vec2 p) const {
    return {static_cast<long>(std::floor(p.x / cell_)),
            static_cast<long>(std::floor(p.y / cell_))};
  }
  std::pair<long, long> key(Vec2 p) const { return cell_of(p); }
};

inline int circular_gap(int a, int b, int n) {
  const int d = std::abs(a - b) % n;
  return std::min(d, n - d);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// (total length, global radius of curvature of the union trace)
inline std::pair<double, double> system_metrics(const CurveSystem& sys) {
  double rho = kInf;
  for (const auto& c : sys.curves) {
    const double r = std::isnan(c.rho) ? detail::global_radius_samples(c) : c.rho;
    rho = std::min(rho, r);  // 0 for self-intersecting members
  }
  // cross-curve point-tangent radii
  for (int a = 0; a < sys.count(); ++a) {
    const auto& ca = sys.curves[a];
    for (int b = a + 1; b < sys.count(); ++b) {
      const auto& cb = sys.curves[b];
      for (int i = 0; i < ca.n(); ++i) {
        const Vec2 x = ca.pts[i];
        const Vec2 t = detail::first_difference(ca, i).normalized();
        for (int j = 0; j < cb.n(); ++j) {
          const Vec2 d = cb.pts[j] - x;
          const double dd = d.squared_norm();
          if (dd > 4.0 * rho * rho) continue;
          const double cr = std::abs(t.cross(d));
          const double r = cr > 0 ? dd / (2.0 * cr) : (dd > 0 ? kInf : 0.0);
          rho = std::min(rho, r);
        }
      }
    }
  }
  // radii below the sampling resolution mean contact; report a clean zero
  if (rho < 2.0 * sys.max_sample_spacing()) rho = 0.0;
  return {sys.length(), rho};
}

// Number of parameter-connected clusters of trace samples within tol of point.
inline int multiplicity_at(const CurveSystem& sys, Vec2 point, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("multiplicity_at: tol > 0");
  int clusters = 0;
  for (int ci = 0; ci < sys.count(); ++ci) {
    const auto& c = sys.curves[ci];
    std::vector<int> hits;
    for (int i = 0; i < c.n(); ++i)
      if ((c.pts[i] - point).norm() < tol) hits.push_back(i);
    if (hits.empty()) continue;
    // split sorted hit indices into circular runs
    const int gap_tol = std::max<int>(3, static_cast<int>(2.0 * tol / (c.length * c.h())) + 1);
    std::vector<std::pair<int, int>> runs;  // [first, last]
    int run_start = hits[0], prev = hits[0];
    for (std::size_t k = 1; k < hits.size(); ++k) {
      if (hits[k] - prev > gap_tol) {
        runs.push_back({run_start, prev});
        run_start = hits[k];
      }
      prev = hits[k];
    }
    runs.push_back({run_start, prev});
    // merge wrap-around run for closed curves
    if (runs.size() > 1 && detail::circular_gap(runs.front().first, runs.back().second, c.n()) <= gap_tol)
      runs.pop_back();
    clusters += static_cast<int>(runs.size());
  }
  return clusters;
}

inline std::vector<CrossingReport> detect_transverse_crossings(const CurveSystem& sys,
                                                               double dist_tol,
                                                               double angle_tol) {
  if (!(dist_tol > 0) || !(angle_tol > 0))
    throw std::invalid_argument("detect_transverse_crossings: positive tolerances");
  detail::TraceIndex index(sys, dist_tol);

  struct Hit {
    int ca, ia, cb, ib;
    double dist;
  };
  std::vector<Hit> hits;
  for (int ca = 0; ca < sys.count(); ++ca) {
    const auto& A = sys.curves[ca];
    const int adj = static_cast<int>(dist_tol / (A.length * A.h())) + 2;
    for (int i = 0; i < A.n(); ++i) {
      index.for_near(A.pts[i], dist_tol, [&](int cb, int j) {
        if (cb < ca) return;                       // unordered pairs once
        if (cb == ca && j <= i) return;
        if (cb == ca && detail::circular_gap(i, j, A.n()) <= adj) return;  // self-adjacent
        const double d = (sys.curves[cb].pts[j] - A.pts[i]).norm();
        if (d < dist_tol) hits.push_back({ca, i, cb, j, d});
      });
    }
  }
  // cluster hits by location (transitive merge: tangential contacts spread
  // wider than one tolerance radius); the closest pair represents the cluster
  std::vector<CrossingReport> reports;
  std::vector<bool> used(hits.size(), false);
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.dist < b.dist; });
  auto loc_of = [&](const Hit& h) {
    return (sys.curves[h.ca].pts[h.ia] + sys.curves[h.cb].pts[h.ib]) * 0.5;
  };
  for (std::size_t k = 0; k < hits.size(); ++k) {
    if (used[k]) continue;
    const Hit& h = hits[k];
    std::vector<Vec2> members{loc_of(h)};
    used[k] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t m = 0; m < hits.size(); ++m) {
        if (used[m]) continue;
        const Vec2 lm = loc_of(hits[m]);
        for (const Vec2& c : members) {
          if ((lm - c).norm() < 4.0 * dist_tol) {
            members.push_back(lm);
            used[m] = true;
            grew = true;
            break;
          }
        }
      }
    }
    const Vec2 loc = members.front();
    const Vec2 ta = detail::first_difference(sys.curves[h.ca], h.ia).normalized();
    const Vec2 tb = detail::first_difference(sys.curves[h.cb], h.ib).normalized();
    double ang = std::atan2(std::abs(ta.cross(tb)), ta.dot(tb));  // [0, pi]
    ang = std::min(ang, kPi - ang);                               // angle between lines
    CrossingReport r;
    r.location = loc;
    r.curve_a = h.ca;
    r.curve_b = h.cb;
    r.s_a = h.ia * sys.curves[h.ca].h();
    r.s_b = h.ib * sys.curves[h.cb].h();
    r.angle = ang;
    r.classification = ang < angle_tol ? CrossingClass::Tangent : CrossingClass::Transverse;
    reports.push_back(r);
  }
  std::sort(reports.begin(), reports.end(), [](const CrossingReport& a, const CrossingReport& b) {
    return std::tie(a.location.x, a.location.y) < std::tie(b.location.x, b.location.y);
  });
  return reports;
}

inline bool has_transverse_crossing(const CurveSystem& sys) {
  const double d = 2.0 * sys.max_sample_spacing();
  for (const auto& r : detect_transverse_crossings(sys, d, 0.05))
    if (r.classification == CrossingClass::Transverse) return true;
  return false;
}

// Same trace (Hausdorff) and same multiplicity on a dense probe set.
inline bool systems_equivalent(const CurveSystem& A, const CurveSystem& B, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("systems_equivalent: tol > 0");
  auto directed_ok = [&](const CurveSystem& from, const CurveSystem& to) {
    detail::TraceIndex index(to, tol);
    for (const auto& c : from.curves) {
      for (const auto& p : c.pts) {
        double best = kInf;
        index.for_near(p, tol, [&](int cb, int j) {
          best = std::min(best, (to.curves[cb].pts[j] - p).norm());
        });
        if (best >= tol) return false;
      }
    }
    return true;
  };
  if (!directed_ok(A, B) || !directed_ok(B, A)) return false;
  const double mtol = 2.0 * std::max(A.max_sample_spacing(), B.max_sample_spacing());
  auto probes_agree = [&](const CurveSystem& from) {
    for (const auto& c : from.curves) {
      const int stride = std::max(1, c.n() / 64);
      for (int i = 0; i < c.n(); i += stride)
        if (multiplicity_at(A, c.pts[i], mtol) != multiplicity_at(B, c.pts[i], mtol))
          return false;
    }
    return true;
  };
  return probes_agree(A) && probes_agree(B);
}

}  // namespace tubenorm
