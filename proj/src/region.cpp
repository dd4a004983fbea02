#include "rtct/region.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <utility>

namespace rtct {

namespace {

Rational dot(const std::vector<Rational>& a, const ExecVector& c) {
  Rational s;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * c[k];
  return s;
}

void require_dim(std::size_t dim, const ExecVector& c) {
  if (c.size() != dim)
    throw std::invalid_argument("point has " + std::to_string(c.size()) +
                                " coordinates for a region of dimension " + std::to_string(dim));
}

bool nonnegative(const ExecVector& c) {
  for (const Rational& v : c)
    if (v.sign() < 0) return false;
  return true;
}

/// Exact solution of a square system; nullopt when singular.
std::optional<ExecVector> solve_square(std::size_t n, std::vector<std::vector<Rational>> a,
                                       std::vector<Rational> b) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].sign() == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].sign() == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  ExecVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

/// All size-k index subsets of 0..total-1, in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t total, std::size_t k, Fn&& fn) {
  if (k > total) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] != i + total - k) break;
      if (i == 0) return;
    }
    ++idx[i];
    for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// ---------------------------------------------------------------------------
// Exact planar direction machinery for the corner analysis. Directions are
// mapped to a pseudo-angle in [0,4) that is monotone in the true angle and
// adds exactly 2 under point reflection, so antipodality and arc widths of
// pi are decidable without any trigonometry.
// ---------------------------------------------------------------------------

struct Dir {
  Rational x, y;
};

Rational cross(const Dir& a, const Dir& b) { return a.x * b.y - a.y * b.x; }
Rational dotd(const Dir& a, const Dir& b) { return a.x * b.x + a.y * b.y; }
Dir rot90ccw(const Dir& d) { return {-d.y, d.x}; }

Rational pseudo_angle(const Dir& d) {
  const int sx = d.x.sign(), sy = d.y.sign();
  if (sx > 0 && sy >= 0) return d.y / (d.x + d.y);
  if (sx <= 0 && sy > 0) return Rational(1) + (-d.x) / (d.y - d.x);
  if (sx < 0 && sy <= 0) return Rational(2) + (-d.y) / (-d.x - d.y);
  return Rational(3) + d.x / (d.x - d.y);
}

struct Arc {
  Rational lo, hi;  // lo in [0,4), lo <= hi <= lo+4
};

Arc arc_between(const Dir& u, const Dir& w) {
  Rational a = pseudo_angle(u), b = pseudo_angle(w);
  if (b < a) b += 4;
  return {a, b};
}

struct ArcUnion {
  bool full = false;
  std::vector<Arc> arcs;  // disjoint maximal circular arcs
};

ArcUnion unite_arcs(const std::vector<Arc>& arcs) {
  if (arcs.empty()) return {};
  std::vector<Arc> line;
  line.reserve(arcs.size() * 2);
  for (const Arc& a : arcs) {
    line.push_back(a);
    line.push_back({a.lo + 4, a.hi + 4});
  }
  std::sort(line.begin(), line.end(),
            [](const Arc& a, const Arc& b) { return a.lo == b.lo ? a.hi < b.hi : a.lo < b.lo; });
  std::vector<Arc> merged;
  for (const Arc& a : line) {
    if (!merged.empty() && a.lo <= merged.back().hi)
      merged.back().hi = max(merged.back().hi, a.hi);
    else
      merged.push_back(a);
  }
  for (const Arc& m : merged)
    if (m.hi - m.lo >= 4) return {true, {}};
  ArcUnion out;
  for (const Arc& m : merged) {
    if (m.lo.sign() < 0 || m.lo >= 4) continue;
    bool absorbed = false;
    for (const Arc& host : merged) {
      const bool proper = (host.lo < m.lo + 4 && m.hi + 4 <= host.hi) ||
                          (host.lo <= m.lo + 4 && m.hi + 4 < host.hi);
      if (proper) {
        absorbed = true;
        break;
      }
    }
    if (!absorbed) out.arcs.push_back(m);
  }
  return out;
}

bool same_direction(const Dir& a, const Dir& b) {
  return cross(a, b).sign() == 0 && dotd(a, b).sign() > 0;
}

/// Arcs of the cone {d : a.d <= 0 for all outward normals}. The cone of a
/// full-dimensional polytope face is a sector of width in (0, pi]; degenerate
/// inputs (lines, rays) fall out as zero-width arcs.
std::vector<Arc> cone_arcs(const std::vector<Dir>& normals) {
  std::vector<Dir> rays;
  auto push_ray = [&](const Dir& r) {
    if (r.x.sign() == 0 && r.y.sign() == 0) return;
    for (const Dir& n : normals)
      if ((n.x * r.x + n.y * r.y).sign() > 0) return;
    for (const Dir& seen : rays)
      if (same_direction(seen, r)) return;
    rays.push_back(r);
  };
  for (const Dir& n : normals) {
    push_ray({-n.y, n.x});
    push_ray({n.y, -n.x});
  }
  if (rays.empty()) return {};
  if (rays.size() == 1) {
    Rational t = pseudo_angle(rays[0]);
    return {{t, t}};
  }
  // Extreme pair spanning all feasible rays within an angle < pi.
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = 0; j < rays.size(); ++j) {
      if (i == j || cross(rays[i], rays[j]).sign() <= 0) continue;
      bool covers = true;
      for (const Dir& r : rays) {
        if (cross(rays[i], r).sign() < 0 || cross(r, rays[j]).sign() < 0) {
          covers = false;
          break;
        }
      }
      if (covers) return {arc_between(rays[i], rays[j])};
    }
  }
  // No spanning pair: the rays sit on one line. Half-plane when a side is
  // feasible, otherwise the cone is that line.
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = 0; j < rays.size(); ++j) {
      if (i == j || cross(rays[i], rays[j]).sign() != 0 || dotd(rays[i], rays[j]).sign() >= 0)
        continue;
      Dir mid = rot90ccw(rays[i]);
      bool feasible = true;
      for (const Dir& n : normals)
        if (dotd(n, mid).sign() > 0) {
          feasible = false;
          break;
        }
      if (feasible) return {arc_between(rays[i], rays[j])};
    }
  }
  std::vector<Arc> degenerate;
  for (const Dir& r : rays) {
    Rational t = pseudo_angle(r);
    degenerate.push_back({t, t});
  }
  return degenerate;
}

constexpr std::size_t kSelectionCap = 200000;

std::size_t selection_count(const AndOrRegion& region) {
  std::size_t count = 1;
  for (const auto& group : region.groups) {
    if (group.empty()) return 0;
    if (count > kSelectionCap / group.size() + 1) return kSelectionCap + 1;
    count *= group.size();
  }
  return count;
}

template <typename Fn>
void for_each_selection(const AndOrRegion& region, Fn&& fn) {
  std::vector<std::size_t> pick(region.groups.size(), 0);
  while (true) {
    fn(pick);
    std::size_t g = region.groups.size();
    while (g > 0) {
      --g;
      if (++pick[g] < region.groups[g].size()) break;
      pick[g] = 0;
      if (g == 0) return;
    }
  }
}

/// Local feasible-cone analysis: v (a member) is a corner unless the union of
/// the per-selection cones is the full plane or exactly a half-plane.
bool is_corner_2d(const AndOrRegion& region, const ExecVector& v) {
  std::vector<Dir> axis_normals;
  for (std::size_t k = 0; k < 2; ++k)
    if (v[k].sign() == 0) axis_normals.push_back({k == 0 ? Rational(-1) : Rational(0),
                                                  k == 1 ? Rational(-1) : Rational(0)});

  // Groups with a strictly satisfied row impose no local constraint.
  std::vector<std::vector<const ConstraintRow*>> effective;
  for (const auto& group : region.groups) {
    std::vector<const ConstraintRow*> active;
    bool slack = false;
    for (const ConstraintRow& row : group) {
      Rational lhs = dot(row.coeffs, v);
      if (lhs < row.bound) {
        slack = true;
        break;
      }
      if (lhs == row.bound) active.push_back(&row);
    }
    if (!slack) effective.push_back(std::move(active));
  }

  if (effective.empty() && axis_normals.empty()) return false;  // interior point

  std::vector<Arc> arcs;
  std::vector<std::size_t> pick(effective.size(), 0);
  while (true) {
    std::vector<Dir> normals = axis_normals;
    for (std::size_t g = 0; g < effective.size(); ++g) {
      const ConstraintRow* row = effective[g][pick[g]];
      normals.push_back({row->coeffs[0], row->coeffs[1]});
    }
    if (normals.empty()) return false;
    for (Arc a : cone_arcs(normals)) arcs.push_back(a);

    std::size_t g = effective.size();
    bool done = g == 0;
    while (g > 0) {
      --g;
      if (++pick[g] < effective[g].size()) break;
      pick[g] = 0;
      if (g == 0) done = true;
    }
    if (done) break;
  }

  ArcUnion covered = unite_arcs(arcs);
  if (covered.full) return false;
  if (covered.arcs.size() == 1 && covered.arcs[0].hi - covered.arcs[0].lo == 2)
    return false;  // straight edge
  return true;
}

std::vector<ExecVector> sorted_unique(std::set<ExecVector>&& points) {
  return {points.begin(), points.end()};
}

std::vector<ExecVector> andor_vertices_1d(const AndOrRegion& region) {
  // The region is an intersection of unions of rays/segments from 0; its
  // corner set is {0, M} with M the tightest per-group reach.
  std::optional<Rational> reach;
  for (const auto& group : region.groups) {
    std::optional<Rational> group_reach;
    bool group_unbounded = false;
    for (const ConstraintRow& row : group) {
      const Rational& a = row.coeffs[0];
      if (a.sign() > 0) {
        Rational m = row.bound / a;
        if (m.sign() < 0) continue;  // infeasible over C >= 0
        if (!group_reach || m > *group_reach) group_reach = m;
      } else if (row.bound.sign() >= 0) {
        group_unbounded = true;
      }
    }
    if (group_unbounded) continue;
    if (!group_reach) return {};  // group infeasible: empty region
    if (!reach || *group_reach < *reach) reach = group_reach;
  }
  if (!reach) throw std::domain_error("region is unbounded");
  std::set<ExecVector> out;
  out.insert(ExecVector{Rational(0)});
  out.insert(ExecVector{*reach});
  return sorted_unique(std::move(out));
}

std::vector<ExecVector> andor_vertices_2d(const AndOrRegion& region) {
  std::vector<ConstraintRow> lines;
  for (const auto& group : region.groups)
    for (const ConstraintRow& row : group) lines.push_back(row);
  for (std::size_t k = 0; k < 2; ++k) {
    ConstraintRow axis;
    axis.coeffs = {Rational(k == 0 ? 1 : 0), Rational(k == 1 ? 1 : 0)};
    axis.bound = Rational(0);
    lines.push_back(axis);
  }

  std::set<ExecVector> candidates;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      auto p = solve_square(2, {lines[i].coeffs, lines[j].coeffs},
                            {lines[i].bound, lines[j].bound});
      if (p && nonnegative(*p) && membership(region, *p)) candidates.insert(*p);
    }
  }

  std::set<ExecVector> corners;
  for (const ExecVector& v : candidates)
    if (is_corner_2d(region, v)) corners.insert(v);
  return sorted_unique(std::move(corners));
}

std::vector<ExecVector> andor_vertices_3d(const AndOrRegion& region) {
  if (selection_count(region) > kSelectionCap)
    throw std::runtime_error("selection space too large for vertex expansion");
  std::set<ExecVector> out;
  for_each_selection(region, [&](const std::vector<std::size_t>& pick) {
    Polytope poly;
    poly.dim = region.dim;
    for (std::size_t g = 0; g < pick.size(); ++g) poly.rows.push_back(region.groups[g][pick[g]]);
    for (const ExecVector& v : vertices(poly))
      if (membership(region, v)) out.insert(v);
  });
  return sorted_unique(std::move(out));
}

}  // namespace

bool membership(const Polytope& region, const ExecVector& c) {
  require_dim(region.dim, c);
  if (!nonnegative(c)) return false;
  for (const ConstraintRow& row : region.rows)
    if (dot(row.coeffs, c) > row.bound) return false;
  return true;
}

bool membership(const AndOrRegion& region, const ExecVector& c) {
  require_dim(region.dim, c);
  if (!nonnegative(c)) return false;
  for (const auto& group : region.groups) {
    bool satisfied = false;
    for (const ConstraintRow& row : group) {
      if (dot(row.coeffs, c) <= row.bound) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) return false;
  }
  return true;
}

std::vector<ExecVector> vertices(const Polytope& region) {
  const std::size_t n = region.dim;
  if (n == 0 || n > 3)
    throw std::domain_error("vertex enumeration supports dimensions 1 to 3");
  for (std::size_t k = 0; k < n; ++k) {
    bool bounded = false;
    for (const ConstraintRow& row : region.rows)
      if (row.coeffs[k].sign() > 0) bounded = true;
    if (!bounded)
      throw std::domain_error("region is unbounded along coordinate " + std::to_string(k + 1));
  }

  // Planes: every row plus the axis planes C_k = 0.
  std::vector<std::vector<Rational>> plane(region.rows.size() + n);
  std::vector<Rational> rhs(region.rows.size() + n);
  for (std::size_t i = 0; i < region.rows.size(); ++i) {
    plane[i] = region.rows[i].coeffs;
    rhs[i] = region.rows[i].bound;
  }
  for (std::size_t k = 0; k < n; ++k) {
    plane[region.rows.size() + k].assign(n, Rational(0));
    plane[region.rows.size() + k][k] = Rational(1);
    rhs[region.rows.size() + k] = Rational(0);
  }

  std::set<ExecVector> found;
  for_each_subset(plane.size(), n, [&](const std::vector<std::size_t>& idx) {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::size_t i : idx) {
      a.push_back(plane[i]);
      b.push_back(rhs[i]);
    }
    auto p = solve_square(n, std::move(a), std::move(b));
    if (p && membership(region, *p)) found.insert(*p);
  });
  return sorted_unique(std::move(found));
}

std::vector<ExecVector> andor_vertices(const AndOrRegion& region) {
  if (region.dim == 0 || region.dim > 3)
    throw std::domain_error("vertex enumeration supports dimensions 1 to 3");
  for (const auto& group : region.groups)
    if (group.empty()) return {};
  switch (region.dim) {
    case 1: return andor_vertices_1d(region);
    case 2: return andor_vertices_2d(region);
    default: return andor_vertices_3d(region);
  }
}

std::vector<std::string> touching_rows(const Polytope& region,
                                       const std::vector<ExecVector>& verts) {
  std::vector<std::string> out;
  for (const ConstraintRow& row : region.rows) {
    for (const ExecVector& v : verts) {
      if (dot(row.coeffs, v) == row.bound) {
        out.push_back(row.label);
        break;
      }
    }
  }
  return out;
}

namespace {

void write_csv_header(std::size_t dim, std::ostream& os) {
  os << "label";
  for (std::size_t k = 1; k <= dim; ++k) os << ",c" << k;
  os << ",bound\n";
}

void write_csv_row(const ConstraintRow& row, std::ostream& os) {
  os << row.label;
  for (const Rational& c : row.coeffs) os << ',' << c.str();
  os << ',' << row.bound.str() << '\n';
}

struct SvgCanvas {
  double scale;
  double margin;
  double size;
  double px(const Rational& c2) const { return margin + c2.to_double() * scale; }
  double py(const Rational& c1) const { return size - margin - c1.to_double() * scale; }
};

void svg_prologue(const SvgCanvas& cv, double extent, std::ostream& os) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cv.size << "\" height=\""
     << cv.size << "\" viewBox=\"0 0 " << cv.size << ' ' << cv.size << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int g = 1; g <= static_cast<int>(extent); ++g) {
    double x = cv.margin + g * cv.scale;
    double y = cv.size - cv.margin - g * cv.scale;
    os << "  <line x1=\"" << x << "\" y1=\"" << cv.margin << "\" x2=\"" << x << "\" y2=\""
       << cv.size - cv.margin << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    os << "  <line x1=\"" << cv.margin << "\" y1=\"" << y << "\" x2=\"" << cv.size - cv.margin
       << "\" y2=\"" << y << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
  }
}

void svg_axes(const SvgCanvas& cv, std::ostream& os) {
  os << "  <line x1=\"" << cv.margin << "\" y1=\"" << cv.size - cv.margin << "\" x2=\""
     << cv.size - cv.margin / 2 << "\" y2=\"" << cv.size - cv.margin
     << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  os << "  <line x1=\"" << cv.margin << "\" y1=\"" << cv.size - cv.margin << "\" x2=\""
     << cv.margin << "\" y2=\"" << cv.margin / 2
     << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  os << "  <text x=\"" << cv.size - cv.margin / 2 + 4 << "\" y=\"" << cv.size - cv.margin + 4
     << "\" font-size=\"14\">C2</text>\n";
  os << "  <text x=\"" << cv.margin - 10 << "\" y=\"" << cv.margin / 2 - 6
     << "\" font-size=\"14\">C1</text>\n";
}

void svg_polygon(const SvgCanvas& cv, const std::vector<ExecVector>& ordered, std::ostream& os) {
  if (ordered.size() < 2) return;
  os << "  <polygon points=\"";
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    if (i) os << ' ';
    os << cv.px(ordered[i][1]) << ',' << cv.py(ordered[i][0]);
  }
  os << "\" fill=\"#7fd8d8\" stroke=\"#246\" stroke-width=\"1\"/>\n";
}

/// Convex ordering around the centroid; exact pseudo-angle comparisons.
std::vector<ExecVector> order_convex(std::vector<ExecVector> verts) {
  if (verts.size() < 3) return verts;
  Rational cx, cy;
  for (const ExecVector& v : verts) {
    cx += v[0];
    cy += v[1];
  }
  Rational n(static_cast<long>(verts.size()));
  cx /= n;
  cy /= n;
  std::sort(verts.begin(), verts.end(), [&](const ExecVector& a, const ExecVector& b) {
    Dir da{a[0] - cx, a[1] - cy}, db{b[0] - cx, b[1] - cy};
    return pseudo_angle(da) < pseudo_angle(db);
  });
  return verts;
}

double region_extent(const std::vector<std::vector<ExecVector>>& polys) {
  double extent = 1.0;
  for (const auto& poly : polys)
    for (const ExecVector& v : poly)
      for (const Rational& c : v) extent = std::max(extent, c.to_double());
  return extent;
}

void svg_document(const std::vector<std::vector<ExecVector>>& polys, std::ostream& os) {
  const double size = 560, margin = 60;
  double extent = region_extent(polys);
  SvgCanvas cv{(size - 2 * margin) / extent, margin, size};
  svg_prologue(cv, extent, os);
  for (const auto& poly : polys) svg_polygon(cv, poly, os);
  svg_axes(cv, os);
  os << "</svg>\n";
}

}  // namespace

void write_region_csv(const Polytope& region, std::ostream& os) {
  write_csv_header(region.dim, os);
  for (const ConstraintRow& row : region.rows) write_csv_row(row, os);
}

void write_region_csv(const AndOrRegion& region, std::ostream& os) {
  write_csv_header(region.dim, os);
  for (const auto& group : region.groups)
    for (const ConstraintRow& row : group) write_csv_row(row, os);
}

void write_region_svg(const Polytope& region, std::ostream& os) {
  if (region.dim != 2) throw std::invalid_argument("SVG export requires a 2-task region");
  if (!membership(region, ExecVector{Rational(0), Rational(0)}))
    throw std::domain_error("infeasible region: no schedulable point to draw");
  svg_document({order_convex(vertices(region))}, os);
}

void write_region_svg(const AndOrRegion& region, std::ostream& os) {
  if (region.dim != 2) throw std::invalid_argument("SVG export requires a 2-task region");
  if (!membership(region, ExecVector{Rational(0), Rational(0)}))
    throw std::domain_error("infeasible region: no schedulable point to draw");
  if (selection_count(region) > kSelectionCap)
    throw std::runtime_error("selection space too large for SVG expansion");
  std::vector<std::vector<ExecVector>> polys;
  for_each_selection(region, [&](const std::vector<std::size_t>& pick) {
    Polytope poly;
    poly.dim = 2;
    for (std::size_t g = 0; g < pick.size(); ++g) poly.rows.push_back(region.groups[g][pick[g]]);
    polys.push_back(order_convex(vertices(poly)));
  });
  svg_document(polys, os);
}

}  // namespace rtct
