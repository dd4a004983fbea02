#pragma once

#include "rtct/model.hpp"
#include "rtct/rational.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace rtct {

/// One linear half-space coeffs . C <= bound over C >= 0.
struct ConstraintRow {
  std::vector<Rational> coeffs;
  Rational bound;
  std::string label;  // origin tag: task/instant/job
};

/// Conjunction of rows; the EDF-style convex region.
struct Polytope {
  std::size_t dim = 0;
  std::vector<ConstraintRow> rows;
};

/// Conjunction of per-task disjunctions; the FP-style region. Membership
/// requires at least one satisfied row in every group.
struct AndOrRegion {
  std::size_t dim = 0;
  std::vector<std::vector<ConstraintRow>> groups;
};

bool membership(const Polytope& region, const ExecVector& c);
bool membership(const AndOrRegion& region, const ExecVector& c);

/// Exact vertex enumeration for bounded polytopes, dim <= 3: solves all
/// dim-subsets of rows plus axis planes and keeps the feasible solutions.
std::vector<ExecVector> vertices(const Polytope& region);

/// Corner set of the (possibly nonconvex) union region, dim <= 3.
/// For dim <= 2 this is the exact corner set of the boundary, including
/// corners formed where rows of different selections cross and excluding
/// points interior to straight edges. For dim == 3 it returns the
/// member vertices of the per-selection decomposition.
std::vector<ExecVector> andor_vertices(const AndOrRegion& region);

/// Labels of rows satisfied with equality at some enumerated vertex.
std::vector<std::string> touching_rows(const Polytope& region,
                                       const std::vector<ExecVector>& verts);

void write_region_csv(const Polytope& region, std::ostream& os);
void write_region_csv(const AndOrRegion& region, std::ostream& os);

/// 2-task regions only; axes drawn with C_2 horizontal and C_1 vertical.
void write_region_svg(const Polytope& region, std::ostream& os);
void write_region_svg(const AndOrRegion& region, std::ostream& os);

}  // namespace rtct
