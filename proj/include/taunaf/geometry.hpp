#pragma once

// Exact Voronoi cell V of 0 for the lattice Z[tau], the restricted cell
// (half-open boundary convention) and the lattice fractional part.

#include <vector>

#include "taunaf/ring.hpp"

namespace taunaf {

class VoronoiCell {
public:
    explicit VoronoiCell(const IQOrder& order);

    const IQOrder& order() const { return order_; }
    // number of distinct vertices: 6, or 4 when p is even (rectangle)
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    const std::vector<AlgebraicPoint>& vertices() const { return vertices_; }
    const std::vector<AlgebraicPoint>& midpoints() const { return midpoints_; }
    // the 6 lattice neighbours {±1, ±t~, ±(t~-1)} whose bisectors bound V
    const std::vector<AlgebraicPoint>& neighbours() const { return neighbours_; }

    // closed cell membership: |pt| <= |pt - u| for all neighbours u
    bool contains(const AlgebraicPoint& pt) const;
    // strict interior
    bool contains_interior(const AlgebraicPoint& pt) const;
    // restricted cell membership (canonical half-open boundary rules)
    bool contains_restricted(const AlgebraicPoint& pt) const;

    // exact area of the vertex polygon (shoelace); equals Im(tau)
    QSqrtD area() const;
    // squared circumradius |v_0|^2 (all vertices share it)
    QSqrtD circumradius_sq() const;
    // squared distance from 0 to the nearest edge; equals 1/4
    QSqrtD inradius_sq() const;

private:
    IQOrder order_;
    std::vector<AlgebraicPoint> vertices_;   // distinct, counter-clockwise, v0 first
    std::vector<AlgebraicPoint> midpoints_;  // midpoints_[k] between v_k and v_{k+1}
    std::vector<AlgebraicPoint> neighbours_;
};

struct LatticeFraction {
    RingElement lattice_part;
    AlgebraicPoint fractional_part;  // in the restricted cell
};

// closed-cell membership relative to a lattice centre
bool in_cell(const VoronoiCell& cell, const AlgebraicPoint& pt, const RingElement& center);
inline bool in_cell(const VoronoiCell& cell, const AlgebraicPoint& pt) {
    return cell.contains(pt);
}
inline bool in_restricted_cell(const VoronoiCell& cell, const AlgebraicPoint& pt) {
    return cell.contains_restricted(pt);
}

// Splits pt = u + v with u in Z[tau] and v in the restricted cell; the split
// is unique because restricted-cell translates partition the plane.
LatticeFraction frac_ztau(const VoronoiCell& cell, const AlgebraicPoint& pt);

// All lattice points with norm(z) <= bound, in a deterministic order.
std::vector<RingElement> lattice_points_in_disc(const IQOrder& order, const Rational& bound);

}  // namespace taunaf
