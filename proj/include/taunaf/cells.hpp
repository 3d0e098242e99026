#pragma once

// Cell-rounding operators on regions: floor / ceil / cover / boundary / card
// at any tau-power scale. Regions are discs or convex polygons with exact
// rational data, so every membership decision is exact.

#include <vector>

#include "taunaf/geometry.hpp"

namespace taunaf {

struct Region {
    enum class Kind { Disc, Polygon };
    Kind kind = Kind::Disc;
    AlgebraicPoint center;                // disc
    Rational radius_sq;                   // disc, > 0
    std::vector<AlgebraicPoint> vertices; // polygon, convex, counter-clockwise

    static Region disc(AlgebraicPoint center, Rational radius_sq);
    static Region unit_disc(const IQOrder& order);
    static Region polygon(std::vector<AlgebraicPoint> vertices);

    bool contains(const AlgebraicPoint& pt) const;  // closed
    Region scaled(const Rational& n) const;         // n * region (about the origin)
    Region scaled_tau(int j, const IQOrder& order) const;
    double lambda() const;                          // Lebesgue measure
    // circle around the region, for candidate enumeration (float, padded)
    void enclosing_circle(double& cx, double& cy, double& r) const;
};

struct CellSet {
    int scale_j = 0;
    std::vector<RingElement> centers;  // each stands for tau^{-j}(z + V)
    std::size_t size() const { return centers.size(); }
};

// cells tau^{-j}(z+V) entirely inside the region
CellSet floor_cells(const VoronoiCell& cell, const Region& region, int j);
// cells meeting the closed region
CellSet ceil_cells(const VoronoiCell& cell, const Region& region, int j);
// cells whose centre lies in the region
CellSet cover_cells(const VoronoiCell& cell, const Region& region, int j);
// ceil minus floor
CellSet boundary_cells(const VoronoiCell& cell, const Region& region, int j);
// number of lattice points of tau^{-j} Z[tau] in the region (= |cover|)
Integer card(const VoronoiCell& cell, const Region& region, int j);

struct CardAsymptoticsRow {
    Rational n;
    Integer count;
    double residual;  // count - n^2 lambda(U)/lambda(V)
};

struct CardAsymptoticsReport {
    std::vector<CardAsymptoticsRow> rows;
    double max_residual_over_n = 0.0;
};

// residuals r(N) = card(NU) - N^2 lambda(U)/lambda(V) over the grid
CardAsymptoticsReport card_asymptotics_check(const VoronoiCell& cell, const Region& u,
                                             const std::vector<Rational>& n_grid);

// card((N+1)U \ NU), for U star-shaped about 0
Integer shell_count(const VoronoiCell& cell, const Region& u, const Rational& n);

}  // namespace taunaf
