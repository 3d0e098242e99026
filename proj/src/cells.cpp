#include "taunaf/cells.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>

namespace taunaf {

Region Region::disc(AlgebraicPoint center, Rational radius_sq) {
    if (radius_sq <= 0) throw std::invalid_argument("Region::disc: radius_sq > 0 required");
    Region r;
    r.kind = Kind::Disc;
    r.center = std::move(center);
    r.radius_sq = std::move(radius_sq);
    return r;
}

Region Region::unit_disc(const IQOrder& order) {
    return disc(point_zero(order), Rational(1));
}

Region Region::polygon(std::vector<AlgebraicPoint> vertices) {
    if (vertices.size() < 3) throw std::invalid_argument("Region::polygon: need >= 3 vertices");
    Region r;
    r.kind = Kind::Polygon;
    r.vertices = std::move(vertices);
    const std::size_t m = r.vertices.size();
    for (std::size_t k = 0; k < m; ++k) {
        AlgebraicPoint e1 = r.vertices[(k + 1) % m] - r.vertices[k];
        AlgebraicPoint e2 = r.vertices[(k + 2) % m] - r.vertices[(k + 1) % m];
        if (sign_of(cross(e1, e2)) < 0)
            throw std::invalid_argument("Region::polygon: vertices must be convex counter-clockwise");
    }
    return r;
}

bool Region::contains(const AlgebraicPoint& pt) const {
    if (kind == Kind::Disc) {
        return cmp(abs_sq(pt - center), QSqrtD::rational(radius_sq, pt.x.D)) <= 0;
    }
    const std::size_t m = vertices.size();
    for (std::size_t k = 0; k < m; ++k) {
        AlgebraicPoint e = vertices[(k + 1) % m] - vertices[k];
        if (sign_of(cross(e, pt - vertices[k])) < 0) return false;
    }
    return true;
}

Region Region::scaled(const Rational& n) const {
    if (n <= 0) throw std::invalid_argument("Region::scaled: positive factor required");
    Region r = *this;
    if (kind == Kind::Disc) {
        r.center = n * center;
        r.radius_sq = radius_sq * n * n;
    } else {
        for (auto& v : r.vertices) v = n * v;
    }
    return r;
}

Region Region::scaled_tau(int j, const IQOrder& order) const {
    Region r = *this;
    if (kind == Kind::Disc) {
        r.center = mul_tau_pow(center, j, order);
        Rational f = 1;
        for (int i = 0; i < std::abs(j); ++i) f *= order.q;
        r.radius_sq = (j >= 0) ? Rational(radius_sq * f) : Rational(radius_sq / f);
    } else {
        for (auto& v : r.vertices) v = mul_tau_pow(v, j, order);
    }
    return r;
}

double Region::lambda() const {
    if (kind == Kind::Disc) return M_PI * to_double(radius_sq);
    double acc = 0.0;
    const std::size_t m = vertices.size();
    for (std::size_t k = 0; k < m; ++k)
        acc += cross(vertices[k], vertices[(k + 1) % m]).value();
    return acc / 2.0;
}

void Region::enclosing_circle(double& cx, double& cy, double& r) const {
    if (kind == Kind::Disc) {
        cx = center.re();
        cy = center.im();
        r = std::sqrt(to_double(radius_sq)) + 1e-9;
        return;
    }
    cx = cy = 0.0;
    for (const auto& v : vertices) {
        cx += v.re();
        cy += v.im();
    }
    cx /= static_cast<double>(vertices.size());
    cy /= static_cast<double>(vertices.size());
    r = 0.0;
    for (const auto& v : vertices)
        r = std::max(r, std::hypot(v.re() - cx, v.im() - cy));
    r += 1e-9;
}

namespace {

// squared distance from p to segment [a, b] compared against rsq, exact
bool segment_within(const AlgebraicPoint& p, const AlgebraicPoint& a, const AlgebraicPoint& b,
                    const Rational& rsq) {
    AlgebraicPoint ab = b - a;
    AlgebraicPoint ap = p - a;
    QSqrtD t = dot(ap, ab);
    QSqrtD len2 = dot(ab, ab);
    QSqrtD rr = QSqrtD::rational(rsq, p.x.D);
    if (sign_of(t) <= 0) return cmp(abs_sq(ap), rr) <= 0;
    if (cmp(t, len2) >= 0) return cmp(abs_sq(p - b), rr) <= 0;
    // distance^2 = cross^2 / len2  =>  compare cross^2 against rsq * len2
    QSqrtD c = cross(ab, ap);
    return cmp(c * c, rr * len2) <= 0;
}

// separating-axis test for two convex CCW polygons, exact
bool convex_intersect(const std::vector<AlgebraicPoint>& A, const std::vector<AlgebraicPoint>& B) {
    auto separated_by_edges_of = [](const std::vector<AlgebraicPoint>& P,
                                    const std::vector<AlgebraicPoint>& Q) {
        const std::size_t m = P.size();
        for (std::size_t k = 0; k < m; ++k) {
            AlgebraicPoint e = P[(k + 1) % m] - P[k];
            bool all_outside = true;
            for (const auto& q : Q) {
                if (sign_of(cross(e, q - P[k])) >= 0) {
                    all_outside = false;
                    break;
                }
            }
            if (all_outside) return true;
        }
        return false;
    };
    return !separated_by_edges_of(A, B) && !separated_by_edges_of(B, A);
}

struct Classified {
    std::vector<RingElement> floor_set;
    std::vector<RingElement> ceil_set;
    std::vector<RingElement> cover_set;
};

Classified classify(const VoronoiCell& cell, const Region& region0, int j) {
    const IQOrder& ord = cell.order();
    Region region = region0.scaled_tau(j, ord);

    double cx, cy, r;
    region.enclosing_circle(cx, cy, r);
    double circ = ord.abs_tau() * std::sqrt(7.0 / 12.0);
    double pad = r + circ;
    double imt = ord.im_tau();
    double ret = ord.re_tau();

    Classified out;
    auto b_lo = static_cast<std::int64_t>(std::floor((cy - pad) / imt)) - 1;
    auto b_hi = static_cast<std::int64_t>(std::ceil((cy + pad) / imt)) + 1;
    for (std::int64_t b = b_lo; b <= b_hi; ++b) {
        double shift = static_cast<double>(b) * ret;
        auto a_lo = static_cast<std::int64_t>(std::floor(cx - pad - shift)) - 1;
        auto a_hi = static_cast<std::int64_t>(std::ceil(cx + pad - shift)) + 1;
        for (std::int64_t a = a_lo; a <= a_hi; ++a) {
            RingElement z(a, b, ord);
            AlgebraicPoint zp = embed(z);

            if (region.contains(zp)) out.cover_set.push_back(z);

            bool inside = true;
            for (const auto& v : cell.vertices()) {
                if (!region.contains(zp + v)) {
                    inside = false;
                    break;
                }
            }
            if (inside) {
                out.floor_set.push_back(z);
                out.ceil_set.push_back(z);
                continue;
            }

            // intersection with the closed region
            bool meets = false;
            if (region.kind == Region::Kind::Disc) {
                for (const auto& v : cell.vertices()) {
                    if (region.contains(zp + v)) {
                        meets = true;
                        break;
                    }
                }
                if (!meets) {
                    // disc centre inside the cell?
                    if (cell.contains(region.center - zp)) meets = true;
                }
                if (!meets) {
                    const auto& vs = cell.vertices();
                    for (std::size_t k = 0; k < vs.size() && !meets; ++k) {
                        meets = segment_within(region.center, zp + vs[k],
                                               zp + vs[(k + 1) % vs.size()], region.radius_sq);
                    }
                }
            } else {
                std::vector<AlgebraicPoint> cell_poly;
                cell_poly.reserve(cell.vertices().size());
                for (const auto& v : cell.vertices()) cell_poly.push_back(zp + v);
                meets = convex_intersect(region.vertices, cell_poly);
            }
            if (meets) out.ceil_set.push_back(z);
        }
    }
    return out;
}

}  // namespace

CellSet floor_cells(const VoronoiCell& cell, const Region& region, int j) {
    return CellSet{j, classify(cell, region, j).floor_set};
}

CellSet ceil_cells(const VoronoiCell& cell, const Region& region, int j) {
    return CellSet{j, classify(cell, region, j).ceil_set};
}

CellSet cover_cells(const VoronoiCell& cell, const Region& region, int j) {
    // fast path: origin-centred disc needs no box scan
    if (region.kind == Region::Kind::Disc && region.center.is_zero()) {
        Rational bound = region.radius_sq;
        for (int i = 0; i < j; ++i) bound *= cell.order().q;
        for (int i = 0; i < -j; ++i) bound /= cell.order().q;
        return CellSet{j, lattice_points_in_disc(cell.order(), bound)};
    }
    return CellSet{j, classify(cell, region, j).cover_set};
}

CellSet boundary_cells(const VoronoiCell& cell, const Region& region, int j) {
    Classified c = classify(cell, region, j);
    auto by_coords = [](const RingElement& x, const RingElement& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    };
    std::sort(c.floor_set.begin(), c.floor_set.end(), by_coords);
    std::sort(c.ceil_set.begin(), c.ceil_set.end(), by_coords);
    std::vector<RingElement> out;
    std::set_difference(c.ceil_set.begin(), c.ceil_set.end(), c.floor_set.begin(),
                        c.floor_set.end(), std::back_inserter(out), by_coords);
    return CellSet{j, std::move(out)};
}

Integer card(const VoronoiCell& cell, const Region& region, int j) {
    return Integer(cover_cells(cell, region, j).centers.size());
}

CardAsymptoticsReport card_asymptotics_check(const VoronoiCell& cell, const Region& u,
                                             const std::vector<Rational>& n_grid) {
    CardAsymptoticsReport rep;
    double lam_v = cell.area().value();
    double lam_u = u.lambda();
    for (const auto& n : n_grid) {
        Integer c = card(cell, u.scaled(n), 0);
        double nd = to_double(n);
        double residual = to_double(c) - nd * nd * lam_u / lam_v;
        rep.rows.push_back(CardAsymptoticsRow{n, c, residual});
        if (nd > 0) rep.max_residual_over_n = std::max(rep.max_residual_over_n, std::abs(residual) / nd);
    }
    return rep;
}

Integer shell_count(const VoronoiCell& cell, const Region& u, const Rational& n) {
    if (n == 0) return card(cell, u, 0);
    return card(cell, u.scaled(n + 1), 0) - card(cell, u.scaled(n), 0);
}

}  // namespace taunaf
