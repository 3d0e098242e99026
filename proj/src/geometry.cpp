#include "taunaf/geometry.hpp"

#include <cmath>

namespace taunaf {

namespace {

// point on the closed segment [a, b]?
bool on_segment(const AlgebraicPoint& pt, const AlgebraicPoint& a, const AlgebraicPoint& b) {
    AlgebraicPoint ab = b - a;
    AlgebraicPoint ap = pt - a;
    if (sign_of(cross(ab, ap)) != 0) return false;
    QSqrtD t = dot(ap, ab);
    if (sign_of(t) < 0) return false;
    return cmp(t, dot(ab, ab)) <= 0;
}

// strictly between a and b on the segment (assumes collinearity was checked)
bool strictly_between(const AlgebraicPoint& pt, const AlgebraicPoint& a, const AlgebraicPoint& b) {
    AlgebraicPoint ab = b - a;
    AlgebraicPoint ap = pt - a;
    if (sign_of(cross(ab, ap)) != 0) return false;
    QSqrtD t = dot(ap, ab);
    return sign_of(t) > 0 && cmp(t, dot(ab, ab)) < 0;
}

}  // namespace

VoronoiCell::VoronoiCell(const IQOrder& order) : order_(order) {
    const std::int64_t D = order.D;
    // t~ = {Re tau} + i Im tau; with Im tau = sqrt(D)/2 and {Re tau} in {0, 1/2}
    Rational t = order.frac_re_tau();
    QSqrtD im_tau(0, Rational(1, 2), D);

    neighbours_ = {
        AlgebraicPoint(QSqrtD(1, 0, D), QSqrtD(0, 0, D)),
        AlgebraicPoint(QSqrtD(-1, 0, D), QSqrtD(0, 0, D)),
        AlgebraicPoint(QSqrtD(t, 0, D), im_tau),
        AlgebraicPoint(QSqrtD(-t, 0, D), -im_tau),
        AlgebraicPoint(QSqrtD(t - 1, 0, D), im_tau),
        AlgebraicPoint(QSqrtD(1 - t, 0, D), -im_tau),
    };

    // Closed forms for the vertices: with b = Im tau,
    //   v0 = 1/2 + i (b^2 + t^2 - t) / (2b),
    //   v1 = t - 1/2 + i (b^2 - t^2 + t) / (2b),
    //   v2 = v0 - 1, v3 = -v0, v4 = -v1, v5 = -v2.
    // b^2 = D/4, and 1/(2b) = sqrt(D)/D, so the y-coordinates stay in Q(sqrt(D)).
    Rational b_sq(D, 4);
    Rational n0 = b_sq + t * t - t;
    Rational n1 = b_sq - t * t + t;
    AlgebraicPoint v0(QSqrtD(Rational(1, 2), 0, D), QSqrtD(0, n0 / D, D));
    AlgebraicPoint v1(QSqrtD(t - Rational(1, 2), 0, D), QSqrtD(0, n1 / D, D));
    AlgebraicPoint v2 = v0 - AlgebraicPoint(QSqrtD(1, 0, D), QSqrtD(0, 0, D));

    if (order.p % 2 != 0) {
        vertices_ = {v0, v1, v2, -v0, -v1, -v2};
    } else {
        // v1 == v2: the hexagon degenerates to a rectangle
        vertices_ = {v0, v1, -v0, -v1};
    }

    const int m = static_cast<int>(vertices_.size());
    midpoints_.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        midpoints_.push_back(Rational(1, 2) * (vertices_[static_cast<std::size_t>(k)] +
                                               vertices_[static_cast<std::size_t>((k + 1) % m)]));
    }
}

bool VoronoiCell::contains(const AlgebraicPoint& pt) const {
    // |pt| <= |pt - u|  <=>  2<pt, u> <= |u|^2
    for (const auto& u : neighbours_) {
        QSqrtD lhs = Rational(2) * dot(pt, u);
        if (cmp(lhs, abs_sq(u)) > 0) return false;
    }
    return true;
}

bool VoronoiCell::contains_interior(const AlgebraicPoint& pt) const {
    for (const auto& u : neighbours_) {
        QSqrtD lhs = Rational(2) * dot(pt, u);
        if (cmp(lhs, abs_sq(u)) >= 0) return false;
    }
    return true;
}

bool VoronoiCell::contains_restricted(const AlgebraicPoint& pt) const {
    bool boundary = false;
    for (const auto& u : neighbours_) {
        int s = cmp(Rational(2) * dot(pt, u), abs_sq(u));
        if (s > 0) return false;
        if (s == 0) boundary = true;
    }
    if (!boundary) return true;  // interior

    const int m = static_cast<int>(vertices_.size());
    // vertices v_k kept for k in {1, ..., floor(m/3)}
    for (int k = 0; k < m; ++k) {
        if (pt == vertices_[static_cast<std::size_t>(k)]) return k >= 1 && k <= m / 3;
    }
    // midpoints v_{k+1/2} kept for k in {0, ..., floor(m/2)-1}
    for (int k = 0; k < m; ++k) {
        if (pt == midpoints_[static_cast<std::size_t>(k)]) return k <= m / 2 - 1;
    }
    // open segment (v_{k+1/2}, v_{k+1}) kept for every k; (v_k, v_{k+1/2}) dropped
    for (int k = 0; k < m; ++k) {
        const auto& vk = vertices_[static_cast<std::size_t>(k)];
        const auto& vk1 = vertices_[static_cast<std::size_t>((k + 1) % m)];
        if (!on_segment(pt, vk, vk1)) continue;
        return strictly_between(pt, midpoints_[static_cast<std::size_t>(k)], vk1);
    }
    TAUNAF_ASSERT(false, "contains_restricted: boundary point not on any edge");
    return false;
}

QSqrtD VoronoiCell::area() const {
    const int m = static_cast<int>(vertices_.size());
    QSqrtD acc(0, 0, order_.D);
    for (int k = 0; k < m; ++k) {
        acc = acc + cross(vertices_[static_cast<std::size_t>(k)],
                          vertices_[static_cast<std::size_t>((k + 1) % m)]);
    }
    return Rational(1, 2) * acc;
}

QSqrtD VoronoiCell::circumradius_sq() const { return abs_sq(vertices_[0]); }

QSqrtD VoronoiCell::inradius_sq() const {
    // min over edges of squared distance from 0 to the bisector line, which is
    // |u|^2/4 for neighbour u
    QSqrtD best = Rational(1, 4) * abs_sq(neighbours_[0]);
    for (const auto& u : neighbours_) {
        QSqrtD d = Rational(1, 4) * abs_sq(u);
        if (cmp(d, best) < 0) best = d;
    }
    return best;
}

bool in_cell(const VoronoiCell& cell, const AlgebraicPoint& pt, const RingElement& center) {
    return cell.contains(pt - embed(center));
}

LatticeFraction frac_ztau(const VoronoiCell& cell, const AlgebraicPoint& pt) {
    const IQOrder& ord = cell.order();
    const std::int64_t D = ord.D;

    // coordinates of pt in the basis (1, tau): beta = Im(pt)/Im(tau), then
    // alpha = Re(pt) - beta * p/2. With Im(tau) = sqrt(D)/2:
    // (u + v sqrt(D)) / (sqrt(D)/2) = 2v + (2u/D) sqrt(D).
    QSqrtD beta(2 * pt.y.v, 2 * pt.y.u / D, D);
    QSqrtD alpha = pt.x - Rational(ord.p, 2) * beta;

    Integer a0 = round_int(alpha);
    Integer b0 = round_int(beta);

    // Any lattice point u whose restricted cell holds pt satisfies
    // |u - z0| <= |delta| + circumradius with |delta| <= (1+|tau|)/2.
    double radius = (1.0 + ord.abs_tau()) / 2.0 + ord.abs_tau() * std::sqrt(7.0 / 12.0);
    double imt = ord.im_tau();
    double ret = ord.re_tau();
    int b_span = static_cast<int>(std::floor(radius / imt + 1e-9));
    Rational circ_sq = Rational(7 * ord.q, 12);

    bool found = false;
    LatticeFraction result;
    for (int db = -b_span; db <= b_span; ++db) {
        double shift = static_cast<double>(db) * ret;
        int a_lo = static_cast<int>(std::ceil(-radius - shift - 1e-9));
        int a_hi = static_cast<int>(std::floor(radius - shift + 1e-9));
        for (int da = a_lo; da <= a_hi; ++da) {
            RingElement u(a0 + da, b0 + db, ord);
            AlgebraicPoint d = pt - embed(u);
            if (cmp(abs_sq(d), QSqrtD::rational(circ_sq, D)) > 0) continue;
            if (!cell.contains_restricted(d)) continue;
            TAUNAF_ASSERT(!found, "frac_ztau: point in two restricted cells");
            found = true;
            result.lattice_part = u;
            result.fractional_part = d;
        }
    }
    TAUNAF_ASSERT(found, "frac_ztau: point in no restricted cell");
    return result;
}


std::vector<RingElement> lattice_points_in_disc(const IQOrder& order, const Rational& bound) {
    // norm(a + b tau) = (a + p b / 2)^2 + b^2 D / 4 <= bound
    std::vector<RingElement> out;
    if (bound < 0) return out;
    double bd = to_double(bound);
    auto b_max = static_cast<std::int64_t>(std::floor(std::sqrt(4.0 * bd / static_cast<double>(order.D)) + 1e-9));
    for (std::int64_t b = -b_max - 1; b <= b_max + 1; ++b) {
        Rational rest = bound - Rational(b * b * order.D, 4);
        if (rest < 0) continue;
        double half_width = std::sqrt(to_double(rest));
        double center = -static_cast<double>(order.p) * static_cast<double>(b) / 2.0;
        auto a_lo = static_cast<std::int64_t>(std::floor(center - half_width)) - 1;
        auto a_hi = static_cast<std::int64_t>(std::ceil(center + half_width)) + 1;
        for (std::int64_t a = a_lo; a <= a_hi; ++a) {
            RingElement z(a, b, order);
            if (Rational(norm(z)) <= bound) out.push_back(std::move(z));
        }
    }
    return out;
}

}  // namespace taunaf
