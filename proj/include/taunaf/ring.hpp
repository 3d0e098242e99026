#pragma once

// Exact arithmetic in the order Z[tau] for tau^2 - p*tau + q = 0 and in the
// ambient real field Q(sqrt(D)), D = 4q - p^2. Everything here is a value
// type with exact (big integer / big rational) coordinates; all geometric
// predicates built on top of these types are exact.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include "taunaf/util.hpp"

namespace taunaf {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Integer& x) { return x.convert_to<double>(); }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

// The base tau is the root p/2 + i*sqrt(D)/2 of X^2 - p X + q.
struct IQOrder {
    std::int64_t p = 0;
    std::int64_t q = 0;
    std::int64_t D = 0;  // 4q - p^2 > 0

    bool operator==(const IQOrder& o) const { return p == o.p && q == o.q; }
    bool operator!=(const IQOrder& o) const { return !(*this == o); }

    double abs_tau() const { return std::sqrt(static_cast<double>(q)); }
    double im_tau() const { return std::sqrt(static_cast<double>(D)) / 2.0; }
    double re_tau() const { return static_cast<double>(p) / 2.0; }
    // fractional part of Re(tau); 0 for even p, 1/2 for odd p
    Rational frac_re_tau() const { return (p % 2 == 0) ? Rational(0) : Rational(1, 2); }
};

inline IQOrder make_order(std::int64_t p, std::int64_t q) {
    if (4 * q - p * p <= 0)
        throw std::invalid_argument("make_order: 4q - p^2 must be positive (tau imaginary quadratic)");
    if (q <= 1)
        throw std::invalid_argument("make_order: q >= 2 required (|tau| > 1)");
    return IQOrder{p, q, 4 * q - p * p};
}

// a + b*tau with exact integer coordinates.
struct RingElement {
    Integer a;
    Integer b;
    IQOrder order;

    RingElement() = default;
    RingElement(Integer a_, Integer b_, IQOrder ord) : a(std::move(a_)), b(std::move(b_)), order(ord) {}

    bool is_zero() const { return a == 0 && b == 0; }

    bool operator==(const RingElement& o) const {
        return a == o.a && b == o.b && order == o.order;
    }
    bool operator!=(const RingElement& o) const { return !(*this == o); }
    // lexicographic; used only to put elements in ordered containers
    bool operator<(const RingElement& o) const {
        if (a != o.a) return a < o.a;
        return b < o.b;
    }

    friend std::ostream& operator<<(std::ostream& os, const RingElement& z) {
        os << z.a;
        if (z.b >= 0) os << "+" << z.b << "t";
        else os << z.b << "t";
        return os;
    }
};

inline void require_same_order(const RingElement& x, const RingElement& y) {
    if (x.order != y.order) throw std::invalid_argument("ring: mismatched orders");
}

inline RingElement ring_zero(const IQOrder& ord) { return RingElement(0, 0, ord); }
inline RingElement ring_one(const IQOrder& ord) { return RingElement(1, 0, ord); }
inline RingElement ring_tau(const IQOrder& ord) { return RingElement(0, 1, ord); }

inline RingElement operator+(const RingElement& x, const RingElement& y) {
    require_same_order(x, y);
    return RingElement(x.a + y.a, x.b + y.b, x.order);
}

inline RingElement operator-(const RingElement& x, const RingElement& y) {
    require_same_order(x, y);
    return RingElement(x.a - y.a, x.b - y.b, x.order);
}

inline RingElement operator-(const RingElement& x) {
    return RingElement(-x.a, -x.b, x.order);
}

// (a1 + b1 t)(a2 + b2 t) with t^2 = p t - q
inline RingElement operator*(const RingElement& x, const RingElement& y) {
    require_same_order(x, y);
    Integer a = x.a * y.a - x.order.q * x.b * y.b;
    Integer b = x.a * y.b + x.b * y.a + x.order.p * x.b * y.b;
    return RingElement(std::move(a), std::move(b), x.order);
}

inline RingElement operator*(const Integer& k, const RingElement& x) {
    return RingElement(k * x.a, k * x.b, x.order);
}

inline RingElement ring_pow(const RingElement& z, unsigned e) {
    RingElement acc = ring_one(z.order);
    RingElement base = z;
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        base = base * base;
        e >>= 1u;
    }
    return acc;
}

// N(a + b tau) = a^2 + p a b + q b^2; equals |embed(z)|^2 exactly.
inline Integer norm(const RingElement& z) {
    return z.a * z.a + z.order.p * z.a * z.b + z.order.q * z.b * z.b;
}

// tau | (a + b tau)  <=>  q | a
inline bool divides_tau(const RingElement& z) {
    return z.a % z.order.q == 0;
}

// z / tau, defined when divides_tau(z): (b + (a/q) p) + (-a/q) tau
inline RingElement div_tau(const RingElement& z) {
    if (!divides_tau(z)) throw std::domain_error("div_tau: element not divisible by tau");
    Integer c = z.a / z.order.q;
    return RingElement(z.b + c * z.order.p, -c, z.order);
}

// Canonical coordinates of z mod tau^w in the complete residue system
// sum a_j tau^j, a_j in {0..q-1}. Two elements share a key iff tau^w divides
// their difference. Returned as a length-w byte string (hashable map key).
inline std::string residue_key(RingElement z, int w) {
    if (w < 1) throw std::invalid_argument("residue_key: w >= 1 required");
    if (z.order.q > 255) throw std::invalid_argument("residue_key: q too large for key encoding");
    std::string key(static_cast<std::size_t>(w), '\0');
    Integer q = z.order.q;
    for (int j = 0; j < w; ++j) {
        Integer aj = z.a % q;
        if (aj < 0) aj += q;
        key[static_cast<std::size_t>(j)] = static_cast<char>(aj.convert_to<unsigned>());
        z.a -= aj;
        z = div_tau(z);
    }
    return key;
}

// ---------------------------------------------------------------------------
// Exact real field Q(sqrt(D)) and the exact complex plane built from it.
// ---------------------------------------------------------------------------

// u + v*sqrt(D) with exact rationals; D is the square-free-ish positive
// integer 4q - p^2 of the order in use (not assumed square-free).
struct QSqrtD {
    Rational u;
    Rational v;
    std::int64_t D = 0;

    QSqrtD() = default;
    QSqrtD(Rational u_, Rational v_, std::int64_t D_) : u(std::move(u_)), v(std::move(v_)), D(D_) {}
    static QSqrtD rational(Rational r, std::int64_t D_) { return QSqrtD(std::move(r), 0, D_); }

    bool is_zero() const { return u == 0 && v == 0; }
    bool is_rational() const { return v == 0; }

    double value() const { return to_double(u) + to_double(v) * std::sqrt(static_cast<double>(D)); }
};

inline void require_same_field(const QSqrtD& x, const QSqrtD& y) {
    if (x.D != y.D) throw std::invalid_argument("QSqrtD: mismatched radicands");
}

inline QSqrtD operator+(const QSqrtD& x, const QSqrtD& y) {
    require_same_field(x, y);
    return QSqrtD(x.u + y.u, x.v + y.v, x.D);
}
inline QSqrtD operator-(const QSqrtD& x, const QSqrtD& y) {
    require_same_field(x, y);
    return QSqrtD(x.u - y.u, x.v - y.v, x.D);
}
inline QSqrtD operator-(const QSqrtD& x) { return QSqrtD(-x.u, -x.v, x.D); }
inline QSqrtD operator*(const QSqrtD& x, const QSqrtD& y) {
    require_same_field(x, y);
    return QSqrtD(x.u * y.u + x.v * y.v * x.D, x.u * y.v + x.v * y.u, x.D);
}
inline QSqrtD operator*(const Rational& r, const QSqrtD& x) {
    return QSqrtD(r * x.u, r * x.v, x.D);
}

inline int sign_of(const Rational& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

// Exact sign of u + v*sqrt(D).
inline int sign_of(const QSqrtD& x) {
    int su = sign_of(x.u), sv = sign_of(x.v);
    if (sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    // opposite signs: compare u^2 against v^2 D
    Rational lhs = x.u * x.u;
    Rational rhs = x.v * x.v * x.D;
    if (lhs == rhs) return 0;
    return (lhs > rhs) ? su : sv;
}

// total order consistent with the real value
inline int cmp(const QSqrtD& x, const QSqrtD& y) { return sign_of(x - y); }
inline bool operator==(const QSqrtD& x, const QSqrtD& y) { return x.D == y.D && x.u == y.u && x.v == y.v; }
inline bool operator!=(const QSqrtD& x, const QSqrtD& y) { return !(x == y); }
inline bool operator<(const QSqrtD& x, const QSqrtD& y) { return cmp(x, y) < 0; }
inline bool operator<=(const QSqrtD& x, const QSqrtD& y) { return cmp(x, y) <= 0; }
inline bool operator>(const QSqrtD& x, const QSqrtD& y) { return cmp(x, y) > 0; }
inline bool operator>=(const QSqrtD& x, const QSqrtD& y) { return cmp(x, y) >= 0; }

// Largest integer <= u + v*sqrt(D). A double guess is corrected by exact
// comparisons, so the result is exact.
inline Integer floor_int(const QSqrtD& x) {
    double guess = std::floor(x.value());
    Integer n(static_cast<long long>(guess));
    auto leq = [&x](const Integer& m) {
        return cmp(QSqrtD(Rational(m), 0, x.D), x) <= 0;
    };
    while (!leq(n)) --n;
    while (leq(n + 1)) ++n;
    return n;
}

// Nearest integer (floor(x + 1/2)).
inline Integer round_int(const QSqrtD& x) {
    return floor_int(x + QSqrtD(Rational(1, 2), 0, x.D));
}

// Exact point of the complex plane: x + i*y with x, y in Q(sqrt(D)).
struct AlgebraicPoint {
    QSqrtD x;
    QSqrtD y;

    AlgebraicPoint() = default;
    AlgebraicPoint(QSqrtD x_, QSqrtD y_) : x(std::move(x_)), y(std::move(y_)) {}

    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    double re() const { return x.value(); }
    double im() const { return y.value(); }
};

inline AlgebraicPoint operator+(const AlgebraicPoint& a, const AlgebraicPoint& b) {
    return AlgebraicPoint(a.x + b.x, a.y + b.y);
}
inline AlgebraicPoint operator-(const AlgebraicPoint& a, const AlgebraicPoint& b) {
    return AlgebraicPoint(a.x - b.x, a.y - b.y);
}
inline AlgebraicPoint operator-(const AlgebraicPoint& a) { return AlgebraicPoint(-a.x, -a.y); }
// complex multiplication
inline AlgebraicPoint operator*(const AlgebraicPoint& a, const AlgebraicPoint& b) {
    return AlgebraicPoint(a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x);
}
inline AlgebraicPoint operator*(const Rational& r, const AlgebraicPoint& a) {
    return AlgebraicPoint(r * a.x, r * a.y);
}
inline bool operator==(const AlgebraicPoint& a, const AlgebraicPoint& b) {
    return a.x == b.x && a.y == b.y;
}
inline bool operator!=(const AlgebraicPoint& a, const AlgebraicPoint& b) { return !(a == b); }

inline QSqrtD abs_sq(const AlgebraicPoint& pt) { return pt.x * pt.x + pt.y * pt.y; }

// 2D cross product (z-component); exact.
inline QSqrtD cross(const AlgebraicPoint& a, const AlgebraicPoint& b) {
    return a.x * b.y - a.y * b.x;
}
inline QSqrtD dot(const AlgebraicPoint& a, const AlgebraicPoint& b) {
    return a.x * b.x + a.y * b.y;
}

inline AlgebraicPoint point_zero(const IQOrder& ord) {
    return AlgebraicPoint(QSqrtD(0, 0, ord.D), QSqrtD(0, 0, ord.D));
}

// tau = p/2 + i*sqrt(D)/2
inline AlgebraicPoint embed_tau(const IQOrder& ord) {
    return AlgebraicPoint(QSqrtD(Rational(ord.p, 2), 0, ord.D), QSqrtD(0, Rational(1, 2), ord.D));
}

// 1/tau = (p - tau)/q
inline AlgebraicPoint embed_inv_tau(const IQOrder& ord) {
    return AlgebraicPoint(QSqrtD(Rational(ord.p, 2 * ord.q), 0, ord.D),
                          QSqrtD(0, Rational(-1, 2 * ord.q), ord.D));
}

// Ring homomorphism into the exact complex plane.
inline AlgebraicPoint embed(const RingElement& z) {
    const IQOrder& ord = z.order;
    QSqrtD x(Rational(z.a) + Rational(z.b * ord.p, 2), 0, ord.D);
    QSqrtD y(0, Rational(z.b, 2), ord.D);
    return AlgebraicPoint(std::move(x), std::move(y));
}

inline AlgebraicPoint point_pow(const AlgebraicPoint& base, unsigned e, const IQOrder& ord) {
    AlgebraicPoint acc(QSqrtD(1, 0, ord.D), QSqrtD(0, 0, ord.D));
    AlgebraicPoint b = base;
    while (e > 0) {
        if (e & 1u) acc = acc * b;
        b = b * b;
        e >>= 1u;
    }
    return acc;
}

// multiply by tau^j (j may be negative)
inline AlgebraicPoint mul_tau_pow(const AlgebraicPoint& pt, int j, const IQOrder& ord) {
    if (j == 0) return pt;
    AlgebraicPoint f = (j > 0) ? point_pow(embed_tau(ord), static_cast<unsigned>(j), ord)
                               : point_pow(embed_inv_tau(ord), static_cast<unsigned>(-j), ord);
    return pt * f;
}

}  // namespace taunaf
