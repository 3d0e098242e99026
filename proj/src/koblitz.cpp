#include "taunaf/koblitz.hpp"

#include <stdexcept>

namespace taunaf {

namespace {

int poly_degree(std::uint64_t a) {
    int d = -1;
    while (a) {
        ++d;
        a >>= 1;
    }
    return d;
}

}  // namespace

BinaryField::BinaryField(int m, std::uint32_t irred) : m_(m), irred_(irred) {
    if (m < 2 || m > 30) throw std::invalid_argument("BinaryField: degree out of range");
    for (int d = 2; d * d <= m; ++d)
        if (m % d == 0) throw std::invalid_argument("BinaryField: only prime extension degrees supported");
    if (poly_degree(irred) != m) throw std::invalid_argument("BinaryField: polynomial degree != m");
    if (!is_irreducible()) throw std::invalid_argument("BinaryField: polynomial is reducible");
}

BinaryField BinaryField::standard(int m) {
    switch (m) {
        case 7: return BinaryField(7, (1u << 7) | (1u << 1) | 1u);                       // x^7+x+1
        case 11: return BinaryField(11, (1u << 11) | (1u << 2) | 1u);                    // x^11+x^2+1
        case 19: return BinaryField(19, (1u << 19) | (1u << 5) | (1u << 2) | (1u << 1) | 1u);  // x^19+x^5+x^2+x+1
        default: throw std::invalid_argument("BinaryField::standard: unsupported degree");
    }
}

std::uint32_t BinaryField::mul(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t r = 0;
    std::uint64_t aa = a;
    while (b) {
        if (b & 1u) r ^= aa;
        aa <<= 1;
        b >>= 1;
    }
    for (int i = poly_degree(r); i >= m_; i = poly_degree(r))
        r ^= static_cast<std::uint64_t>(irred_) << (i - m_);
    return static_cast<std::uint32_t>(r);
}

std::uint32_t BinaryField::inv(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("BinaryField::inv: zero has no inverse");
    // extended Euclid in GF(2)[x]
    std::uint64_t u = a, v = irred_;
    std::uint64_t g1 = 1, g2 = 0;
    while (u != 1) {
        int j = poly_degree(u) - poly_degree(v);
        if (j < 0) {
            std::swap(u, v);
            std::swap(g1, g2);
            j = -j;
        }
        u ^= v << j;
        g1 ^= g2 << j;
    }
    std::uint64_t r = g1;
    for (int i = poly_degree(r); i >= m_; i = poly_degree(r))
        r ^= static_cast<std::uint64_t>(irred_) << (i - m_);
    return static_cast<std::uint32_t>(r);
}

std::uint32_t BinaryField::trace(std::uint32_t a) const {
    std::uint32_t acc = a, x = a;
    for (int i = 1; i < m_; ++i) {
        x = sqr(x);
        acc ^= x;
    }
    TAUNAF_ASSERT(acc == 0 || acc == 1, "trace: value not in GF(2)");
    return acc;
}

std::uint32_t BinaryField::half_trace(std::uint32_t a) const {
    if (m_ % 2 == 0) throw std::domain_error("half_trace: requires odd extension degree");
    std::uint32_t acc = a, x = a;
    for (int i = 1; i <= (m_ - 1) / 2; ++i) {
        x = sqr(sqr(x));
        acc ^= x;
    }
    return acc;
}

std::uint32_t BinaryField::random_element(Rng& rng) const {
    return static_cast<std::uint32_t>(rng.next() & ((1u << m_) - 1u));
}

bool BinaryField::is_irreducible() const {
    // Rabin test for prime degree n: f is irreducible iff x^(2^n) == x mod f
    // and gcd(x^2 - x, f) = 1; the gcd condition is f(0) != 0 and f(1) != 0.
    if ((irred_ & 1u) == 0) return false;
    if (__builtin_popcount(irred_) % 2 == 0) return false;  // f(1) == 0
    std::uint32_t x = 2;  // the polynomial x
    std::uint32_t t = x;
    for (int i = 0; i < m_; ++i) t = mul(t, t);
    return t == x;
}

KoblitzCurve::KoblitzCurve(BinaryField field, int a) : field_(std::move(field)), a_(a) {
    if (a != 0 && a != 1) throw std::invalid_argument("KoblitzCurve: a must be 0 or 1");
}

bool KoblitzCurve::on_curve(const CurvePoint& p) const {
    if (p.inf) return true;
    const BinaryField& f = field_;
    std::uint32_t lhs = f.add(f.sqr(p.y), f.mul(p.x, p.y));
    std::uint32_t rhs = f.add(f.add(f.mul(f.sqr(p.x), p.x), f.mul(static_cast<std::uint32_t>(a_), f.sqr(p.x))), 1u);
    return lhs == rhs;
}

CurvePoint KoblitzCurve::neg(const CurvePoint& p) const {
    if (p.inf) return p;
    return CurvePoint::affine(p.x, field_.add(p.x, p.y));
}

CurvePoint KoblitzCurve::dbl(const CurvePoint& p) const {
    if (p.inf) return p;
    if (p.x == 0) return CurvePoint::infinity();  // the 2-torsion point
    const BinaryField& f = field_;
    std::uint32_t lam = f.add(p.x, f.mul(p.y, f.inv(p.x)));
    std::uint32_t x3 = f.add(f.add(f.sqr(lam), lam), static_cast<std::uint32_t>(a_));
    std::uint32_t y3 = f.add(f.sqr(p.x), f.mul(f.add(lam, 1u), x3));
    return CurvePoint::affine(x3, y3);
}

CurvePoint KoblitzCurve::add(const CurvePoint& p, const CurvePoint& q) const {
    if (p.inf) return q;
    if (q.inf) return p;
    const BinaryField& f = field_;
    if (p.x == q.x) {
        if (p.y == q.y) return dbl(p);
        // same x, different y means q == -p
        return CurvePoint::infinity();
    }
    std::uint32_t lam = f.mul(f.add(p.y, q.y), f.inv(f.add(p.x, q.x)));
    std::uint32_t x3 = f.add(f.add(f.add(f.add(f.sqr(lam), lam), p.x), q.x), static_cast<std::uint32_t>(a_));
    std::uint32_t y3 = f.add(f.add(f.mul(lam, f.add(p.x, x3)), x3), p.y);
    return CurvePoint::affine(x3, y3);
}

CurvePoint KoblitzCurve::frobenius(const CurvePoint& p) const {
    if (p.inf) return p;
    return CurvePoint::affine(field_.sqr(p.x), field_.sqr(p.y));
}

CurvePoint KoblitzCurve::scalar_int(const Integer& n, const CurvePoint& p) const {
    if (n == 0 || p.inf) return CurvePoint::infinity();
    Integer k = n < 0 ? Integer(-n) : n;
    CurvePoint base = n < 0 ? neg(p) : p;
    CurvePoint acc = CurvePoint::infinity();
    std::size_t bits = 0;
    for (Integer t = k; t > 0; t >>= 1) ++bits;
    for (std::size_t i = bits; i-- > 0;) {
        acc = dbl(acc);
        if (boost::multiprecision::bit_test(k, static_cast<unsigned>(i))) acc = add(acc, base);
    }
    return acc;
}

CurvePoint KoblitzCurve::scalar_ztau_ref(const RingElement& z, const CurvePoint& p) const {
    return add(scalar_int(z.a, p), scalar_int(z.b, frobenius(p)));
}

CurvePoint KoblitzCurve::random_point(Rng& rng) const {
    const BinaryField& f = field_;
    for (int tries = 0; tries < 10000; ++tries) {
        std::uint32_t x = f.random_element(rng);
        if (x == 0) continue;
        // substituting y = x z turns the curve equation into
        // z^2 + z = x + a + x^{-2}
        std::uint32_t c = f.add(f.add(x, static_cast<std::uint32_t>(a_)), f.sqr(f.inv(x)));
        if (f.trace(c) != 0) continue;
        std::uint32_t z = f.half_trace(c);
        CurvePoint p = CurvePoint::affine(x, f.mul(x, z));
        TAUNAF_ASSERT(on_curve(p), "random_point: solver produced an off-curve point");
        return p;
    }
    throw internal_error("random_point: no point found");
}

ScalarMulStats scalar_mul_ztau(const KoblitzCurve& curve, const DigitSetPtr& ds,
                               const RingElement& z, const CurvePoint& p) {
    if (ds->order().q != 2 || ds->order().p != curve.mu())
        throw std::invalid_argument("scalar_mul_ztau: digit set must match p = mu, q = 2");

    NafWord word = expand(ds, z);

    ScalarMulStats stats;
    stats.precomp_size = ds->size() - 1;
    std::vector<CurvePoint> table(ds->size(), CurvePoint::infinity());
    for (std::size_t i = 1; i < ds->size(); ++i)
        table[i] = curve.scalar_ztau_ref(ds->digits()[i], p);

    if (word.empty()) {
        stats.result = CurvePoint::infinity();
        return stats;
    }
    int msd = word.support().rbegin()->first;
    stats.length = msd + 1;
    CurvePoint acc = CurvePoint::infinity();
    for (int i = msd; i >= 0; --i) {
        if (i != msd) {
            acc = curve.frobenius(acc);
            ++stats.frobs;
        }
        if (const RingElement* d = word.digit_at(i)) {
            acc = curve.add(acc, table[ds->index_of(*d)]);
            ++stats.adds;
        }
    }
    stats.result = acc;
    return stats;
}

}  // namespace taunaf
