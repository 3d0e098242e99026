#pragma once

// Frobenius-and-add demonstration on the binary Koblitz curve
// E2: Y^2 + XY = X^3 + a X^2 + 1 over GF(2^m), using tau-adic w-NAF
// expansions with tau = mu/2 + sqrt(-7)/2, mu = (-1)^(1-a).

#include <cstdint>

#include "taunaf/naf.hpp"
#include "taunaf/util.hpp"

namespace taunaf {

class BinaryField {
public:
    // irred holds the full bit pattern of the degree-m irreducible polynomial
    BinaryField(int m, std::uint32_t irred);
    // fixed small-degree fields used by the demo (m in {7, 11, 19})
    static BinaryField standard(int m);

    int degree() const { return m_; }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sqr(std::uint32_t a) const { return mul(a, a); }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t trace(std::uint32_t a) const;
    std::uint32_t half_trace(std::uint32_t a) const;  // m odd
    std::uint32_t random_element(Rng& rng) const;

private:
    int m_;
    std::uint32_t irred_;
    bool is_irreducible() const;
};

struct CurvePoint {
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    bool inf = true;

    static CurvePoint infinity() { return CurvePoint{}; }
    static CurvePoint affine(std::uint32_t x, std::uint32_t y) { return CurvePoint{x, y, false}; }
    bool operator==(const CurvePoint& o) const {
        if (inf || o.inf) return inf == o.inf;
        return x == o.x && y == o.y;
    }
};

class KoblitzCurve {
public:
    KoblitzCurve(BinaryField field, int a);

    const BinaryField& field() const { return field_; }
    int a() const { return a_; }
    int mu() const { return a_ == 1 ? 1 : -1; }  // (-1)^(1-a)

    bool on_curve(const CurvePoint& p) const;
    CurvePoint neg(const CurvePoint& p) const;
    CurvePoint add(const CurvePoint& p, const CurvePoint& q) const;
    CurvePoint dbl(const CurvePoint& p) const;
    CurvePoint frobenius(const CurvePoint& p) const;  // (x, y) -> (x^2, y^2)
    CurvePoint scalar_int(const Integer& n, const CurvePoint& p) const;
    // reference action of z = a + b tau: [a]P + [b]phi(P)
    CurvePoint scalar_ztau_ref(const RingElement& z, const CurvePoint& p) const;
    CurvePoint random_point(Rng& rng) const;

private:
    BinaryField field_;
    int a_;
};

struct ScalarMulStats {
    CurvePoint result;
    int adds = 0;   // = Hamming weight of the expansion
    int frobs = 0;  // Frobenius applications in the Horner loop
    std::size_t precomp_size = 0;
    int length = 0;  // left-length of the expansion
};

// Frobenius-and-add via the w-NAF of z; ds must be built for p = mu(curve),
// q = 2. Digit points [eta]P are precomputed; each nonzero digit costs one
// addition (the first one is an assignment in practice).
ScalarMulStats scalar_mul_ztau(const KoblitzCurve& curve, const DigitSetPtr& ds,
                               const RingElement& z, const CurvePoint& p);

}  // namespace taunaf
