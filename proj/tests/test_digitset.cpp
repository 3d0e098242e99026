#include <doctest.h>

#include <set>

#include "taunaf/digitset.hpp"
#include "taunaf/naf.hpp"
#include "taunaf/util.hpp"

using namespace taunaf;

namespace {

std::set<std::pair<Integer, Integer>> as_pairs(const DigitSet& ds) {
    std::set<std::pair<Integer, Integer>> s;
    for (const auto& d : ds.digits()) s.emplace(d.a, d.b);
    return s;
}

}  // namespace

TEST_CASE("digit set for tau = (1 + sqrt(-7))/2, w = 2 is {0, 1, -1}") {
    DigitSetPtr ds = build_digit_set(make_order(1, 2), 2);
    std::set<std::pair<Integer, Integer>> expect = {
        {Integer(0), Integer(0)}, {Integer(1), Integer(0)}, {Integer(-1), Integer(0)}};
    CHECK(as_pairs(*ds) == expect);
}

TEST_CASE("digit set for tau = (3 + sqrt(-3))/2, w = 2 is the sixth roots of unity") {
    DigitSetPtr ds = build_digit_set(make_order(3, 3), 2);
    std::set<std::pair<Integer, Integer>> expect = {
        {Integer(0), Integer(0)},  {Integer(1), Integer(0)},  {Integer(-1), Integer(0)},
        {Integer(-1), Integer(1)}, {Integer(1), Integer(-1)}, {Integer(-2), Integer(1)},
        {Integer(2), Integer(-1)}};
    CHECK(as_pairs(*ds) == expect);
    for (std::size_t i = 1; i < ds->size(); ++i) CHECK(norm(ds->digits()[i]) == 1);
}

TEST_CASE("cardinality is q^{w-1}(q-1) + 1 over the grid") {
    for (std::int64_t q = 2; q <= 5; ++q) {
        for (std::int64_t p = -4; p <= 4; ++p) {
            if (p * p >= 4 * q) continue;
            for (int w = 2; w <= 4; ++w) {
                DigitSetPtr ds = build_digit_set(make_order(p, q), w);
                Integer expect =
                    boost::multiprecision::pow(Integer(q), static_cast<unsigned>(w - 1)) * (q - 1) + 1;
                CHECK(Integer(ds->size()) == expect);
            }
        }
    }
    CHECK(build_digit_set(make_order(1, 2), 4)->size() == 9);
}

TEST_CASE("digit_for returns the unique congruent digit") {
    DigitSetPtr ds = build_digit_set(make_order(1, 2), 2);
    IQOrder ord = ds->order();
    for (std::size_t i = 1; i < ds->size(); ++i)
        CHECK(ds->digit_for(ds->digits()[i]) == ds->digits()[i]);

    // (1 - tau) + 1 = 2 - tau = -tau^2 is divisible by tau^2, so the digit is -1
    CHECK(ds->digit_for(RingElement(1, -1, ord)) == RingElement(-1, 0, ord));
    RingElement diff = RingElement(1, -1, ord) - RingElement(-1, 0, ord);
    CHECK(divides_tau(diff));
    CHECK(divides_tau(div_tau(diff)));

    CHECK_THROWS_AS(ds->digit_for(RingElement(2, 0, ord)), std::domain_error);
}

TEST_CASE("each nonzero digit divided by tau^w lies in the restricted cell") {
    for (auto [p, q, w] : {std::tuple<std::int64_t, std::int64_t, int>{1, 2, 2},
                           {1, 2, 3},
                           {3, 3, 2},
                           {0, 2, 2},
                           {-1, 3, 2},
                           {2, 5, 2}}) {
        DigitSetPtr ds = build_digit_set(make_order(p, q), w);
        AlgebraicPoint inv_w =
            point_pow(embed_inv_tau(ds->order()), static_cast<unsigned>(w), ds->order());
        for (std::size_t i = 1; i < ds->size(); ++i) {
            CHECK(ds->cell().contains_restricted(embed(ds->digits()[i]) * inv_w));
            // hence norm <= q^{w+1} * 7/12
            Integer cap = boost::multiprecision::pow(Integer(q), static_cast<unsigned>(w + 1)) * 7;
            CHECK(norm(ds->digits()[i]) * 12 <= cap);
        }
    }
}

TEST_CASE("minimality spot check against shifted representatives") {
    for (auto [p, q, w] : {std::tuple<std::int64_t, std::int64_t, int>{1, 2, 2}, {3, 3, 2}, {0, 3, 3}}) {
        DigitSetPtr ds = build_digit_set(make_order(p, q), w);
        IQOrder ord = ds->order();
        RingElement tau_w = ring_pow(ring_tau(ord), static_cast<unsigned>(w));
        std::vector<RingElement> units = {ring_one(ord), ring_tau(ord), RingElement(1, 1, ord),
                                          RingElement(1, -1, ord)};
        for (std::size_t i = 1; i < ds->size(); ++i) {
            for (const auto& u : units)
                for (std::int64_t k = -2; k <= 2; ++k) {
                    if (k == 0) continue;
                    CHECK(norm(ds->digits()[i]) <= norm(ds->digits()[i] + Integer(k) * tau_w * u));
                }
        }
    }
}

TEST_CASE("small elements not divisible by tau are digits") {
    // every zeta with 4 norm(zeta) < q^w and tau not dividing zeta is a digit
    for (auto [p, q, w] : {std::tuple<std::int64_t, std::int64_t, int>{1, 2, 3}, {3, 3, 2}, {0, 2, 4}}) {
        DigitSetPtr ds = build_digit_set(make_order(p, q), w);
        Integer qw = boost::multiprecision::pow(Integer(q), static_cast<unsigned>(w));
        std::set<std::pair<Integer, Integer>> digit_set = as_pairs(*ds);
        for (const auto& z : lattice_points_in_disc(ds->order(), Rational(qw, 4))) {
            if (z.is_zero() || divides_tau(z)) continue;
            if (Rational(4 * norm(z)) >= Rational(qw)) continue;  // strict bound
            CHECK(digit_set.count({z.a, z.b}) == 1);
        }
    }
}

TEST_CASE("boundary convention warning only for p=0, q=2") {
    CHECK(build_digit_set(make_order(0, 2), 2)->boundary_convention_warning());
    CHECK(!build_digit_set(make_order(1, 2), 2)->boundary_convention_warning());
}
