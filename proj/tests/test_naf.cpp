#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "taunaf/naf.hpp"
#include "taunaf/util.hpp"

using namespace taunaf;

TEST_CASE("validate enforces the width-w gap and digit membership") {
    DigitSetPtr ds = build_digit_set(make_order(1, 2), 2);
    IQOrder ord = ds->order();
    RingElement one = ring_one(ord);
    RingElement minus(Integer(-1), Integer(0), ord);

    NafWord empty(ds);
    CHECK(validate(empty));

    NafWord bad(ds);
    bad.set(0, one);
    bad.set(1, one);
    CHECK(!validate(bad));

    NafWord good(ds);
    good.set(1, minus);
    good.set(3, minus);
    CHECK(validate(good));

    NafWord non_digit(ds);
    non_digit.set(0, RingElement(3, 0, ord));
    CHECK(!validate(non_digit));
}

TEST_CASE("value evaluates words exactly") {
    DigitSetPtr ds = build_digit_set(make_order(1, 2), 2);
    IQOrder ord = ds->order();
    RingElement minus(Integer(-1), Integer(0), ord);

    CHECK(value(NafWord(ds)).num == ring_zero(ord));

    NafWord single(ds);
    single.set(0, ring_one(ord));
    CHECK(value(single).num == ring_one(ord));
    CHECK(value(single).rlen == 0);

    // -tau^3 - tau = 2 for tau^2 = tau - 2
    NafWord two(ds);
    two.set(1, minus);
    two.set(3, minus);
    CHECK(value(two).num == RingElement(2, 0, ord));

    NafWord frac(ds);
    frac.set(-2, ring_one(ord));
    NafValue v = value(frac);
    CHECK(v.rlen == 2);
    CHECK(v.num == ring_one(ord));
    CHECK(v.abs_sq() == Rational(1, 4));  // |tau^{-2}|^2 = 1/q^2
}

TEST_CASE("expand traces the division algorithm") {
    DigitSetPtr ds = build_digit_set(make_order(1, 2), 2);
    IQOrder ord = ds->order();

    CHECK(expand(ds, ring_zero(ord)).empty());

    for (std::size_t i = 1; i < ds->size(); ++i) {
        NafWord w = expand(ds, ds->digits()[i]);
        CHECK(weight(w) == 1);
        CHECK(w.digit_at(0) != nullptr);
        CHECK(*w.digit_at(0) == ds->digits()[i]);
    }

    NafWord two = expand(ds, RingElement(2, 0, ord));
    RingElement minus(Integer(-1), Integer(0), ord);
    CHECK(weight(two) == 2);
    REQUIRE(two.digit_at(1) != nullptr);
    REQUIRE(two.digit_at(3) != nullptr);
    CHECK(*two.digit_at(1) == minus);
    CHECK(*two.digit_at(3) == minus);
    CHECK(value(two).num == RingElement(2, 0, ord));
}

TEST_CASE("round trip and uniqueness on a norm ball") {
    for (auto [p, q, w] : {std::tuple<std::int64_t, std::int64_t, int>{1, 2, 2},
                           {3, 3, 2},
                           {0, 2, 3},
                           {-1, 3, 2}}) {
        DigitSetPtr ds = build_digit_set(make_order(p, q), w);
        std::set<std::string> seen;
        for (const auto& z : lattice_points_in_disc(ds->order(), Rational(400))) {
            NafWord word = expand(ds, z);
            CHECK(validate(word));
            CHECK(value(word).num == z);
            CHECK(value(word).rlen == 0);
            // serialise the word; distinct z must give distinct words
            std::string ser;
            for (const auto& [idx, d] : word.support())
                ser += std::to_string(idx) + ":" + d.a.str() + "," + d.b.str() + ";";
            CHECK(seen.insert(ser).second);
        }
    }
}

TEST_CASE("divisibility structure: tau | z iff no digit at index 0") {
    DigitSetPtr ds = build_digit_set(make_order(1, 2), 3);
    Rng rng(9);
    for (int i = 0; i < 100; ++i) {
        RingElement z(rng.range(-80, 80), rng.range(-80, 80), ds->order());
        if (z.is_zero()) continue;
        NafWord word = expand(ds, z);
        CHECK(divides_tau(z) == (word.digit_at(0) == nullptr));
    }
}

TEST_CASE("metric and weight") {
    DigitSetPtr ds = build_digit_set(make_order(1, 2), 2);
    RingElement one = ring_one(ds->order());

    NafWord a(ds), b(ds);
    CHECK(naf_metric(a, b) == 0.0);
    a.set(0, one);
    CHECK(naf_metric(a, b) == 1.0);  // |tau|^0
    a.set(0, one);
    b = NafWord(ds);
    b.set(3, one);
    CHECK(naf_metric(a, b) == doctest::Approx(std::pow(2.0, 1.5)));  // |tau|^3

    CHECK(weight(NafWord(ds)) == 0);
    NafWord w = expand(ds, RingElement(2, 0, ds->order()));
    CHECK(weight(w) == 2);
    Integer total = 0;
    for (std::size_t i = 1; i < ds->size(); ++i) total += digit_count(w, ds->digits()[i]);
    CHECK(total == weight(w));
}

TEST_CASE("value is Lipschitz with constant 2 c_D / (1 - |tau|^{-1})") {
    DigitSetPtr ds = build_digit_set(make_order(3, 3), 2);
    double c_d = ds->max_digit_abs();
    double lip = 2.0 * c_d / (1.0 - 1.0 / ds->order().abs_tau());
    Rng rng(41);
    auto random_word = [&](int lo, int hi) {
        NafWord w(ds);
        int pos = lo;
        while (pos <= hi) {
            if (rng.below(3) == 0) {
                w.set(pos, ds->digits()[1 + rng.below(ds->size() - 1)]);
                pos += ds->w();
            } else {
                ++pos;
            }
        }
        return w;
    };
    for (int i = 0; i < 100; ++i) {
        NafWord a = random_word(-6, 6), b = random_word(-6, 6);
        double d = naf_metric(a, b);
        if (d == 0.0) continue;
        AlgebraicPoint va = value(a).point(), vb = value(b).point();
        double dist = std::sqrt(abs_sq(va - vb).value());
        CHECK(dist <= lip * d * (1.0 + 1e-12));
    }
}

TEST_CASE("approx_expand hits the cell-radius error bound") {
    DigitSetPtr ds = build_digit_set(make_order(1, 2), 2);
    IQOrder ord = ds->order();

    // exactly representable points come back exact
    RingElement z(5, -3, ord);
    for (int ell : {0, 4}) {
        NafWord w = approx_expand(ds, embed(z), ell);
        NafValue v = value(w);
        CHECK(v.num == ring_pow(ring_tau(ord), static_cast<unsigned>(v.rlen)) * z);
    }

    // 1/3 at resolution ell = 10: error <= |tau|^{1-ell} c_V
    AlgebraicPoint third(QSqrtD(Rational(1, 3), 0, ord.D), QSqrtD(0, 0, ord.D));
    NafWord w = approx_expand(ds, third, 10);
    CHECK(validate(w));
    AlgebraicPoint diff = value(w).point() - third;
    double bound = std::pow(2.0, (1.0 - 10.0) / 2.0) * std::sqrt(2.0 * 7.0 / 12.0);
    CHECK(std::sqrt(abs_sq(diff).value()) <= bound);
}

TEST_CASE("verify_wnads finds no failures for the problematic pairs") {
    for (auto [p, q, w] : {std::tuple<std::int64_t, std::int64_t, int>{1, 2, 2}, {0, 2, 2}, {2, 3, 2}}) {
        DigitSetPtr ds = build_digit_set(make_order(p, q), w);
        WnadsReport rep = verify_wnads(ds);
        CHECK(rep.ok());
        CHECK(rep.checked > 0);
    }
    // nu > 0 pair: termination is analytic, the check is redundant but must pass
    DigitSetPtr easy = build_digit_set(make_order(5, 7), 2);
    CHECK(verify_wnads(easy).ok());
}

TEST_CASE("fractional word enumeration counts match the block recurrence") {
    DigitSetPtr ds = build_digit_set(make_order(1, 2), 2);
    // C_ell: 1, 3, 5, 11, 21, 43
    std::vector<std::size_t> expect = {1, 3, 5, 11, 21, 43};
    for (std::size_t ell = 0; ell < expect.size(); ++ell) {
        std::size_t count = 0;
        std::set<std::pair<Integer, Integer>> values;
        for_each_fractional_word(ds, static_cast<int>(ell),
                                 [&](const RingElement& num, const std::vector<std::size_t>&) {
                                     ++count;
                                     values.emplace(num.a, num.b);
                                 });
        CHECK(count == expect[ell]);
        CHECK(values.size() == count);  // distinct values
    }
}
