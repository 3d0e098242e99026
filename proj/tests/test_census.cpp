#include <doctest.h>

#include <cmath>

#include "taunaf/census.hpp"
#include "taunaf/fractal.hpp"
#include "taunaf/util.hpp"

using namespace taunaf;

TEST_CASE("census at N = 32: digit symmetry and weight consistency") {
    DigitSetPtr ds = build_digit_set(make_order(1, 2), 2);
    CensusResult res = count_digits(ds, Region::unit_disc(ds->order()), Rational(32));
    // digits are 1 and -1; z <-> -z swaps them, so the counts agree exactly
    REQUIRE(ds->size() == 3);
    CHECK(res.digit_counts[1] == res.digit_counts[2]);
    CHECK(res.digit_counts[1] > 0);
    Integer sum = res.digit_counts[1] + res.digit_counts[2];
    CHECK(sum == res.total_weight);
    CHECK(res.lattice_points == lattice_points_in_disc(ds->order(), Rational(32 * 32)).size());
}

TEST_CASE("tiny N: only the origin, no digits") {
    DigitSetPtr ds = build_digit_set(make_order(1, 2), 2);
    // f_L ~ 0.105; any N below 1 keeps NU free of nonzero lattice points
    CensusResult res = count_digits(ds, Region::unit_disc(ds->order()), Rational(1, 2));
    CHECK(res.lattice_points == 1);
    CHECK(res.total_weight == 0);
}

TEST_CASE("max support index stays within the J bound") {
    DigitSetPtr ds = build_digit_set(make_order(1, 2), 2);
    BoundsProfile prof = compute_profile(ds);
    for (int n : {16, 40, 96}) {
        CensusResult res = count_digits(ds, Region::unit_disc(ds->order()), Rational(n));
        int j = expansion_length_bound(static_cast<double>(n), 1.0, prof);
        CHECK(res.max_support_index <= j);
    }
}

TEST_CASE("psi_M: periodic, linear in the fractional part") {
    Rational e_w(1, 6);
    double lu = M_PI;
    CHECK(psi_m(lu, 7, e_w, 3.0) == doctest::Approx(lu * 8.0 / 6.0));
    CHECK(psi_m(lu, 7, e_w, 3.25) == doctest::Approx(psi_m(lu, 7, e_w, 4.25)));
    // slope -lambda(U) e_w on (0,1)
    double d = (psi_m(lu, 7, e_w, 0.6) - psi_m(lu, 7, e_w, 0.4)) / 0.2;
    CHECK(d == doctest::Approx(-lu / 6.0));
}

TEST_CASE("psi_Q: finite sum with certified tail") {
    DigitSetPtr ds = build_digit_set(make_order(1, 2), 2);
    double lu = M_PI;
    PsiQResult a = psi_q(ds, lu, 1e-10);
    PsiQResult b = psi_q(ds, lu, 1e-13);
    CHECK(std::abs(a.value - b.value) < 1e-9);
    CHECK(a.terms >= 60);  // rho = 16/17 makes the series converge slowly
    // scaling in lambda(U)
    PsiQResult c = psi_q(ds, 2.0 * lu, 1e-10);
    CHECK(c.value == doctest::Approx(2.0 * a.value));
}

TEST_CASE("discrete zero-part identity: full-cell membership counts match areas") {
    // over one full cell at scale j'+w, the number of sub-cell representatives
    // whose fractional part lies in W_{eta,j'} equals the number of cells of
    // the approximation
    for (auto [p, q, w] : {std::tuple<std::int64_t, std::int64_t, int>{1, 2, 2}, {3, 3, 2}}) {
        DigitSetPtr ds = build_digit_set(make_order(p, q), w);
        const IQOrder& ord = ds->order();
        int jp = 2;
        CharApprox ca = charset_approx(ds, ds->digits()[1], jp);
        int jw = jp + w;

        // representatives tau^{-jw} m for m over the canonical residues mod tau^{jw}
        Integer hits = 0, total = 0;
        std::vector<std::int64_t> a(static_cast<std::size_t>(jw), 0);
        AlgebraicPoint inv = point_pow(embed_inv_tau(ord), static_cast<unsigned>(jw), ord);
        while (true) {
            RingElement m = ring_zero(ord);
            for (int j = jw - 1; j >= 0; --j)
                m = m * ring_tau(ord) + RingElement(a[static_cast<std::size_t>(j)], 0, ord);
            LatticeFraction f = frac_ztau(ds->cell(), embed(m) * inv);
            if (charset_contains(ca, f.fractional_part)) hits += 1;
            total += 1;
            int j = 0;
            for (; j < jw; ++j) {
                if (++a[static_cast<std::size_t>(j)] < q) break;
                a[static_cast<std::size_t>(j)] = 0;
            }
            if (j == jw) break;
        }
        CHECK(total == boost::multiprecision::pow(Integer(q), static_cast<unsigned>(jw)));
        CHECK(hits == Integer(ca.cells.size()));
    }
}

TEST_CASE("fluctuation scan: per-phase spread shrinks across octaves") {
    DigitSetPtr ds = build_digit_set(make_order(1, 2), 2);
    Region disc = Region::unit_disc(ds->order());
    std::vector<double> phases = {0.0, 0.5};
    auto rows = fluctuation_scan(ds, disc, 8.0, 6, phases, 256.0, 1);
    REQUIRE(!rows.empty());

    for (double f : phases) {
        std::vector<double> vals;
        for (const auto& r : rows)
            if (r.phase == f) vals.push_back(r.psi_hat);
        REQUIRE(vals.size() >= 6);
        auto spread = [](const std::vector<double>& v, std::size_t b, std::size_t e) {
            double lo = 1e300, hi = -1e300;
            for (std::size_t i = b; i < e; ++i) {
                lo = std::min(lo, v[i]);
                hi = std::max(hi, v[i]);
            }
            return hi - lo;
        };
        double early = spread(vals, 0, vals.size() / 2);
        double late = spread(vals, vals.size() - vals.size() / 2, vals.size());
        CHECK(late < early);
    }
}
