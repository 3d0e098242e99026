#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>

#include "taunaf/blockstats.hpp"
#include "taunaf/util.hpp"

using namespace taunaf;

namespace {

// Independent oracle: depth-first enumeration of all digit strings of length
// n over an alphabet with M nonzero symbols, subject to the w-NAF condition.
// Tallies the total number of words and the occurrences of symbol #1.
struct BruteCounts {
    Integer words{0};
    Integer symbol_one_occurrences{0};
    std::map<int, Integer> by_occurrences;  // m -> number of words
};

BruteCounts brute_enumerate(std::int64_t m_symbols, int w, int n) {
    BruteCounts out;
    // state: position, gap since last nonzero (>= w means free), count of symbol 1
    std::function<void(int, int, int)> rec = [&](int pos, int gap, int ones) {
        if (pos == n) {
            out.words += 1;
            out.symbol_one_occurrences += ones;
            out.by_occurrences[ones] += 1;
            return;
        }
        rec(pos + 1, gap + 1, ones);  // zero digit
        if (gap >= w) {
            rec(pos + 1, 1, ones + 1);  // the tracked symbol
            if (m_symbols > 1) {
                // remaining symbols are interchangeable: enumerate one and scale
                for (std::int64_t s = 1; s < m_symbols; ++s) rec(pos + 1, 1, ones);
            }
        }
    };
    rec(0, w, 0);
    return out;
}

}  // namespace

TEST_CASE("count_nafs matches exhaustive enumeration for q in {2,3}, w in {2,3}, n <= 12") {
    for (std::int64_t q : {2, 3}) {
        for (int w : {2, 3}) {
            BlockStats bs(q, w);
            std::int64_t m = static_cast<std::int64_t>(to_double(bs.num_nonzero_digits()));
            for (int n = 0; n <= 12; ++n) {
                BruteCounts brute = brute_enumerate(m, w, n);
                CHECK(bs.count_nafs(n) == brute.words);
                CHECK(bs.occurrence_total(n) == brute.symbol_one_occurrences);
            }
        }
    }
}

TEST_CASE("exact counts for small cases") {
    BlockStats bs(2, 2);
    CHECK(bs.count_nafs(0) == 1);
    CHECK(bs.count_nafs(1) == 3);
    CHECK(bs.count_nafs(2) == 5);  // eps, 1, -1, 10, -10
    // leading term C_n ~ 2^{n+2}/3
    double ratio = to_double(Rational(bs.count_nafs(60) * 3,
                                      boost::multiprecision::pow(Integer(2), 62)));
    CHECK(std::abs(ratio - 1.0) < 1e-9);
}

TEST_CASE("moments: exact small values and asymptotics") {
    BlockStats bs(2, 2);
    auto m0 = bs.occurrence_moments(0);
    CHECK(m0.mean == 0);
    CHECK(m0.variance == 0);

    auto m2 = bs.occurrence_moments(2);
    CHECK(m2.mean == Rational(2, 5));  // digit +1 occurs twice among the 5 words

    // E(n) - (e_w n + const) -> 0 geometrically; < 1e-6 at n = 60
    Rational c = bs.expectation_constant();
    CHECK(c == Rational(1, 9));
    double prev = 1e9;
    for (int n : {20, 30, 40, 50, 60}) {
        Rational diff = bs.occurrence_moments(n).mean - bs.e_w() * n - c;
        double d = std::abs(to_double(diff));
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("asymptotic constants") {
    BlockStats b22(2, 2);
    CHECK(b22.e_w() == Rational(1, 6));
    CHECK(b22.rho() == Rational(16, 17));
    CHECK(b22.v_w() > 0);

    BlockStats b32(3, 2);
    CHECK(b32.e_w() == Rational(1, 15));

    // variance positivity over the grid
    for (std::int64_t q = 2; q <= 5; ++q)
        for (int w = 2; w <= 4; ++w) CHECK(BlockStats(q, w).v_w() > 0);
}

TEST_CASE("occurrence distribution matches the moments exactly") {
    for (std::int64_t q : {2, 3}) {
        BlockStats bs(q, 2);
        for (int n : {5, 11, 20}) {
            std::vector<Integer> dist = bs.occurrence_distribution(n);
            Integer total{0}, first{0}, second_fact{0};
            for (std::size_t m = 0; m < dist.size(); ++m) {
                total += dist[m];
                first += Integer(static_cast<std::int64_t>(m)) * dist[m];
                second_fact += Integer(static_cast<std::int64_t>(m)) * (static_cast<std::int64_t>(m) - 1) * dist[m];
            }
            CHECK(total == bs.count_nafs(n));
            CHECK(first == bs.occurrence_total(n));
            CHECK(second_fact == bs.occurrence_total_second_factorial(n));
        }
    }
    // and against the brute-force distribution
    BlockStats bs(2, 2);
    BruteCounts brute = brute_enumerate(2, 2, 10);
    std::vector<Integer> dist = bs.occurrence_distribution(10);
    for (const auto& [m, cnt] : brute.by_occurrences) CHECK(dist[static_cast<std::size_t>(m)] == cnt);
}

TEST_CASE("CLT: Kolmogorov distance shrinks along the grid") {
    BlockStats bs(2, 2);
    auto rows = bs.clt_check({20, 40, 80, 160});
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].kolmogorov < rows[i - 1].kolmogorov);
    CHECK(rows.back().kolmogorov < 0.1);
}

TEST_CASE("wagner root location") {
    // w = 2, t = 2: roots 1 and -2; only z = 1 within 1 + 1/(t w^3)
    auto r22 = wagner_root_check(2, 2);
    CHECK(r22.ok);
    CHECK(r22.radius == doctest::Approx(1.0625));
    bool found_minus_two = false;
    for (const auto& z : r22.roots)
        if (std::abs(z - std::complex<double>(-2.0, 0.0)) < 1e-9) found_minus_two = true;
    CHECK(found_minus_two);

    // w = 3: nontrivial roots have modulus sqrt(t/(t-1))
    auto r23 = wagner_root_check(2, 3);
    CHECK(r23.ok);
    for (const auto& z : r23.roots) {
        if (std::abs(z - std::complex<double>(1.0, 0.0)) < 1e-9) continue;
        CHECK(std::abs(z) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
        CHECK(std::abs(z) >= 1.0 + 1.0 / (27.0 * 2.0));
    }

    CHECK(wagner_root_check(9, 4).ok);
    for (int t : {2, 3, 4, 5})
        for (int w : {2, 3, 4, 5}) CHECK(wagner_root_check(t, w).ok);
}

TEST_CASE("series_coefficients extracts rational-function coefficients") {
    // 1/(1 - Z - Z^2): Fibonacci
    std::vector<Integer> c = series_coefficients({Integer(1)}, {Integer(1), Integer(-1), Integer(-1)}, 10);
    std::vector<std::int64_t> fib = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
    for (std::size_t i = 0; i < fib.size(); ++i) CHECK(c[i] == fib[i]);
}
