#pragma once

// Full-block-length analysis: exact counts C_{n,w}, exact occurrence moments
// via generating functions, the asymptotic constants e_w / v_w / rho, an
// exact-distribution CLT check and the root-location check.

#include <complex>
#include <vector>

#include "taunaf/ring.hpp"

namespace taunaf {

// Coefficients c_0..c_n of P(Z)/Q(Z) with Q(0) = 1, exact integers.
std::vector<Integer> series_coefficients(const std::vector<Integer>& P,
                                         const std::vector<Integer>& Q, int n);

class BlockStats {
public:
    BlockStats(std::int64_t q, int w);
    BlockStats(const IQOrder& order, int w) : BlockStats(order.q, w) {}

    std::int64_t q() const { return q_; }
    int w() const { return w_; }
    // number of nonzero digits, q^{w-1}(q-1)
    const Integer& num_nonzero_digits() const { return M_; }

    // C_{n,w} = #NAF words of length n (left-length <= n, integer words)
    Integer count_nafs(int n) const;

    struct Moments {
        Rational mean;
        Rational variance;
    };
    // exact expectation/variance of the occurrence count of one fixed nonzero
    // digit among all length-n words (uniform model); identical for every
    // nonzero digit
    Moments occurrence_moments(int n) const;

    // total occurrences of one fixed nonzero digit over all length-n words
    Integer occurrence_total(int n) const;
    // sum over words of x(x-1) where x = occurrences of the fixed digit
    Integer occurrence_total_second_factorial(int n) const;

    Rational e_w() const;  // 1 / (q^{w-1}((q-1)w + 1))
    Rational v_w() const;
    Rational rho() const;  // (1 + 1/(q w^3))^{-1}
    // constant term of E[X_n] = e_w n + const + O(n rho^n)
    Rational expectation_constant() const;

    // a[m] = #words of length n with exactly m occurrences of the fixed digit
    std::vector<Integer> occurrence_distribution(int n) const;

    struct CltRow {
        int n;
        double kolmogorov;
    };
    // Kolmogorov distance between the normalised exact distribution and the
    // standard normal, per n
    std::vector<CltRow> clt_check(const std::vector<int>& n_grid) const;

private:
    std::int64_t q_;
    int w_;
    Integer M_;
};

struct WagnerRootResult {
    bool ok = false;                          // exactly one root within the radius, equal to 1
    std::vector<std::complex<double>> roots;  // all roots of 1 - z/t - (1-1/t) z^w
    double radius = 0.0;                      // 1 + 1/(t w^3)
};

WagnerRootResult wagner_root_check(int t, int w);

}  // namespace taunaf
