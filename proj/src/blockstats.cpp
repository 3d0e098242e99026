#include "taunaf/blockstats.hpp"

#include <cmath>
#include <stdexcept>

namespace taunaf {

std::vector<Integer> series_coefficients(const std::vector<Integer>& P,
                                         const std::vector<Integer>& Q, int n) {
    TAUNAF_ASSERT(!Q.empty() && Q[0] == 1, "series_coefficients: Q(0) must be 1");
    std::vector<Integer> c(static_cast<std::size_t>(n) + 1, Integer(0));
    for (int i = 0; i <= n; ++i) {
        Integer acc = (i < static_cast<int>(P.size())) ? P[static_cast<std::size_t>(i)] : Integer(0);
        for (int k = 1; k < static_cast<int>(Q.size()) && k <= i; ++k)
            acc -= Q[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(i - k)];
        c[static_cast<std::size_t>(i)] = std::move(acc);
    }
    return c;
}

namespace {

// polynomial product (dense, exact)
std::vector<Integer> poly_mul(const std::vector<Integer>& A, const std::vector<Integer>& B) {
    std::vector<Integer> C(A.size() + B.size() - 1, Integer(0));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j) C[i + j] += A[i] * B[j];
    return C;
}

}  // namespace

BlockStats::BlockStats(std::int64_t q, int w) : q_(q), w_(w) {
    if (q < 2) throw std::invalid_argument("BlockStats: q >= 2 required");
    if (w < 2) throw std::invalid_argument("BlockStats: w >= 2 required");
    M_ = boost::multiprecision::pow(Integer(q), static_cast<unsigned>(w - 1)) * (q - 1);
}

Integer BlockStats::count_nafs(int n) const {
    if (n < 0) throw std::invalid_argument("count_nafs: n >= 0 required");
    // C_j = 1 + j*M for j < w, then C_n = C_{n-1} + M * C_{n-w}
    std::vector<Integer> C(static_cast<std::size_t>(std::max(n + 1, w_)));
    for (int j = 0; j < w_; ++j) C[static_cast<std::size_t>(j)] = 1 + j * M_;
    for (int j = w_; j <= n; ++j)
        C[static_cast<std::size_t>(j)] =
            C[static_cast<std::size_t>(j - 1)] + M_ * C[static_cast<std::size_t>(j - w_)];
    return C[static_cast<std::size_t>(n)];
}

Integer BlockStats::occurrence_total(int n) const {
    // [Z^n] Z / (1 - Z - M Z^w)^2
    std::vector<Integer> den(static_cast<std::size_t>(w_) + 1, Integer(0));
    den[0] = 1;
    den[1] = -1;
    den[static_cast<std::size_t>(w_)] = -M_;
    std::vector<Integer> den2 = poly_mul(den, den);
    std::vector<Integer> num = {Integer(0), Integer(1)};
    return series_coefficients(num, den2, n).back();
}

Integer BlockStats::occurrence_total_second_factorial(int n) const {
    // [Z^n] 2 Z^{w+1} / (1 - Z - M Z^w)^3
    std::vector<Integer> den(static_cast<std::size_t>(w_) + 1, Integer(0));
    den[0] = 1;
    den[1] = -1;
    den[static_cast<std::size_t>(w_)] = -M_;
    std::vector<Integer> den3 = poly_mul(poly_mul(den, den), den);
    std::vector<Integer> num(static_cast<std::size_t>(w_) + 2, Integer(0));
    num[static_cast<std::size_t>(w_) + 1] = 2;
    return series_coefficients(num, den3, n).back();
}

BlockStats::Moments BlockStats::occurrence_moments(int n) const {
    Integer C = count_nafs(n);
    Rational mean = Rational(occurrence_total(n)) / Rational(C);
    Rational second_fact = Rational(occurrence_total_second_factorial(n)) / Rational(C);
    Rational variance = second_fact + mean - mean * mean;
    return Moments{std::move(mean), std::move(variance)};
}

Rational BlockStats::e_w() const {
    Integer qw1 = boost::multiprecision::pow(Integer(q_), static_cast<unsigned>(w_ - 1));
    return Rational(1) / Rational(qw1 * ((q_ - 1) * w_ + 1));
}

Rational BlockStats::v_w() const {
    Integer qw1 = boost::multiprecision::pow(Integer(q_), static_cast<unsigned>(w_ - 1));
    Integer s = (q_ - 1) * w_ + 1;
    Integer num = qw1 * s * s - Integer((q_ - 1) * w_ * w_ + 2 * w_ - 1);
    Integer den = qw1 * qw1 * s * s * s;
    return Rational(num) / Rational(den);
}

Rational BlockStats::rho() const {
    Integer qw3 = Integer(q_) * w_ * w_ * w_;
    return Rational(qw3) / Rational(qw3 + 1);
}

Rational BlockStats::expectation_constant() const {
    Integer qw1 = boost::multiprecision::pow(Integer(q_), static_cast<unsigned>(w_ - 1));
    Integer s = (q_ - 1) * w_ + 1;
    return Rational(Integer(q_ - 1) * (w_ - 1) * w_) / Rational(qw1 * s * s);
}

std::vector<Integer> BlockStats::occurrence_distribution(int n) const {
    // A_n(m): top position zero, or a nonzero digit (the fixed one or one of
    // the M-1 others) followed by w-1 forced zeros
    int mmax = n / w_ + 1;
    std::vector<std::vector<Integer>> A(static_cast<std::size_t>(n + 1),
                                        std::vector<Integer>(static_cast<std::size_t>(mmax) + 1, Integer(0)));
    for (int j = 0; j < w_ && j <= n; ++j) {
        A[static_cast<std::size_t>(j)][0] = 1 + Integer(j) * (M_ - 1);
        if (mmax >= 1) A[static_cast<std::size_t>(j)][1] = j;
    }
    for (int j = w_; j <= n; ++j) {
        for (int m = 0; m <= mmax; ++m) {
            Integer acc = A[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(m)];
            acc += (M_ - 1) * A[static_cast<std::size_t>(j - w_)][static_cast<std::size_t>(m)];
            if (m >= 1) acc += A[static_cast<std::size_t>(j - w_)][static_cast<std::size_t>(m - 1)];
            A[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] = std::move(acc);
        }
    }
    return A[static_cast<std::size_t>(n)];
}

namespace {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

std::vector<BlockStats::CltRow> BlockStats::clt_check(const std::vector<int>& n_grid) const {
    std::vector<CltRow> rows;
    for (int n : n_grid) {
        std::vector<Integer> a = occurrence_distribution(n);
        Integer C = count_nafs(n);
        Moments mo = occurrence_moments(n);
        double mu = to_double(mo.mean);
        double sd = std::sqrt(to_double(mo.variance));
        double dist = 0.0;
        Rational cum(0);
        Rational prev(0);
        for (std::size_t m = 0; m < a.size(); ++m) {
            cum += Rational(a[m]) / Rational(C);
            double x = (static_cast<double>(m) - mu) / sd;
            double phi = std_normal_cdf(x);
            dist = std::max(dist, std::abs(to_double(cum) - phi));
            dist = std::max(dist, std::abs(to_double(prev) - phi));
            prev = cum;
        }
        rows.push_back(CltRow{n, dist});
    }
    return rows;
}

WagnerRootResult wagner_root_check(int t, int w) {
    if (t < 2 || w < 2) throw std::invalid_argument("wagner_root_check: t, w >= 2 required");
    WagnerRootResult res;
    res.radius = 1.0 + 1.0 / (static_cast<double>(t) * w * w * w);

    // f(z) = 1 - z/t - (1 - 1/t) z^w; roots by Durand-Kerner
    const int deg = w;
    std::vector<std::complex<double>> coeff(static_cast<std::size_t>(deg) + 1, {0.0, 0.0});
    coeff[0] = {1.0, 0.0};
    coeff[1] = {-1.0 / t, 0.0};
    coeff[static_cast<std::size_t>(deg)] += std::complex<double>(-(1.0 - 1.0 / t), 0.0);
    auto eval = [&](std::complex<double> z) {
        std::complex<double> acc{0.0, 0.0};
        for (int i = deg; i >= 0; --i) acc = acc * z + coeff[static_cast<std::size_t>(i)];
        return acc;
    };
    std::complex<double> lead = coeff[static_cast<std::size_t>(deg)];
    std::vector<std::complex<double>> r(static_cast<std::size_t>(deg));
    for (int i = 0; i < deg; ++i)
        r[static_cast<std::size_t>(i)] = std::polar(1.3, 2.0 * M_PI * i / deg + 0.4);
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (int i = 0; i < deg; ++i) {
            std::complex<double> num = eval(r[static_cast<std::size_t>(i)]) / lead;
            std::complex<double> den{1.0, 0.0};
            for (int j = 0; j < deg; ++j)
                if (j != i) den *= (r[static_cast<std::size_t>(i)] - r[static_cast<std::size_t>(j)]);
            std::complex<double> delta = num / den;
            r[static_cast<std::size_t>(i)] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    res.roots = r;

    int inside = 0;
    bool one_is_root = false;
    for (const auto& z : r) {
        if (std::abs(z) <= res.radius) {
            ++inside;
            if (std::abs(z - std::complex<double>(1.0, 0.0)) < 1e-10) one_is_root = true;
        }
    }
    res.ok = (inside == 1) && one_is_root;
    return res;
}

}  // namespace taunaf
