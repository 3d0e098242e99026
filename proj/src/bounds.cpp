#include "taunaf/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace taunaf {

namespace {

constexpr double kCvSq = 7.0 / 12.0;

double abs_tau_pow(const IQOrder& ord, int e) {
    return std::pow(static_cast<double>(ord.q), static_cast<double>(e) / 2.0);
}

std::vector<AlgebraicPoint> scaled_cell_polygon(const VoronoiCell& cell, int e) {
    // tau^e V, counter-clockwise (multiplication by tau preserves orientation)
    std::vector<AlgebraicPoint> poly;
    poly.reserve(cell.vertices().size());
    for (const auto& v : cell.vertices()) poly.push_back(mul_tau_pow(v, e, cell.order()));
    return poly;
}

bool point_in_polygon_closed(const std::vector<AlgebraicPoint>& poly, const AlgebraicPoint& pt) {
    const std::size_t m = poly.size();
    for (std::size_t k = 0; k < m; ++k) {
        AlgebraicPoint e = poly[(k + 1) % m] - poly[k];
        if (sign_of(cross(e, pt - poly[k])) < 0) return false;
    }
    return true;
}

// Exact test: is the closed ball around `center` with squared radius
// mult * q^{-ell} * f_U^2 strictly inside the polygon? f_U^2 =
// q^w (7/12) / (1 - q^{-w/2})^2 lives in Q(sqrt(q)), so the per-edge
// comparison is rearranged and squared once to stay inside Q(sqrt(D)).
bool ball_strictly_inside(const std::vector<AlgebraicPoint>& poly, const AlgebraicPoint& center,
                          const IQOrder& ord, int w, int ell, int mult) {
    const std::size_t m = poly.size();
    Rational q_pow_w = boost::multiprecision::pow(Integer(ord.q), static_cast<unsigned>(w));
    Rational q_inv_w = Rational(1) / q_pow_w;
    Rational scale = Rational(mult) * q_pow_w * Rational(7, 12);  // mult * q^w * c_V^2
    // q^{w - ell} factor folded in below as q^{-ell}
    Rational q_pow_ell = 1;
    for (int i = 0; i < ell; ++i) q_pow_ell *= ord.q;

    for (std::size_t k = 0; k < m; ++k) {
        AlgebraicPoint e = poly[(k + 1) % m] - poly[k];
        QSqrtD c = cross(e, center - poly[k]);
        if (sign_of(c) <= 0) return false;  // center not strictly inside
        QSqrtD c2 = c * c;
        QSqrtD edge2 = dot(e, e);
        // want: c2 (1 - q^{-w/2})^2 > (mult q^w c_V^2 / q^ell) edge2
        // i.e.  T := c2 (1 + q^{-w}) - (scale / q^ell) edge2 > 2 c2 q^{-w/2}
        QSqrtD T = (Rational(1) + q_inv_w) * c2 - (scale / q_pow_ell) * edge2;
        if (sign_of(T) <= 0) return false;
        if (w % 2 == 0) {
            Rational q_half = boost::multiprecision::pow(Integer(ord.q), static_cast<unsigned>(w / 2));
            if (cmp(T, (Rational(2) / q_half) * c2) <= 0) return false;
        } else {
            // square both sides: T^2 > 4 q^{-w} c2^2
            if (cmp(T * T, (Rational(4) * q_inv_w) * (c2 * c2)) <= 0) return false;
        }
    }
    return true;
}

// float margin min(dist - r) over edges, for reporting
double ball_margin(const std::vector<AlgebraicPoint>& poly, const AlgebraicPoint& center,
                   double radius) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t m = poly.size();
    for (std::size_t k = 0; k < m; ++k) {
        AlgebraicPoint e = poly[(k + 1) % m] - poly[k];
        double c = cross(e, center - poly[k]).value();
        double len = std::sqrt(abs_sq(e).value());
        best = std::min(best, c / len - radius);
    }
    return best;
}

}  // namespace

double compute_nu(const IQOrder& order, int w) {
    double at = order.abs_tau();
    return 0.5 - at * std::sqrt(kCvSq) / (std::pow(at, w) - 1.0);
}

double f_upper(const IQOrder& order, int w) {
    double atw = abs_tau_pow(order, w);
    return atw * std::sqrt(kCvSq) / (1.0 - 1.0 / atw);
}

UpperSearchResult upper_search(const DigitSetPtr& ds, int max_ell) {
    const IQOrder& ord = ds->order();
    const int w = ds->w();
    std::vector<AlgebraicPoint> poly = scaled_cell_polygon(ds->cell(), 2 * w - 1);
    AlgebraicPoint inv_tau = embed_inv_tau(ord);
    double fu = f_upper(ord, w);

    for (int ell = 0; ell <= max_ell; ++ell) {
        bool ok = true;
        AlgebraicPoint inv = point_pow(inv_tau, static_cast<unsigned>(ell), ord);
        for_each_fractional_word(ds, ell, [&](const RingElement& num, const std::vector<std::size_t>&) {
            if (!ok) return;
            if (!ball_strictly_inside(poly, embed(num) * inv, ord, w, ell, 1)) ok = false;
        });
        if (!ok) continue;

        UpperSearchResult res;
        res.ell = ell;
        res.scaled_f_u = fu / abs_tau_pow(ord, ell);
        double eps = std::numeric_limits<double>::infinity();
        for_each_fractional_word(ds, ell, [&](const RingElement& num, const std::vector<std::size_t>&) {
            eps = std::min(eps, ball_margin(poly, embed(num) * inv, res.scaled_f_u));
        });
        res.eps = eps;
        return res;
    }
    throw std::runtime_error("upper_search: no ell found within cap");
}

LowerSearchResult lower_search(const DigitSetPtr& ds, int max_ell) {
    const IQOrder& ord = ds->order();
    const int w = ds->w();
    double fu = f_upper(ord, w);
    Rational q_pow_w = boost::multiprecision::pow(Integer(ord.q), static_cast<unsigned>(w));
    Rational q_inv_w = Rational(1) / q_pow_w;
    Rational rhs_const = q_pow_w * Rational(7, 12);

    // |value|^2 > q^{-ell} f_U^2 for num at scale ell reduces to
    // norm(num) (1 - q^{-w/2})^2 > q^w c_V^2, handled exactly as in the
    // ball predicate (square once when w is odd).
    auto exceeds_fu = [&](const Integer& nrm) {
        Rational T = Rational(nrm) * (Rational(1) + q_inv_w) - rhs_const;
        if (T <= 0) return false;
        if (w % 2 == 0) {
            Rational q_half = boost::multiprecision::pow(Integer(ord.q), static_cast<unsigned>(w / 2));
            return T > (Rational(2) / q_half) * Rational(nrm);
        }
        return T * T > Rational(4) * q_inv_w * Rational(nrm) * Rational(nrm);
    };

    for (int ell = 1; ell <= max_ell; ++ell) {
        bool ok = true;
        for_each_fractional_word(ds, ell, [&](const RingElement& num, const std::vector<std::size_t>& digits) {
            if (!ok || digits[0] == 0) return;
            if (!exceeds_fu(norm(num))) ok = false;
        });
        if (!ok) continue;

        LowerSearchResult res;
        res.ell = ell;
        res.scaled_f_u = fu / abs_tau_pow(ord, ell);
        // nu~ = min |value| - |tau|^{-ell} f_U, the tabulated convention; the
        // guaranteed lower bound for infinite words is then |tau|^{-1} nu~
        double best = std::numeric_limits<double>::infinity();
        for_each_fractional_word(ds, ell, [&](const RingElement& num, const std::vector<std::size_t>& digits) {
            if (digits[0] == 0) return;
            double v = std::sqrt(to_double(norm(num))) / abs_tau_pow(ord, ell);
            best = std::min(best, v - res.scaled_f_u);
        });
        res.nu_tilde = best;
        return res;
    }
    throw std::runtime_error("lower_search: no ell found within cap");
}

ApproxContainmentResult approx_containment_search(const DigitSetPtr& ds, int max_k) {
    const IQOrder& ord = ds->order();
    const int w = ds->w();
    std::vector<AlgebraicPoint> poly = scaled_cell_polygon(ds->cell(), 2 * w - 1);
    AlgebraicPoint inv_tau = embed_inv_tau(ord);
    double fu = f_upper(ord, w);

    ApproxContainmentResult res;
    for (int k = 0; k <= max_k && res.k < 0; ++k) {
        bool ok = true;
        AlgebraicPoint inv = point_pow(inv_tau, static_cast<unsigned>(k), ord);
        for_each_fractional_word(ds, k, [&](const RingElement& num, const std::vector<std::size_t>&) {
            if (!ok) return;
            if (!ball_strictly_inside(poly, embed(num) * inv, ord, w, k, 4)) ok = false;
        });
        if (!ok) continue;
        res.k = k;
        res.radius = 2.0 * fu / abs_tau_pow(ord, k);
        double eps = std::numeric_limits<double>::infinity();
        for_each_fractional_word(ds, k, [&](const RingElement& num, const std::vector<std::size_t>&) {
            eps = std::min(eps, ball_margin(poly, embed(num) * inv, res.radius));
        });
        res.eps = eps;
    }
    if (res.k < 0) throw std::runtime_error("approx_containment_search: no k found within cap");

    // value(xi) + tau^{-ell} V inside tau^{2w-1} V, checked at the translated
    // cell vertices for every ell <= k
    res.valid_below_k = true;
    for (int ell = 0; ell <= res.k && res.valid_below_k; ++ell) {
        AlgebraicPoint inv = point_pow(inv_tau, static_cast<unsigned>(ell), ord);
        std::vector<AlgebraicPoint> small_cell;
        for (const auto& v : ds->cell().vertices()) small_cell.push_back(v * inv);
        for_each_fractional_word(ds, ell, [&](const RingElement& num, const std::vector<std::size_t>&) {
            if (!res.valid_below_k) return;
            AlgebraicPoint center = embed(num) * inv;
            for (const auto& v : small_cell) {
                if (!point_in_polygon_closed(poly, center + v)) {
                    res.valid_below_k = false;
                    return;
                }
            }
        });
    }
    return res;
}

BoundsProfile compute_profile(const DigitSetPtr& ds) {
    BoundsProfile prof;
    prof.order = ds->order();
    prof.w = ds->w();
    prof.f_u = f_upper(prof.order, prof.w);
    prof.nu = compute_nu(prof.order, prof.w);
    prof.problematic = prof.nu <= 0.0;
    if (!prof.problematic) {
        prof.f_l = prof.nu;
    } else {
        prof.upper = upper_search(ds);
        prof.lower = lower_search(ds);
        prof.f_l = prof.lower->nu_tilde;
    }
    return prof;
}

double f_lower(const DigitSetPtr& ds) { return compute_profile(ds).f_l; }

int k0(int w) { return std::max(19, 2 * w + 5); }

int length_bound_constant_c(double d, const BoundsProfile& profile) {
    // the small epsilon keeps near-integer logs from flooring down, which
    // would understate the bound
    double log_tau = std::log(profile.order.abs_tau());
    return static_cast<int>(std::floor((std::log(d) - std::log(profile.f_l)) / log_tau + 1e-9)) + 1;
}

int expansion_length_bound(double N, double d, const BoundsProfile& profile) {
    if (N <= 0 || d <= 0) throw std::invalid_argument("expansion_length_bound: N, d > 0 required");
    double log_tau = std::log(profile.order.abs_tau());
    return static_cast<int>(std::floor(std::log(N) / log_tau + 1e-9)) +
           length_bound_constant_c(d, profile);
}

}  // namespace taunaf
