#include "taunaf/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <set>
#include <sstream>

namespace taunaf {

CharApprox charset_approx(const DigitSetPtr& ds, const RingElement& eta, int j) {
    if (j < 0) throw std::invalid_argument("charset_approx: j >= 0 required");
    if (eta.is_zero() || ds->index_of(eta) == 0)
        throw std::invalid_argument("charset_approx: eta must be a nonzero digit");
    const IQOrder& ord = ds->order();
    const int w = ds->w();

    CharApprox out;
    out.eta = eta;
    out.j = j;
    out.ds = ds;
    out.cells.scale_j = j + w;

    RingElement eta_tau_j = eta * ring_pow(ring_tau(ord), static_cast<unsigned>(j));
    int tail_len = std::max(0, j - w + 1);
    // The digit at position -w pins positions -1..-(2w-1); the remaining tail
    // of length j-w+1 is a free fractional word whose numerator lands exactly
    // on the exponents 0..j-w.
    for_each_fractional_word(ds, tail_len, [&](const RingElement& num, const std::vector<std::size_t>&) {
        out.cells.centers.push_back(eta_tau_j + num);
    });
    for (const auto& c : out.cells.centers)
        out.center_keys.insert(residue_key(c, j + w));
    TAUNAF_ASSERT(out.center_keys.size() == out.cells.centers.size(),
                  "charset_approx: duplicate centres mod tau^{j+w}");
    return out;
}

Rational beta_coefficient(const DigitSetPtr& ds, int j) {
    const int w = ds->w();
    BlockStats bs(ds->order(), w);
    Rational e = bs.e_w();
    Rational q_pow = 1;
    for (int i = 0; i < j + w; ++i) q_pow *= ds->order().q;
    if (j < w - 1) return Rational(1) / q_pow - e;
    return Rational(bs.count_nafs(j - w + 1)) / q_pow - e;
}

LambdaF lambda_f(const IQOrder& order, int w) {
    // lambda(F) = |tau|^{2(2w-1)} e_w lambda(V) = q^w sqrt(D) / (2((q-1)w+1))
    LambdaF out;
    Integer qw = boost::multiprecision::pow(Integer(order.q), static_cast<unsigned>(w));
    out.coefficient = Rational(qw, 2 * ((order.q - 1) * w + 1));
    out.radicand = order.D;
    out.value = to_double(out.coefficient) * std::sqrt(to_double(out.radicand));
    return out;
}

bool charset_contains(const CharApprox& approx, const AlgebraicPoint& v) {
    const DigitSetPtr& ds = approx.ds;
    const IQOrder& ord = ds->order();
    const int jw = approx.j + ds->w();

    // v is in W_{eta,j} iff some lattice translate of it lies in a cell of the
    // approximation: y - c - tau^{jw} u in V for a centre c. Writing
    // y = m + r with r = frac(y), the difference d = m - c - tau^{jw} u is a
    // lattice point with |d| <= 2 |tau| c_V, so only a small ball of
    // candidates has to be tried.
    AlgebraicPoint y = mul_tau_pow(v, jw, ord);
    LatticeFraction f = frac_ztau(ds->cell(), y);
    for (const auto& d : lattice_points_in_disc(ord, Rational(7 * ord.q, 3))) {
        if (approx.center_keys.count(residue_key(f.lattice_part - d, jw)) == 0) continue;
        if (ds->cell().contains(f.fractional_part + embed(d))) return true;
    }
    return false;
}

namespace {

std::complex<double> to_complex(const AlgebraicPoint& pt) { return {pt.re(), pt.im()}; }

const char* kPalette[4] = {"#d8d8d8", "#7aa6c2", "#c27a7a", "#5b5ea6"};

}  // namespace

std::string render_svg(const DigitSetPtr& ds, int ell, RenderMode mode, Integer* cell_count) {
    const IQOrder& ord = ds->order();
    const int w = ds->w();
    BlockStats bs(ord, w);
    Integer count = bs.count_nafs(ell);
    if (count > 1000000) throw std::invalid_argument("render_svg: cell count above 10^6");
    if (cell_count) *cell_count = count;

    std::complex<double> tau(ord.re_tau(), ord.im_tau());
    std::complex<double> inv_tau = 1.0 / tau;
    std::complex<double> inv_tau_ell = std::pow(inv_tau, ell);
    std::vector<std::complex<double>> cell_verts;
    for (const auto& v : ds->cell().vertices()) cell_verts.push_back(to_complex(v) * inv_tau_ell);
    std::vector<std::complex<double>> digit_vals;
    for (const auto& d : ds->digits()) digit_vals.push_back(to_complex(embed(d)));

    struct Poly {
        std::complex<double> center;
        int color;
    };
    std::vector<Poly> polys;
    for_each_fractional_word(ds, ell, [&](const RingElement&, const std::vector<std::size_t>& digits) {
        std::complex<double> val(0.0, 0.0);
        std::complex<double> scale = inv_tau;
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (digits[i] != 0) val += digit_vals[digits[i]] * scale;
            scale *= inv_tau;
        }
        int color = 0;
        if (mode == RenderMode::Digits) {
            bool first = !digits.empty() && digits[0] != 0;
            bool wth = digits.size() >= static_cast<std::size_t>(w) &&
                       digits[static_cast<std::size_t>(w - 1)] != 0;
            color = (first ? 1 : 0) + (wth ? 2 : 0);
        }
        polys.push_back(Poly{val, color});
    });
    TAUNAF_ASSERT(Integer(polys.size()) == count, "render_svg: cell count mismatch");

    double lo_x = 1e30, hi_x = -1e30, lo_y = 1e30, hi_y = -1e30;
    for (const auto& p : polys) {
        for (const auto& cv : cell_verts) {
            lo_x = std::min(lo_x, p.center.real() + cv.real());
            hi_x = std::max(hi_x, p.center.real() + cv.real());
            lo_y = std::min(lo_y, p.center.imag() + cv.imag());
            hi_y = std::max(hi_y, p.center.imag() + cv.imag());
        }
    }
    double pad = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y);
    lo_x -= pad, hi_x += pad, lo_y -= pad, hi_y += pad;
    const double s = 800.0 / std::max(hi_x - lo_x, hi_y - lo_y);

    std::ostringstream svg;
    svg.setf(std::ios::fixed);
    svg.precision(3);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (hi_x - lo_x) * s
        << "\" height=\"" << (hi_y - lo_y) * s << "\">\n";
    for (const auto& p : polys) {
        svg << "<polygon points=\"";
        for (std::size_t i = 0; i < cell_verts.size(); ++i) {
            double px = (p.center.real() + cell_verts[i].real() - lo_x) * s;
            double py = (hi_y - (p.center.imag() + cell_verts[i].imag())) * s;
            if (i) svg << ' ';
            svg << px << ',' << py;
        }
        svg << "\" fill=\"" << kPalette[p.color] << "\" stroke=\"#404040\" stroke-width=\"0.3\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void render_svg_file(const std::string& path, const DigitSetPtr& ds, int ell, RenderMode mode) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("render_svg_file: cannot open " + path);
    out << render_svg(ds, ell, mode);
    if (!out) throw std::runtime_error("render_svg_file: write failed for " + path);
}

IfsReport ifs_check(const DigitSetPtr& ds, int ell) {
    if (ell < 1) throw std::invalid_argument("ifs_check: ell >= 1 required");
    const IQOrder& ord = ds->order();
    const int w = ds->w();
    using Key = std::pair<Integer, Integer>;

    auto level_set = [&](int lv) {
        std::set<Key> s;
        for_each_fractional_word(ds, lv, [&](const RingElement& num, const std::vector<std::size_t>&) {
            s.emplace(num.a, num.b);
        });
        return s;
    };

    std::set<Key> target = level_set(ell);
    std::set<Key> prev = level_set(ell - 1);
    std::set<Key> tail = (ell - w >= 0) ? level_set(ell - w) : std::set<Key>{{Integer(0), Integer(0)}};

    IfsReport rep;
    rep.ratio_zero = 1.0 / ord.abs_tau();
    rep.ratio_nonzero = std::pow(static_cast<double>(ord.q), -static_cast<double>(w) / 2.0);

    // f_0 image: same numerator one scale up; f_theta image: theta tau^{ell-1} + tail
    std::vector<std::set<Key>> images;
    images.push_back(prev);
    RingElement tau_l1 = ring_pow(ring_tau(ord), static_cast<unsigned>(ell - 1));
    for (std::size_t i = 1; i < ds->digits().size(); ++i) {
        std::set<Key> img;
        RingElement shift = ds->digits()[i] * tau_l1;
        for (const auto& [a, b] : tail) {
            RingElement n = shift + RingElement(a, b, ord);
            img.emplace(n.a, n.b);
        }
        images.push_back(std::move(img));
    }

    rep.images_disjoint = true;
    std::set<Key> uni;
    for (const auto& img : images) {
        for (const auto& k : img) {
            if (!uni.insert(k).second) rep.images_disjoint = false;
        }
    }
    rep.union_matches = (uni == target);
    return rep;
}

namespace {

// Outer approximation of membership x in F at a given resolution: every word
// prefix carries a tau^{2w-1}V uncertainty blob. False means definitely not
// in F; true means in F or within the resolution blob of it.
bool outer_member(const DigitSetPtr& ds, const AlgebraicPoint& x, int level, double prune_sq) {
    const IQOrder& ord = ds->order();
    const int w = ds->w();
    if (abs_sq(x).value() > prune_sq) return false;
    if (level <= 0)
        return ds->cell().contains(mul_tau_pow(x, -(2 * w - 1), ord));
    if (outer_member(ds, x * embed_tau(ord), level - 1, prune_sq)) return true;
    AlgebraicPoint x_w = mul_tau_pow(x, w, ord);
    for (std::size_t i = 1; i < ds->digits().size(); ++i) {
        AlgebraicPoint shifted = x_w - mul_tau_pow(embed(ds->digits()[i]), w - 1, ord);
        if (outer_member(ds, shifted, std::max(0, level - w), prune_sq)) return true;
    }
    return false;
}

}  // namespace

TilingReport tiling_check(const DigitSetPtr& ds, int big_k, const Region& window,
                          std::size_t samples, int resolution, Rng& rng) {
    const IQOrder& ord = ds->order();
    const int w = ds->w();
    double fu = f_upper(ord, w);
    double prune = fu + std::pow(static_cast<double>(ord.q), w) * std::sqrt(7.0 / 12.0);
    double prune_sq = prune * prune * (1.0 + 1e-9);

    TilingReport rep;
    for (int k = big_k; k < big_k + w; ++k) rep.tile_scales.push_back(k - w + 1);

    double cx, cy, wr;
    window.enclosing_circle(cx, cy, wr);
    const std::int64_t denom = 1 << 16;

    double imt = ord.im_tau();
    double ret = ord.re_tau();
    double tile_rad = std::pow(static_cast<double>(ord.q), (1.0 - w) / 2.0) * fu;

    while (rep.samples < samples) {
        Rational zx = Rational(static_cast<std::int64_t>((cx - wr + 2 * wr * rng.unit()) * denom), denom);
        Rational zy_coef = Rational(static_cast<std::int64_t>((cy - wr + 2 * wr * rng.unit()) * denom), denom);
        AlgebraicPoint z(QSqrtD(zx, 0, ord.D), QSqrtD(zy_coef, 0, ord.D));
        if (!window.contains(z)) continue;
        ++rep.samples;

        int hits = 0;
        for (int k = big_k; k < big_k + w; ++k) {
            AlgebraicPoint x0 = mul_tau_pow(z, -k, ord);
            // anchors n with |x0 - n| <= |tau|^{1-w} f_U
            QSqrtD beta(2 * x0.y.v, 2 * x0.y.u / ord.D, ord.D);
            QSqrtD alpha = x0.x - Rational(ord.p, 2) * beta;
            Integer a0 = round_int(alpha);
            Integer b0 = round_int(beta);
            double reach = (1.0 + ord.abs_tau()) / 2.0 + tile_rad;
            int b_span = static_cast<int>(std::floor(reach / imt)) + 1;
            for (int db = -b_span; db <= b_span; ++db) {
                double shift = static_cast<double>(db) * ret;
                int a_lo = static_cast<int>(std::ceil(-reach - shift)) - 1;
                int a_hi = static_cast<int>(std::floor(reach - shift)) + 1;
                for (int da = a_lo; da <= a_hi; ++da) {
                    RingElement n(a0 + da, b0 + db, ord);
                    if (k != big_k + w - 1 && divides_tau(n)) continue;  // xi_0 != 0 rule
                    AlgebraicPoint x = mul_tau_pow(x0 - embed(n), w - 1, ord);
                    if (outer_member(ds, x, resolution, prune_sq)) ++hits;
                }
            }
        }
        if (hits >= 1) ++rep.covered;
        if (hits == 1) ++rep.unique_hit;
        if (hits >= 2) ++rep.boundary_flagged;
    }
    return rep;
}

std::vector<Integer> boundary_word_counts(const DigitSetPtr& ds, int jmax) {
    const int w = ds->w();
    const int k = k0(w) + w - 1;
    BlockStats bs(ds->order(), w);
    const Integer& M = bs.num_nonzero_digits();

    // numerator (1 + Z + ... + Z^{k-1}) (1 + (M-1) Z - M Z^w)
    std::vector<Integer> run(static_cast<std::size_t>(k), Integer(1));
    std::vector<Integer> head(static_cast<std::size_t>(w) + 1, Integer(0));
    head[0] = 1;
    head[1] = M - 1;
    head[static_cast<std::size_t>(w)] = -M;
    std::vector<Integer> num(run.size() + head.size() - 1, Integer(0));
    for (std::size_t i = 0; i < run.size(); ++i)
        for (std::size_t l = 0; l < head.size(); ++l) num[i + l] += run[i] * head[l];

    std::vector<Integer> den(static_cast<std::size_t>(k) + 2, Integer(0));
    den[0] = 1;
    den[1] = -1;
    den[static_cast<std::size_t>(w)] += -M;
    den[static_cast<std::size_t>(k) + 1] += M;

    return series_coefficients(num, den, jmax);
}

DimensionResult dim_upper_bound(const DigitSetPtr& ds) {
    const IQOrder& ord = ds->order();
    const int w = ds->w();
    DimensionResult res;
    res.k = k0(w) + w - 1;
    const int k = res.k;
    BlockStats bs(ord, w);
    double M = to_double(bs.num_nonzero_digits());

    // strongly connected core of the zero-run automaton: states B, Z_1..Z_{k-1}
    // with B->Z_1, Z_r->Z_{r+1}, and Z_r->B carrying multiplicity M for
    // r >= w-1
    const int n = k;
    res.states = n + (w - 1);  // including the transient prefix states
    std::vector<std::vector<double>> A(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    // index 0 = B, index r = Z_r
    A[0][1] = 1.0;
    for (int r = 1; r < k - 1; ++r) A[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + 1)] = 1.0;
    for (int r = w - 1; r <= k - 1; ++r) A[static_cast<std::size_t>(r)][0] = M;

    std::vector<double> v(static_cast<std::size_t>(n), 1.0);
    double lambda = 0.0;
    int iters = 0;
    for (; iters < 100000; ++iters) {
        std::vector<double> next(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l)
                next[static_cast<std::size_t>(l)] +=
                    v[static_cast<std::size_t>(i)] * A[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
        double nrm = 0.0;
        for (double x : next) nrm += x * x;
        nrm = std::sqrt(nrm);
        TAUNAF_ASSERT(nrm > 0, "dim_upper_bound: power iteration collapsed");
        for (double& x : next) x /= nrm;
        if (std::abs(nrm - lambda) < 1e-12 * std::max(1.0, nrm)) {
            lambda = nrm;
            v = std::move(next);
            break;
        }
        lambda = nrm;
        v = std::move(next);
    }
    if (iters >= 100000) throw std::runtime_error("dim_upper_bound: power iteration did not converge");

    res.eigenvalue = lambda;
    res.has_w_and_w1_cycles = (w - 1 >= 1 && w - 1 <= k - 1) && (w <= k - 1);

    // exact sign test: q(1/|tau|^2) = 1 - 1/q - M q^{-w} + M q^{-(k+1)} must
    // equal (q-1) q^{w-k-2} and be positive
    Rational qq(ord.q);
    Rational val = 1 - 1 / qq;
    Rational qw = 1, qk1 = 1;
    for (int i = 0; i < w; ++i) qw *= qq;
    for (int i = 0; i < k + 1; ++i) qk1 *= qq;
    val -= Rational(bs.num_nonzero_digits()) / qw;
    val += Rational(bs.num_nonzero_digits()) / qk1;
    Rational expect = (qq - 1);
    for (int i = 0; i < k + 2 - w; ++i) expect /= qq;
    res.sign_check = (val == expect) && (val > 0);

    // growth of |U_j| from the series, smoothed over 100 steps
    std::vector<Integer> u = boundary_word_counts(ds, 600);
    Rational ratio = Rational(u[600]) / Rational(u[500]);
    res.growth_rate = std::pow(to_double(ratio), 1.0 / 100.0);

    // The gap 1 - sigma can be ~ q^{-k}, far below what the power iteration
    // resolves; bisect the dominant denominator root with exact rationals.
    const Integer& m_int = bs.num_nonzero_digits();
    auto den_eval = [&](const Rational& z) {
        // 1 - Z - M Z^w + M Z^{k+1}
        Rational acc = 0;
        for (int i = k + 1; i >= 0; --i) {
            acc *= z;
            if (i == 0) acc += 1;
            else if (i == 1) acc -= 1;
            if (i == w) acc -= Rational(m_int);
            if (i == k + 1) acc += Rational(m_int);
        }
        return acc;
    };
    Rational lo(1, ord.q);  // den_eval(lo) > 0 by the sign check
    Rational hi;
    bool bracketed = false;
    for (int j = 220; j >= 1 && !bracketed; --j) {
        Rational c = lo + lo / Rational(boost::multiprecision::pow(Integer(2), static_cast<unsigned>(j)));
        Rational v = den_eval(c);
        if (v < 0) {
            hi = c;
            bracketed = true;
        } else if (v == 0) {
            lo = hi = c;
            bracketed = true;
        }
    }
    TAUNAF_ASSERT(bracketed, "dim_upper_bound: failed to bracket the dominant root");
    for (int it = 0; it < 90 && lo != hi; ++it) {
        Rational mid = (lo + hi) / 2;
        Rational v = den_eval(mid);
        if (v > 0) lo = mid;
        else if (v < 0) hi = mid;
        else {
            lo = hi = mid;
        }
    }
    Rational root = (lo + hi) / 2;
    Rational gap = (Rational(ord.q) * root - 1) / (Rational(ord.q) * root);  // 1 - sigma
    res.one_minus_sigma = to_double(gap);
    res.sigma = 1.0 - res.one_minus_sigma;
    res.dim_bound = 2.0 + 2.0 * std::log1p(-res.one_minus_sigma) /
                              std::log(static_cast<double>(ord.q));
    TAUNAF_ASSERT(std::abs(1.0 / to_double(root) - res.eigenvalue) < 1e-6 * res.eigenvalue,
                  "dim_upper_bound: bisection and power iteration disagree");
    return res;
}

}  // namespace taunaf
