#include "taunaf/naf.hpp"

#include <cmath>

namespace taunaf {

void NafWord::set(int index, const RingElement& digit) {
    if (digit.is_zero()) {
        support_.erase(index);
        return;
    }
    support_[index] = digit;
}

const RingElement* NafWord::digit_at(int index) const {
    auto it = support_.find(index);
    return it == support_.end() ? nullptr : &it->second;
}

NafWord NafWord::shifted(int delta) const {
    NafWord out(ds_);
    for (const auto& [idx, d] : support_) out.support_.emplace(idx + delta, d);
    return out;
}

bool validate(const NafWord& word) {
    const auto& sup = word.support();
    const DigitSetPtr& ds = word.digit_set();
    if (!ds) return sup.empty();
    int prev = 0;
    bool have_prev = false;
    for (const auto& [idx, d] : sup) {
        if (d.is_zero()) return false;
        std::size_t di;
        try {
            di = ds->index_of(d);
        } catch (const internal_error&) {
            return false;
        }
        if (di == 0) return false;
        if (have_prev && idx - prev < ds->w()) return false;
        prev = idx;
        have_prev = true;
    }
    return true;
}

NafValue value(const NafWord& word) {
    const DigitSetPtr& ds = word.digit_set();
    IQOrder ord = ds ? ds->order() : make_order(1, 2);
    NafValue out{ring_zero(ord), word.right_length()};
    if (word.empty()) return out;

    // Horner from the most significant digit down to index -rlen
    RingElement acc = ring_zero(ord);
    int pos = word.support().rbegin()->first;
    int low = -out.rlen;
    auto it = word.support().rbegin();
    for (; pos >= low; --pos) {
        acc = acc * ring_tau(ord);
        if (it != word.support().rend() && it->first == pos) {
            acc = acc + it->second;
            ++it;
        }
    }
    out.num = acc;
    return out;
}

std::optional<int> naf_metric_exponent(const NafWord& a, const NafWord& b) {
    std::optional<int> top;
    for (const auto& [idx, d] : a.support()) {
        const RingElement* o = b.digit_at(idx);
        if (o == nullptr || !(*o == d))
            if (!top || idx > *top) top = idx;
    }
    for (const auto& [idx, d] : b.support()) {
        const RingElement* o = a.digit_at(idx);
        if (o == nullptr || !(*o == d))
            if (!top || idx > *top) top = idx;
    }
    return top;
}

double naf_metric(const NafWord& a, const NafWord& b) {
    auto k = naf_metric_exponent(a, b);
    if (!k) return 0.0;
    double q = 2.0;
    if (a.digit_set()) q = static_cast<double>(a.digit_set()->order().q);
    else if (b.digit_set()) q = static_cast<double>(b.digit_set()->order().q);
    return std::pow(q, static_cast<double>(*k) / 2.0);
}

int weight(const NafWord& word) { return static_cast<int>(word.support().size()); }

int digit_count(const NafWord& word, const RingElement& digit) {
    int n = 0;
    for (const auto& [idx, d] : word.support())
        if (d == digit) ++n;
    return n;
}

namespace {

// Generous iteration cap: expansions of z have length O(log_|tau| norm(z))
// plus a constant; exceeding this signals a bug rather than slow convergence.
std::size_t expansion_cap(const IQOrder& ord, const RingElement& z) {
    std::size_t bits = 1;
    Integer n = norm(z);
    while (n > 0) {
        n >>= 1;
        ++bits;
    }
    double log2q = std::log2(static_cast<double>(ord.q));
    return 64 + static_cast<std::size_t>(4.0 * static_cast<double>(bits) / log2q);
}

}  // namespace

NafWord expand(const DigitSetPtr& ds, const RingElement& z) {
    if (z.order != ds->order()) throw std::invalid_argument("expand: mismatched order");
    NafWord word(ds);
    RingElement y = z;
    int index = 0;
    const int w = ds->w();
    std::size_t cap = expansion_cap(ds->order(), z);
    std::size_t steps = 0;
    while (!y.is_zero()) {
        if ((steps += 1) > cap)
            throw internal_error("expand: iteration cap exceeded (non-termination?)");
        if (divides_tau(y)) {
            y = div_tau(y);
            ++index;
            continue;
        }
        const RingElement& d = ds->digit_for(y);
        word.set(index, d);
        y = y - d;
        // y - d is divisible by tau^w, so the next w-1 digits are zero
        for (int i = 0; i < w; ++i) y = div_tau(y);
        index += w;
    }
    return word;
}

NafWord approx_expand(const DigitSetPtr& ds, const AlgebraicPoint& pt, int ell) {
    if (ell < 0) throw std::invalid_argument("approx_expand: ell >= 0 required");
    AlgebraicPoint scaled = mul_tau_pow(pt, ell, ds->order());
    LatticeFraction f = frac_ztau(ds->cell(), scaled);
    return expand(ds, f.lattice_part).shifted(-ell);
}

namespace {

void fractional_word_rec(const DigitSetPtr& ds, int ell, int pos, int last_nonzero,
                         const RingElement& acc, std::vector<std::size_t>& digits,
                         const std::function<void(const RingElement&, const std::vector<std::size_t>&)>& fn) {
    if (pos > ell) {
        fn(acc, digits);
        return;
    }
    const IQOrder& ord = ds->order();
    RingElement shifted = acc * ring_tau(ord);
    digits[static_cast<std::size_t>(pos - 1)] = 0;
    fractional_word_rec(ds, ell, pos + 1, last_nonzero, shifted, digits, fn);
    if (last_nonzero == 0 || pos - last_nonzero >= ds->w()) {
        for (std::size_t i = 1; i < ds->digits().size(); ++i) {
            digits[static_cast<std::size_t>(pos - 1)] = i;
            fractional_word_rec(ds, ell, pos + 1, pos, shifted + ds->digits()[i], digits, fn);
        }
    }
}

}  // namespace

void for_each_fractional_word(
    const DigitSetPtr& ds, int ell,
    const std::function<void(const RingElement& num, const std::vector<std::size_t>& digits)>& fn) {
    if (ell < 0) throw std::invalid_argument("for_each_fractional_word: ell >= 0 required");
    std::vector<std::size_t> digits(static_cast<std::size_t>(ell), 0);
    fractional_word_rec(ds, ell, 1, 0, ring_zero(ds->order()), digits, fn);
}

WnadsReport verify_wnads(const DigitSetPtr& ds, std::optional<Rational> radius_sq) {
    const IQOrder& ord = ds->order();
    const int w = ds->w();
    WnadsReport report;
    if (radius_sq) {
        report.radius_sq = *radius_sq;
    } else {
        // (|tau|^{w+1} c_V / (|tau|^w - 1))^2 with a rational upper bound for
        // the denominator: q^{w/2} >= s/10^6 with s = isqrt(q^w * 10^12).
        Integer qw = boost::multiprecision::pow(Integer(ord.q), static_cast<unsigned>(w));
        Integer s = boost::multiprecision::sqrt(qw * Integer("1000000000000"));
        Rational root_lb(s, 1000000);  // <= q^{w/2}
        Rational denom = (root_lb - 1) * (root_lb - 1);
        TAUNAF_ASSERT(denom > 0, "verify_wnads: degenerate radius bound");
        report.radius_sq = Rational(qw * ord.q * 7, 12) / denom;
    }

    for (const auto& z : lattice_points_in_disc(ord, report.radius_sq)) {
        ++report.checked;
        try {
            NafWord word = expand(ds, z);
            if (!(value(word).num == z) || value(word).rlen != 0 || !validate(word))
                report.failures.push_back(z);
        } catch (const internal_error&) {
            report.failures.push_back(z);
        }
    }
    return report;
}

}  // namespace taunaf
