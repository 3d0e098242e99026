#include "taunaf/digitset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace taunaf {

DigitSet::DigitSet(const IQOrder& order, int w)
    : order_(order), w_(w), cell_(order) {
    if (w < 2) throw std::invalid_argument("DigitSet: w >= 2 required");
    double residues = std::pow(static_cast<double>(order.q), w);
    if (residues > (1u << 26))
        throw std::invalid_argument("DigitSet: q^w too large to enumerate");

    digits_.push_back(ring_zero(order_));
    lookup_.emplace(residue_key(digits_[0], w_), 0);

    AlgebraicPoint inv_tau_w = point_pow(embed_inv_tau(order_), static_cast<unsigned>(w_), order_);
    RingElement tau_w = ring_pow(ring_tau(order_), static_cast<unsigned>(w_));

    // Walk the canonical residues sum a_j tau^j with a_0 != 0; for each one,
    // take the fractional part of r / tau^w and pull it back to the lattice.
    const std::int64_t q = order_.q;
    std::vector<std::int64_t> a(static_cast<std::size_t>(w_), 0);
    a[0] = 1;
    std::vector<RingElement> nonzero;
    while (true) {
        RingElement r = ring_zero(order_);
        for (int j = w_ - 1; j >= 0; --j)
            r = r * ring_tau(order_) + RingElement(a[static_cast<std::size_t>(j)], 0, order_);

        LatticeFraction f = frac_ztau(cell_, embed(r) * inv_tau_w);
        RingElement eta = r - tau_w * f.lattice_part;
        TAUNAF_ASSERT(residue_key(eta, w_) == residue_key(r, w_),
                      "DigitSet: representative changed residue class");
        TAUNAF_ASSERT(!divides_tau(eta), "DigitSet: digit divisible by tau");
        nonzero.push_back(eta);

        // next residue with a_0 != 0
        int j = 0;
        for (; j < w_; ++j) {
            if (++a[static_cast<std::size_t>(j)] < q) break;
            a[static_cast<std::size_t>(j)] = (j == 0) ? 1 : 0;
        }
        if (j == w_) break;
    }

    std::sort(nonzero.begin(), nonzero.end(), [](const RingElement& x, const RingElement& y) {
        Integer nx = norm(x), ny = norm(y);
        if (nx != ny) return nx < ny;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    for (auto& eta : nonzero) {
        lookup_.emplace(residue_key(eta, w_), digits_.size());
        digits_.push_back(std::move(eta));
    }

    Integer expected = boost::multiprecision::pow(Integer(q), static_cast<unsigned>(w_ - 1)) * (q - 1) + 1;
    TAUNAF_ASSERT(Integer(digits_.size()) == expected, "DigitSet: wrong cardinality");
}

const RingElement& DigitSet::digit_for(const RingElement& z) const {
    if (z.order != order_) throw std::invalid_argument("digit_for: mismatched order");
    if (divides_tau(z))
        throw std::domain_error("digit_for: element divisible by tau has no nonzero digit");
    auto it = lookup_.find(residue_key(z, w_));
    TAUNAF_ASSERT(it != lookup_.end(), "digit_for: residue class missing from digit set");
    return digits_[it->second];
}

std::size_t DigitSet::index_of(const RingElement& digit) const {
    if (digit.is_zero()) return 0;
    auto it = lookup_.find(residue_key(digit, w_));
    TAUNAF_ASSERT(it != lookup_.end() && digits_[it->second] == digit,
                  "index_of: not a digit of this set");
    return it->second;
}

double DigitSet::max_digit_abs() const {
    double best = 0.0;
    for (std::size_t i = 1; i < digits_.size(); ++i)
        best = std::max(best, std::sqrt(to_double(norm(digits_[i]))));
    return best;
}

}  // namespace taunaf
