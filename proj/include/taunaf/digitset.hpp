#pragma once

// Minimal-norm-representatives digit set modulo tau^w and residue -> digit
// lookup. A nonzero element eta is the digit of its residue class iff
// eta / tau^w lies in the restricted Voronoi cell.

#include <memory>
#include <unordered_map>
#include <vector>

#include "taunaf/geometry.hpp"
#include "taunaf/ring.hpp"

namespace taunaf {

class DigitSet {
public:
    DigitSet(const IQOrder& order, int w);

    const IQOrder& order() const { return order_; }
    int w() const { return w_; }
    const VoronoiCell& cell() const { return cell_; }

    // all digits, zero first, the rest sorted by (norm, a, b)
    const std::vector<RingElement>& digits() const { return digits_; }
    std::size_t size() const { return digits_.size(); }

    // The unique nonzero digit congruent to z mod tau^w. Throws domain_error
    // when tau | z (that class has no nonzero digit).
    const RingElement& digit_for(const RingElement& z) const;

    // index into digits() for a nonzero digit; 0 is at index 0
    std::size_t index_of(const RingElement& digit) const;

    double max_digit_abs() const;  // max |eta| over nonzero digits

    // Some restricted-cell conventions are known to misbehave for p=0, q=2;
    // the shipped canonical one is fine, but callers may want to warn.
    bool boundary_convention_warning() const { return order_.p == 0 && order_.q == 2; }

private:
    IQOrder order_;
    int w_;
    VoronoiCell cell_;
    std::vector<RingElement> digits_;
    std::unordered_map<std::string, std::size_t> lookup_;  // residue key -> digit index
};

using DigitSetPtr = std::shared_ptr<const DigitSet>;

inline DigitSetPtr build_digit_set(const IQOrder& order, int w) {
    return std::make_shared<DigitSet>(order, w);
}

}  // namespace taunaf
