#pragma once

// Width-w tau-adic non-adjacent forms: the sparse word type, validation,
// exact evaluation, the expansion algorithm and the existence verification.

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "taunaf/digitset.hpp"

namespace taunaf {

// Sparse word: index -> nonzero digit. Index 0 sits immediately left of the
// tau-point; negative indices are fractional digits.
class NafWord {
public:
    NafWord() = default;
    explicit NafWord(DigitSetPtr ds) : ds_(std::move(ds)) {}

    const DigitSetPtr& digit_set() const { return ds_; }
    const std::map<int, RingElement>& support() const { return support_; }

    bool empty() const { return support_.empty(); }
    int left_length() const { return support_.empty() ? 0 : std::max(0, support_.rbegin()->first + 1); }
    int right_length() const { return support_.empty() ? 0 : std::max(0, -support_.begin()->first); }

    void set(int index, const RingElement& digit);
    const RingElement* digit_at(int index) const;  // nullptr for zero positions

    // word with all indices shifted by delta (multiplication by tau^delta)
    NafWord shifted(int delta) const;

    bool operator==(const NafWord& o) const { return support_ == o.support_; }

private:
    DigitSetPtr ds_;
    std::map<int, RingElement> support_;
};

// Exact value of a finite word: num / tau^rlen.
struct NafValue {
    RingElement num;
    int rlen = 0;

    AlgebraicPoint point() const {
        return mul_tau_pow(embed(num), -rlen, num.order);
    }
    // |value|^2, exact
    Rational abs_sq() const {
        Rational n(norm(num));
        for (int i = 0; i < rlen; ++i) n /= num.order.q;
        return n;
    }
};

// NAF condition + digit membership.
bool validate(const NafWord& word);

NafValue value(const NafWord& word);

// d(a, b) = |tau|^(largest differing index), 0 if equal
double naf_metric(const NafWord& a, const NafWord& b);
// largest differing index if the words differ
std::optional<int> naf_metric_exponent(const NafWord& a, const NafWord& b);

int weight(const NafWord& word);
int digit_count(const NafWord& word, const RingElement& digit);

// Algorithm: while y != 0 emit 0 if tau | y, else the digit of y's class,
// then divide by tau. Terminates for every z; the cap
// converts a hypothetical bug into a diagnosable error instead of a hang.
NafWord expand(const DigitSetPtr& ds, const RingElement& z);

// expansion of round(tau^ell * pt) shifted down by ell;
// |value(word) - pt| <= |tau|^(1-ell) * c_V
NafWord approx_expand(const DigitSetPtr& ds, const AlgebraicPoint& pt, int ell);

struct WnadsReport {
    Rational radius_sq;                 // norm bound actually enumerated
    std::size_t checked = 0;
    std::vector<RingElement> failures;  // elements without a terminating expansion
    bool ok() const { return failures.empty(); }
};

// Runs the expansion on every z with norm(z) <= radius_sq (default: the
// finitely-many-elements bound |tau|^(w+1) c_V / (|tau|^w - 1), squared, as an
// exact rational upper bound) and reports any failures.
WnadsReport verify_wnads(const DigitSetPtr& ds,
                         std::optional<Rational> radius_sq = std::nullopt);

// Visits every fractional word with indices in {-1, ..., -ell} (i.e. every
// element of the set of NAFs with right-length <= ell). The callback gets
// num = value * tau^ell (an element of Z[tau]) and the digit-set indices per
// position: digits[i] is the index of the digit at position -(i+1), with 0
// meaning the zero digit.
void for_each_fractional_word(
    const DigitSetPtr& ds, int ell,
    const std::function<void(const RingElement& num, const std::vector<std::size_t>& digits)>& fn);

}  // namespace taunaf
