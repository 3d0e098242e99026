#pragma once

// Value bounds for fractional NAFs: f_U, nu, f_L, the search procedures for
// the problematic (tau, w) pairs, k_0 and the expansion-length bound J.

#include <optional>

#include "taunaf/naf.hpp"

namespace taunaf {

// nu = 1/2 - |tau| c_V / (|tau|^w - 1); the pair is problematic iff nu <= 0
double compute_nu(const IQOrder& order, int w);

// f_U = |tau|^w c_V / (1 - |tau|^{-w})
double f_upper(const IQOrder& order, int w);

struct UpperSearchResult {
    int ell = -1;
    double scaled_f_u = 0.0;  // |tau|^{-ell} f_U
    double eps = 0.0;         // min over words/edges of (edge distance - radius)
};

// Smallest ell such that every fractional word of right-length <= ell has
// B(value, |tau|^{-ell} f_U) strictly inside tau^{2w-1} int V. Throws
// runtime_error past the cap.
UpperSearchResult upper_search(const DigitSetPtr& ds, int max_ell = 32);

struct LowerSearchResult {
    int ell = -1;
    double scaled_f_u = 0.0;
    double nu_tilde = 0.0;  // min |tau| (|value| - |tau|^{-ell} f_U)
};

// Smallest ell >= 1 such that every fractional word of right-length <= ell
// with nonzero most significant digit satisfies |value| > |tau|^{-ell} f_U.
LowerSearchResult lower_search(const DigitSetPtr& ds, int max_ell = 32);

struct ApproxContainmentResult {
    int k = -1;
    double radius = 0.0;  // 2 |tau|^{-k} f_U
    double eps = 0.0;
    bool valid_below_k = false;  // vertex checks for all ell <= k
};

// Smallest k with B(value(xi), 2 |tau|^{-k} f_U) strictly inside tau^{2w-1} V
// for every word of right-length <= k, plus the per-vertex containment check
// value(xi) + tau^{-ell} V subset of tau^{2w-1} V for all ell <= k.
ApproxContainmentResult approx_containment_search(const DigitSetPtr& ds, int max_k = 40);

struct BoundsProfile {
    IQOrder order;
    int w = 0;
    double f_u = 0.0;
    double nu = 0.0;
    double f_l = 0.0;
    bool problematic = false;
    std::optional<UpperSearchResult> upper;
    std::optional<LowerSearchResult> lower;
};

// Runs the searches when nu <= 0; otherwise f_L = nu.
BoundsProfile compute_profile(const DigitSetPtr& ds);

double f_lower(const DigitSetPtr& ds);

// k_0 = max(19, 2w + 5)
int k0(int w);

// J = floor(log_|tau| N) + c with c = floor(log_|tau| d - log_|tau| f_L) + 1;
// every NAF with value in N*U (U inside the radius-d disc) has at most J+1 digits
int expansion_length_bound(double N, double d, const BoundsProfile& profile);
int length_bound_constant_c(double d, const BoundsProfile& profile);

}  // namespace taunaf
