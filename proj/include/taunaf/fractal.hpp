#pragma once

// Fundamental-domain machinery: characteristic-set approximations W_{eta,j},
// the area gaps beta_{eta,j}, lambda(F), tiling and IFS checks, an SVG
// renderer and the Hausdorff-dimension upper bound for the boundary.

#include <string>
#include <unordered_set>

#include "taunaf/blockstats.hpp"
#include "taunaf/bounds.hpp"
#include "taunaf/cells.hpp"
#include "taunaf/naf.hpp"
#include "taunaf/util.hpp"

namespace taunaf {

// j-th approximation of the characteristic set for a nonzero digit eta:
// cells at scale j+w whose centres are tau^{j+w} * value(xi) over words xi
// with right-length <= j+w and xi_{-w} = eta.
struct CharApprox {
    RingElement eta;
    int j = 0;
    DigitSetPtr ds;
    CellSet cells;  // scale j + w
    std::unordered_set<std::string> center_keys;  // residue keys mod tau^{j+w}
};

CharApprox charset_approx(const DigitSetPtr& ds, const RingElement& eta, int j);

// area gap between the j-th approximation and the limit set, as an exact
// rational multiple of lambda(V)
Rational beta_coefficient(const DigitSetPtr& ds, int j);

struct LambdaF {
    Rational coefficient;  // lambda(F) = coefficient * sqrt(radicand)
    Integer radicand;      // q * D
    double value = 0.0;
};

// lambda(F) = |tau| |Im tau| / ((|tau|^2 - 1) w + 1)
LambdaF lambda_f(const IQOrder& order, int w);

// membership of a fractional-part point v (in the closed cell V) in W_{eta,j},
// up to lattice translation
bool charset_contains(const CharApprox& approx, const AlgebraicPoint& v);

enum class RenderMode { Plain, Digits };

// SVG with one cell value(xi) + tau^{-ell} V per word of right-length <= ell;
// Digits mode colours cells by whether the digits at positions -1 and -w are
// zero or not. Returns the document; cell_count receives C_ell.
std::string render_svg(const DigitSetPtr& ds, int ell, RenderMode mode, Integer* cell_count = nullptr);
void render_svg_file(const std::string& path, const DigitSetPtr& ds, int ell, RenderMode mode);

struct IfsReport {
    bool union_matches = false;    // level-ell set equals union of mapped level-(ell-1)/(ell-w) sets
    bool images_disjoint = false;  // images of distinct maps share no cell
    double ratio_zero = 0.0;       // contraction ratio of f_0 = z/tau
    double ratio_nonzero = 0.0;    // contraction ratio of f_theta
    bool ok() const { return union_matches && images_disjoint; }
};

IfsReport ifs_check(const DigitSetPtr& ds, int ell);

struct TilingReport {
    std::size_t samples = 0;
    std::size_t covered = 0;    // points hitting >= 1 tile (outer test)
    std::size_t unique_hit = 0; // points hitting exactly 1 tile
    std::size_t boundary_flagged = 0;
    std::vector<int> tile_scales;  // k - w + 1 for k in {K..K+w-1}
    bool all_covered() const { return covered == samples; }
};

// Checks the tiling of the window by tau^k value(xi) + tau^{k-w+1} F at
// resolution ell, flagging boundary-uncertain points (>= 2 candidate tiles).
TilingReport tiling_check(const DigitSetPtr& ds, int big_k, const Region& window,
                          std::size_t samples, int resolution, Rng& rng);

struct DimensionResult {
    double sigma = 0.0;            // dominant eigenvalue / |tau|^2
    double one_minus_sigma = 0.0;  // 1 - sigma from exact-rational bisection;
                                   // can sit far below double resolution of sigma
    double dim_bound = 0.0;        // 2 + log_|tau| sigma, computed from the gap
    double eigenvalue = 0.0;       // dominant eigenvalue of the zero-run automaton
    int states = 0;
    int k = 0;                     // k_0 + w - 1
    bool sign_check = false;       // exact: q(1/|tau|^2) = (q-1) q^{w-k-2} > 0
    double growth_rate = 0.0;      // fitted growth of |U_j| from the series
    bool has_w_and_w1_cycles = false;
};

DimensionResult dim_upper_bound(const DigitSetPtr& ds);

// |U_j| for j = 0..jmax from the generating function of the no-long-zero-run
// words (independent of the automaton route)
std::vector<Integer> boundary_word_counts(const DigitSetPtr& ds, int jmax);

}  // namespace taunaf
