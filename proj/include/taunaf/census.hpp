#pragma once

// Exact digit counting over lattice points of a scaled region, the computable
// psi components and the periodic-fluctuation scan.

#include "taunaf/bounds.hpp"
#include "taunaf/cells.hpp"
#include "taunaf/naf.hpp"

namespace taunaf {

struct CensusResult {
    Rational n;  // the scale factor N
    std::size_t lattice_points = 0;
    std::vector<Integer> digit_counts;  // per digit-set index; index 0 unused
    Integer total_weight;               // sum of Hamming weights = sum of digit_counts
    double main_term = 0.0;             // e_w N^2 lambda(U) log_|tau| N, per digit
    std::vector<double> psi_hat;        // (Z_eta - main_term) / N^2
    int max_support_index = -1;
};

// Brute-force census: expands every lattice point of N*U and tallies digit
// occurrences. Ground truth; no sampling.
CensusResult count_digits(const DigitSetPtr& ds, const Region& u, const Rational& n,
                          unsigned threads = 0);

// psi_M(x) = lambda(U) (c + 1 - {x}) e_w
double psi_m(double lambda_u, int c, const Rational& e_w, double x);

struct PsiQResult {
    double value = 0.0;
    int terms = 0;
};

// psi_Q = (lambda(U)/lambda(V)) sum_j beta_j / lambda(V), truncated when the
// geometric tail bound drops below tol
PsiQResult psi_q(const DigitSetPtr& ds, double lambda_u, double tol);

struct ScanRow {
    int octave = 0;
    double phase = 0.0;
    double n = 0.0;
    double psi_hat = 0.0;
};

// Samples psi_hat for one fixed digit at N = base * |tau|^(m+f), m in
// 0..octaves, f in phases, skipping N > max_n. N is snapped to a rational
// with denominator 2^20 so the census stays exact.
std::vector<ScanRow> fluctuation_scan(const DigitSetPtr& ds, const Region& u, double base,
                                      int octaves, const std::vector<double>& phases,
                                      double max_n, std::size_t digit_index,
                                      unsigned threads = 0);

}  // namespace taunaf
