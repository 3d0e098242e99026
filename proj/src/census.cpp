#include "taunaf/census.hpp"

#include <atomic>
#include <cmath>

#include "taunaf/blockstats.hpp"
#include "taunaf/fractal.hpp"
#include "taunaf/util.hpp"

namespace taunaf {

CensusResult count_digits(const DigitSetPtr& ds, const Region& u, const Rational& n,
                          unsigned threads) {
    if (n <= 0) throw std::invalid_argument("count_digits: N > 0 required");
    const IQOrder& ord = ds->order();

    CensusResult res;
    res.n = n;
    CellSet cover = cover_cells(ds->cell(), u.scaled(n), 0);
    res.lattice_points = cover.centers.size();

    const std::size_t nd = ds->size();
    struct Local {
        std::vector<Integer> counts;
        Integer weight{0};
        int max_idx = -1;
    };
    unsigned nthreads = threads ? threads : std::thread::hardware_concurrency();
    if (nthreads == 0) nthreads = 1;
    std::vector<Local> locals(nthreads);
    for (auto& l : locals) l.counts.assign(nd, Integer(0));

    std::atomic<unsigned> next_slot{0};
    parallel_for(cover.centers.size(), nthreads, [&](std::size_t b, std::size_t e) {
        unsigned slot = next_slot.fetch_add(1);
        Local& l = locals[slot];
        for (std::size_t i = b; i < e; ++i) {
            NafWord word = expand(ds, cover.centers[i]);
            for (const auto& [idx, d] : word.support()) {
                l.counts[ds->index_of(d)] += 1;
                l.max_idx = std::max(l.max_idx, idx);
                l.weight += 1;
            }
        }
    });

    res.digit_counts.assign(nd, Integer(0));
    res.total_weight = 0;
    for (const auto& l : locals) {
        for (std::size_t i = 0; i < nd; ++i) res.digit_counts[i] += l.counts[i];
        res.total_weight += l.weight;
        res.max_support_index = std::max(res.max_support_index, l.max_idx);
    }

    BlockStats bs(ord, ds->w());
    double nd_val = to_double(n);
    double log_n = 2.0 * std::log(nd_val) / std::log(static_cast<double>(ord.q));
    res.main_term = to_double(bs.e_w()) * nd_val * nd_val * u.lambda() * log_n;
    res.psi_hat.assign(nd, 0.0);
    for (std::size_t i = 1; i < nd; ++i)
        res.psi_hat[i] = (to_double(res.digit_counts[i]) - res.main_term) / (nd_val * nd_val);
    return res;
}

double psi_m(double lambda_u, int c, const Rational& e_w, double x) {
    double frac = x - std::floor(x);
    return lambda_u * (static_cast<double>(c) + 1.0 - frac) * to_double(e_w);
}

PsiQResult psi_q(const DigitSetPtr& ds, double lambda_u, double tol) {
    if (tol <= 0) throw std::invalid_argument("psi_q: tol > 0 required");
    const IQOrder& ord = ds->order();
    BlockStats bs(ord, ds->w());
    double rho = to_double(bs.rho());
    double lam_v = ds->cell().area().value();

    PsiQResult out;
    double sum = 0.0;
    double k_max = 0.0;  // running bound on |beta_j| / rho^j
    double rho_pow = 1.0;
    for (int j = 0; j < 100000; ++j) {
        double term = to_double(beta_coefficient(ds, j));
        sum += term;
        k_max = std::max(k_max, std::abs(term) / rho_pow);
        rho_pow *= rho;
        double tail = k_max * rho_pow / (1.0 - rho);
        out.terms = j + 1;
        if (j >= ds->w() && tail < tol) break;
    }
    out.value = (lambda_u / lam_v) * sum;
    return out;
}

std::vector<ScanRow> fluctuation_scan(const DigitSetPtr& ds, const Region& u, double base,
                                      int octaves, const std::vector<double>& phases,
                                      double max_n, std::size_t digit_index, unsigned threads) {
    const double abs_tau = ds->order().abs_tau();
    std::vector<ScanRow> rows;
    const std::int64_t denom = 1 << 20;
    for (int m = 0; m <= octaves; ++m) {
        for (double f : phases) {
            double n_real = base * std::pow(abs_tau, static_cast<double>(m) + f);
            if (n_real > max_n * (1.0 + 1e-12)) continue;
            Rational n_rat(static_cast<std::int64_t>(std::llround(n_real * denom)), denom);
            CensusResult cr = count_digits(ds, u, n_rat, threads);
            rows.push_back(ScanRow{m, f, to_double(n_rat), cr.psi_hat[digit_index]});
        }
    }
    return rows;
}

}  // namespace taunaf
