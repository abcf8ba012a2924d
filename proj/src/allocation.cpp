#include "gdamf/allocation.hpp"

#include "gdamf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gdamf {

Matrix sample_probes(const DomainSequence& seq, std::size_t n_probes, std::uint64_t seed) {
    if (n_probes < 2) throw std::invalid_argument("need at least two probes");
    const std::size_t d = seq.feature_dim();
    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    auto scan = [&](const Matrix& m) {
        for (std::size_t i = 0; i < m.rows; ++i) {
            const double* r = m.row(i);
            for (std::size_t j = 0; j < d; ++j) {
                lo[j] = std::min(lo[j], r[j]);
                hi[j] = std::max(hi[j], r[j]);
            }
        }
    };
    scan(seq.source().features);
    for (int j = 1; j <= seq.k(); ++j) {
        scan(seq.stage(j).pool.features());
        scan(seq.stage(j).labeled.features);
    }

    Rng rng(mix_seed(seed, 0x70726f6265));
    Matrix probes(n_probes, d);
    for (std::size_t i = 0; i < n_probes; ++i)
        for (std::size_t j = 0; j < d; ++j)
            probes(i, j) = lo[j] == hi[j] ? lo[j] : rng.uniform(lo[j], hi[j]);
    return probes;
}

namespace {

// Pearson correlation of two equal-length series; 0 when either side has zero
// variance or the value is not finite.
double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va <= 0.0 || vb <= 0.0) return 0.0;
    const double rho = cov / std::sqrt(va * vb);
    return std::isfinite(rho) ? rho : 0.0;
}

}  // namespace

FidelityEstimate estimate_correlations(const std::vector<Classifier>& models,
                                       const Matrix& probes) {
    if (models.empty()) throw std::invalid_argument("no models");
    if (probes.rows < 2) throw std::invalid_argument("need at least two probes");
    for (const Classifier& m : models)
        if (!(m.arch == models.front().arch))
            throw std::invalid_argument("models must share one architecture");

    FidelityEstimate fid;
    fid.probe_count = probes.rows;
    const std::size_t k = models.size();
    if (k == 1) return fid;  // target only: no intermediate fidelities

    const Matrix target_out = predict_proba_batch(models.back(), probes);
    const std::vector<double> tgt(target_out.data.begin(), target_out.data.end());
    fid.rho_raw.reserve(k - 1);
    for (std::size_t s = 0; s + 1 < k; ++s) {
        const Matrix out = predict_proba_batch(models[s], probes);
        const std::vector<double> flat(out.data.begin(), out.data.end());
        const double rho = std::clamp(pearson(flat, tgt), 0.0, 1.0);
        fid.rho_raw.push_back(rho);
    }
    fid.rho = fid.rho_raw;
    for (std::size_t s = 1; s < fid.rho.size(); ++s)
        fid.rho[s] = std::max(fid.rho[s], fid.rho[s - 1]);
    return fid;
}

std::vector<double> compute_ratios(const FidelityEstimate& fid,
                                   const std::vector<double>& costs) {
    const std::size_t k = costs.size();
    if (k == 0) throw std::invalid_argument("empty cost vector");
    if (fid.rho.size() + 1 != k)
        throw std::invalid_argument("rho length must be K-1");
    double prev_cost = 0.0;
    for (double c : costs) {
        if (!(c > prev_cost))
            throw std::invalid_argument("costs must be strictly increasing and positive");
        prev_cost = c;
    }
    double prev = 0.0;
    for (double rho : fid.rho) {
        if (rho < prev - 1e-12 || rho < 0.0 || rho > 1.0)
            throw std::invalid_argument("rho must be nondecreasing in [0,1]");
        prev = rho;
    }

    std::vector<double> r(k, 0.0);
    r[k - 1] = 1.0;
    if (k == 1) return r;

    const double rho_last = fid.rho.back();
    double denom_base = 1.0 - rho_last * rho_last;
    if (denom_base < 1e-9) denom_base = 1e-9;
    const double ck = costs.back();
    double prev_rho = 0.0;
    for (std::size_t s = 0; s + 1 < k; ++s) {
        const double rho = fid.rho[s];
        double num = rho * rho - prev_rho * prev_rho;
        if (num < 0.0) num = 0.0;  // guard roundoff; rho is nondecreasing
        r[s] = std::sqrt(ck * num / (costs[s] * denom_base));
        prev_rho = rho;
    }
    return r;
}

std::vector<long long> compute_counts(const std::vector<double>& r,
                                      const std::vector<double>& costs, double budget) {
    if (r.size() != costs.size()) throw std::invalid_argument("r and costs length mismatch");
    if (budget < 0.0) throw std::invalid_argument("budget must be nonnegative");
    double denom = 0.0;
    for (std::size_t s = 0; s < r.size(); ++s) denom += r[s] * costs[s];
    if (!(denom > 0.0)) throw std::invalid_argument("no usable fidelity");

    const double m_target = budget / denom;
    std::vector<long long> m(r.size(), 0);
    for (std::size_t s = 0; s < r.size(); ++s)
        m[s] = static_cast<long long>(std::floor(r[s] * m_target));
    m.back() = static_cast<long long>(std::floor(m_target));
    return m;
}

}  // namespace gdamf
