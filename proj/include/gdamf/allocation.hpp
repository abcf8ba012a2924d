#pragma once

#include "gdamf/classifier.hpp"
#include "gdamf/domains.hpp"

#include <cstdint>
#include <vector>

namespace gdamf {

// Per-domain fidelity correlations rho_1..rho_{K-1} between each intermediate
// model's probability outputs and the target model's, estimated on probe
// inputs. `rho` is clamped to [0,1] and made nondecreasing by cumulative
// maximum (the ratio formula needs rho_s >= rho_{s-1}); `rho_raw` keeps the
// clamped-only values for reporting.
struct FidelityEstimate {
    std::vector<double> rho;
    std::vector<double> rho_raw;
    std::size_t probe_count = 0;
    std::uint64_t probe_seed = 0;
};

// Budgeted query plan: ratios r (r^(K)=1), integer targets m, and queried-so-
// far counts m_bar, all indexed by domain 1..K.
struct QueryPlan {
    std::vector<double> r;
    std::vector<long long> m;
    std::vector<long long> m_bar;
};

// Probe inputs: each coordinate uniform over the [min, max] range observed in
// the source, every pool, and every labeled set (eval excluded). Degenerate
// ranges collapse to the constant.
Matrix sample_probes(const DomainSequence& seq, std::size_t n_probes, std::uint64_t seed);

// Pearson correlation over the flattened probe probabilities of h_s vs h_K
// (one scalar per probe-class pair). Zero variance on either side gives 0.
// models = theta^(1..K); needs >= 2 probes.
FidelityEstimate estimate_correlations(const std::vector<Classifier>& models,
                                       const Matrix& probes);

// r^(s) = sqrt(c^(K)(rho_s^2 - rho_{s-1}^2) / (c^(s)(1 - rho_{K-1}^2))) for
// s < K with rho_0 = 0, r^(K) = 1. The denominator is clamped below at 1e-9.
std::vector<double> compute_ratios(const FidelityEstimate& fid, const std::vector<double>& costs);

// m~^(K) = B / (r . c), m~^(s) = r^(s) m~^(K), floored to integers. The
// floored plan always satisfies sum m^(s) c^(s) <= B.
std::vector<long long> compute_counts(const std::vector<double>& r,
                                      const std::vector<double>& costs, double budget);

}  // namespace gdamf
