#pragma once

#include "gdamf/allocation.hpp"
#include "gdamf/classifier.hpp"
#include "gdamf/domains.hpp"
#include "gdamf/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace gdamf {

struct GdamfConfig {
    TrainConfig train;
    double budget = 0.0;
    // ablations
    bool disable_uncertainty = false;    // random queries instead of uncertainty sampling
    bool disable_intermediates = false;  // collapse the chain to source + target
    bool disable_warm_start = false;     // cold-start every supervised update
    // probe settings for the fidelity estimate
    std::size_t probe_count = 1000;
    std::uint64_t probe_seed = 0;
    // stream for random queries under disable_uncertainty
    std::uint64_t query_seed = 0;
};

// One while-loop sweep: the plan that was computed and what happened.
struct SweepRecord {
    std::vector<double> rho_raw;
    std::vector<double> rho;
    std::vector<double> r;
    std::vector<long long> m;
    std::vector<long long> m_bar;  // after the sweep
    double budget_remaining = 0.0;
    int queries = 0;
};

struct GdamfResult {
    std::vector<Classifier> models;  // theta^(0..K)
    DomainSequence sequence;         // final datasets
    std::vector<long long> m_bar;    // queries per domain 1..K
    double spent = 0.0;
    std::vector<SweepRecord> history;
};

// 1 - max_l Pr(y = l | x).
double uncertainty(const Classifier& c, std::span<const double> x);

// Pool index with the largest uncertainty; ties to the smallest index.
std::size_t select_query(const Classifier& c, const UnlabeledPool& pool);

// Seeded uniform pick for the w/o-AL ablation.
std::size_t select_query_random(const UnlabeledPool& pool, Rng& rng);

// The full budgeted loop: base model on the source, then per sweep a
// warm-started supervised chain over the labeled sets, a fresh query plan
// (probes fixed per run), and at most one query per domain. Stops after any
// sweep that performs no query. Every stage must hold at least one initial
// labeled sample.
GdamfResult run_gdamf(DomainSequence seq, const Architecture& arch, const GdamfConfig& cfg);

}  // namespace gdamf
