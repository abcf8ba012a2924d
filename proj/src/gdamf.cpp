#include "gdamf/gdamf.hpp"


#include <stdexcept>
#include <utility>

namespace gdamf {

double uncertainty(const Classifier& c, std::span<const double> x) {
    const std::vector<double> p = predict_proba(c, x);
    double mx = p[0];
    for (double v : p) mx = v > mx ? v : mx;
    return 1.0 - mx;
}

std::size_t select_query(const Classifier& c, const UnlabeledPool& pool) {
    if (pool.empty()) throw std::invalid_argument("select_query: empty pool");
    const Matrix probs = predict_proba_batch(c, pool.features());
    std::size_t best = 0;
    double best_unc = -1.0;
    for (std::size_t i = 0; i < probs.rows; ++i) {
        const double* p = probs.row(i);
        double mx = p[0];
        for (std::size_t j = 1; j < probs.cols; ++j) mx = p[j] > mx ? p[j] : mx;
        const double unc = 1.0 - mx;
        if (unc > best_unc) {
            best_unc = unc;
            best = i;
        }
    }
    return best;
}

std::size_t select_query_random(const UnlabeledPool& pool, Rng& rng) {
    if (pool.empty()) throw std::invalid_argument("select_query: empty pool");
    return static_cast<std::size_t>(rng.uniform_index(pool.size()));
}

namespace {

// w/o-intermediate ablation: keep only the target stage (and its cost).
DomainSequence collapse_to_target(DomainSequence seq) {
    const int k = seq.k();
    std::vector<DomainSequence::Stage> stages;
    DomainSequence::Stage tgt;
    tgt.pool = seq.stage(k).pool;
    tgt.labeled = seq.stage(k).labeled;
    stages.push_back(std::move(tgt));
    return DomainSequence(seq.source(), std::move(stages), {seq.cost(k)}, seq.eval_set(),
                          seq.num_classes());
}

}  // namespace

GdamfResult run_gdamf(DomainSequence seq_in, const Architecture& arch, const GdamfConfig& cfg) {
    cfg.train.validate();
    if (cfg.budget < 0.0) throw std::invalid_argument("budget must be nonnegative");

    DomainSequence seq =
        cfg.disable_intermediates ? collapse_to_target(std::move(seq_in)) : std::move(seq_in);
    const int k = seq.k();
    for (int j = 1; j <= k; ++j)
        if (seq.stage(j).labeled.empty())
            throw std::invalid_argument("every domain needs initial labeled samples");

    Budget budget{cfg.budget, 0.0};
    std::vector<long long> m_bar(static_cast<std::size_t>(k), 0);
    Rng query_rng(mix_seed(cfg.query_seed, 0x72616e64));

    // base model, once (the source set never changes)
    TrainConfig base_cfg = cfg.train;
    base_cfg.seed = mix_seed(cfg.train.seed, 0);
    std::vector<Classifier> models;
    models.reserve(static_cast<std::size_t>(k) + 1);
    models.push_back(train(arch, seq.source(), base_cfg));
    models.resize(static_cast<std::size_t>(k) + 1, models.front());

    // probes are fixed for the whole run
    const Matrix probes = sample_probes(seq, cfg.probe_count, cfg.probe_seed);

    std::vector<SweepRecord> history;
    for (long long sweep = 0;; ++sweep) {
        // supervised chain over the labeled sets, warm-started along the chain
        for (int j = 1; j <= k; ++j) {
            TrainConfig step_cfg = cfg.train;
            step_cfg.seed = mix_seed(cfg.train.seed,
                                     static_cast<std::uint64_t>(sweep) * 1000 +
                                         static_cast<std::uint64_t>(j));
            const LabeledSet& data = seq.stage(j).labeled;
            models[static_cast<std::size_t>(j)] =
                cfg.disable_warm_start
                    ? train(arch, data, step_cfg)
                    : train(models[static_cast<std::size_t>(j - 1)], data, step_cfg);
        }

        // fresh plan; m are cumulative targets against the full budget, the
        // m_bar < m comparison and the affordability guard do the rest
        const std::vector<Classifier> chain(models.begin() + 1, models.end());
        FidelityEstimate fid = estimate_correlations(chain, probes);
        fid.probe_seed = cfg.probe_seed;
        QueryPlan plan;
        plan.r = compute_ratios(fid, seq.costs());
        plan.m = compute_counts(plan.r, seq.costs(), budget.total);
        plan.m_bar = m_bar;

        // at most one query per domain per sweep
        int queries = 0;
        for (int j = 1; j <= k; ++j) {
            const std::size_t s = static_cast<std::size_t>(j - 1);
            if (plan.m_bar[s] >= plan.m[s]) continue;
            if (!(budget.remaining() > seq.cost(j))) continue;
            const UnlabeledPool& pool = seq.stage(j).pool;
            if (pool.empty()) continue;  // exhausted: excluded from further queries
            const std::size_t pick = cfg.disable_uncertainty
                                         ? select_query_random(pool, query_rng)
                                         : select_query(models[static_cast<std::size_t>(j)], pool);
            seq.annotate(j, pick);
            budget.charge(seq.cost(j));
            ++m_bar[s];
            ++queries;
        }

        SweepRecord rec;
        rec.rho_raw = fid.rho_raw;
        rec.rho = fid.rho;
        rec.r = plan.r;
        rec.m = plan.m;
        rec.m_bar = m_bar;
        rec.budget_remaining = budget.remaining();
        rec.queries = queries;
        history.push_back(std::move(rec));

        if (queries == 0) break;
    }

    GdamfResult result{std::move(models), std::move(seq), std::move(m_bar), budget.spent,
                       std::move(history)};
    return result;
}

}  // namespace gdamf
