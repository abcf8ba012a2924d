#include "gdamf/selftrain.hpp"

#include "gdamf/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace gdamf {

int sharpen(std::span<const double> p) {
    if (p.empty()) throw std::invalid_argument("sharpen: empty probability vector");
    double sum = 0.0;
    for (double v : p) sum += v;
    if (std::abs(sum - 1.0) > 1e-4)
        throw std::invalid_argument("sharpen: input is not a probability vector");
    std::size_t best = 0;
    for (std::size_t i = 1; i < p.size(); ++i)
        if (p[i] > p[best]) best = i;
    return static_cast<int>(best) + 1;
}

Classifier self_train_step(const Classifier& current, const UnlabeledPool& next_pool,
                           const TrainConfig& cfg) {
    if (next_pool.empty()) throw std::invalid_argument("self_train_step: empty pool");
    const Matrix probs = predict_proba_batch(current, next_pool.features());
    LabeledSet pseudo;
    pseudo.features = next_pool.features();
    pseudo.labels.resize(probs.rows);
    for (std::size_t i = 0; i < probs.rows; ++i)
        pseudo.labels[i] = sharpen(std::span<const double>(probs.row(i), probs.cols));
    return train(current, pseudo, cfg);
}

std::vector<Classifier> gradual_self_train(const DomainSequence& seq, const Architecture& arch,
                                           const TrainConfig& cfg) {
    std::vector<Classifier> models;
    models.reserve(static_cast<std::size_t>(seq.k()) + 1);

    TrainConfig step_cfg = cfg;
    step_cfg.seed = mix_seed(cfg.seed, 0);
    models.push_back(train(arch, seq.source(), step_cfg));
    for (int j = 1; j <= seq.k(); ++j) {
        step_cfg.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(j));
        models.push_back(self_train_step(models.back(), seq.stage(j).pool, step_cfg));
    }
    return models;
}

}  // namespace gdamf
