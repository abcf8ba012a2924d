#pragma once

#include "gdamf/classifier.hpp"
#include "gdamf/domains.hpp"

#include <span>
#include <vector>

namespace gdamf {

// Pseudo-label: argmax class of a probability vector, ties to the smallest
// class index. Rejects inputs whose entries sum to more than 1e-4 away from 1.
int sharpen(std::span<const double> p);

// Pseudo-label every pool sample with `current`, then train on the
// pseudo-labeled set warm-started from `current`. The pool is not consumed.
Classifier self_train_step(const Classifier& current, const UnlabeledPool& next_pool,
                           const TrainConfig& cfg);

// The chained baseline: base model on the source, then one self-training step
// per domain. Returns K+1 classifiers.
std::vector<Classifier> gradual_self_train(const DomainSequence& seq, const Architecture& arch,
                                           const TrainConfig& cfg);

}  // namespace gdamf
