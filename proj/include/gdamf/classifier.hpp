#pragma once

#include "gdamf/dataset.hpp"
#include "gdamf/matrix.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace gdamf {

// Feed-forward softmax classifier: per hidden layer a linear map, optional
// batch normalization, leaky-ReLU, and dropout; a final linear map feeds the
// softmax. hidden_dims may be empty (multinomial logistic regression).
struct Architecture {
    std::size_t input_dim = 0;
    std::vector<std::size_t> hidden_dims;
    int num_classes = 2;
    double dropout_rate = 0.0;
    bool use_batchnorm = false;

    void validate() const;
    std::size_t theta_size() const;

    bool operator==(const Architecture&) const = default;
};

// One hidden layer of 32 units, dropout 0.1, batch normalization.
Architecture default_architecture(std::size_t input_dim, int num_classes);

enum class OptimizerKind { sgd, adam };

struct TrainConfig {
    double learning_rate = 1e-3;
    int epochs = 100;
    int batch_size = 32;
    double weight_decay = 0.0;
    OptimizerKind optimizer = OptimizerKind::adam;
    std::uint64_t seed = 0;

    void validate() const;
};

// Immutable after training. theta holds, in layer order: weights, biases,
// and for batch-normalized layers gamma, beta, running mean, running var.
struct Classifier {
    Architecture arch;
    std::vector<double> theta;
    std::uint64_t rng_seed = 0;
};

// Seeded deterministic initialization: weights uniform in +-sqrt(6/(fan_in+fan_out)),
// biases/beta/running-mean 0, gamma/running-var 1.
Classifier init_classifier(const Architecture& arch, std::uint64_t seed);

// Minimize mean cross-entropy by mini-batch gradient descent for cfg.epochs.
// Cold variant starts from init_classifier(arch, cfg.seed); warm variant from
// init.theta (epochs 0 returns init.theta unchanged).
Classifier train(const Architecture& arch, const LabeledSet& data, const TrainConfig& cfg);
Classifier train(const Classifier& init, const LabeledSet& data, const TrainConfig& cfg);

// Probability vector of length num_classes. Inference mode: dropout off,
// batch normalization uses the stored running statistics.
std::vector<double> predict_proba(const Classifier& c, std::span<const double> x);

// Rows of probabilities for a whole feature matrix.
Matrix predict_proba_batch(const Classifier& c, const Matrix& x);

// Mean cross-entropy of the batch and its exact analytic gradient w.r.t.
// theta. Evaluated on the deterministic training-mode network: batch
// normalization uses batch statistics, dropout is disabled. Running-statistic
// coordinates do not enter this loss and receive zero gradient.
std::pair<double, std::vector<double>> loss_and_gradient(const Classifier& c,
                                                         const LabeledSet& batch);

// Mean cross-entropy in inference mode (running statistics, no dropout).
double mean_cross_entropy(const Classifier& c, const LabeledSet& data);

// Lossless text serialization (doubles round-trip bit-exactly).
void save_classifier(const Classifier& c, std::ostream& out);
Classifier load_classifier(std::istream& in);
void save_classifier_file(const Classifier& c, const std::string& path);
Classifier load_classifier_file(const std::string& path);

}  // namespace gdamf
