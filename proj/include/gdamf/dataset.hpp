#pragma once

#include "gdamf/matrix.hpp"

#include <vector>

namespace gdamf {

// Labeled dataset: feature rows plus 1-based class ids in {1..L}.
struct LabeledSet {
    Matrix features;
    std::vector<int> labels;

    std::size_t size() const { return features.rows; }
    bool empty() const { return features.rows == 0; }

    void append(const double* x, std::size_t len, int label);

    // throws unless row/label counts agree and every label is in {1..num_classes}
    void validate(int num_classes) const;
};

class DomainSequence;

// Unlabeled pool. Ground-truth labels are stored for the simulation oracle but
// are private: learners see only the features. DomainSequence (the oracle
// owner) is the single point of access.
class UnlabeledPool {
public:
    UnlabeledPool() = default;
    UnlabeledPool(Matrix features, std::vector<int> hidden_labels);

    const Matrix& features() const { return features_; }
    std::size_t size() const { return features_.rows; }
    bool empty() const { return features_.rows == 0; }

private:
    Matrix features_;
    std::vector<int> hidden_labels_;

    friend class DomainSequence;
};

}  // namespace gdamf
