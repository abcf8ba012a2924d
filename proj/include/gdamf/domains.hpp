#pragma once

#include "gdamf/dataset.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gdamf {

// Annotation budget. spent <= total at all times.
struct Budget {
    double total = 0.0;
    double spent = 0.0;

    double remaining() const { return total - spent; }
    void charge(double cost);  // throws on overdraw
};

// Ordered domain chain: labeled source (index 0), K query stages (unlabeled
// pool + labeled set each), strictly increasing per-query costs c^(1..K), and
// a held-out evaluation set from the target distribution (index K).
class DomainSequence {
public:
    struct Stage {
        UnlabeledPool pool;
        LabeledSet labeled;
    };

    DomainSequence(LabeledSet source, std::vector<Stage> stages, std::vector<double> costs,
                   LabeledSet eval_set, int num_classes);

    int k() const { return static_cast<int>(stages_.size()); }
    int num_classes() const { return num_classes_; }
    std::size_t feature_dim() const { return source_.features.cols; }

    const LabeledSet& source() const { return source_; }
    const Stage& stage(int j) const;  // j in 1..K
    const LabeledSet& eval_set() const { return eval_; }

    const std::vector<double>& costs() const { return costs_; }
    double cost(int j) const;
    void set_costs(std::vector<double> costs);  // revalidates

    // The label oracle: reveals the hidden label of pool sample i in stage j
    // and moves it from U^(j) to D^(j). Remaining pool rows keep their order.
    int annotate(int j, std::size_t pool_index);

    // Ground-truth access for analysis and distance reporting only; learners
    // must go through annotate.
    const std::vector<int>& pool_hidden_labels(int j) const;

private:
    LabeledSet source_;
    std::vector<Stage> stages_;
    std::vector<double> costs_;
    LabeledSet eval_;
    int num_classes_ = 2;

    Stage& stage_mut(int j);
};

// Rotation angle of domain j (j = 0..K_intermediate+1), evenly spaced from 0
// to total_angle.
std::vector<double> rotation_angles(int k_intermediate, double total_angle);

// Two interleaving half-moons (classes 1 and 2), centered at the origin, each
// domain rotated by its share of total_angle. Costs default to the domain
// indices 1..K.
DomainSequence make_rotating_moons(std::size_t n_source, std::size_t n_per_pool,
                                   std::size_t n_eval, int k_intermediate, double total_angle,
                                   double noise, std::uint64_t seed);

// Two isotropic unit-variance Gaussian clusters with means +-(separation/2, 0)
// rotated about the origin.
DomainSequence make_rotating_gaussians(std::size_t n_source, std::size_t n_per_pool,
                                       std::size_t n_eval, int k_intermediate,
                                       double total_angle, double class_separation,
                                       std::uint64_t seed);

// Ordered CSV files -> domain sequence. First file becomes the labeled
// source, the last becomes the target pool plus a held-out eval split, files
// in between become intermediate pools. Features are standardized with the
// source file's column statistics. Class ids are assigned to the distinct
// label strings across all files, sorted lexicographically.
DomainSequence load_csv_sequence(const std::vector<std::string>& paths,
                                 const std::string& label_column,
                                 const std::vector<double>& costs, double eval_fraction,
                                 std::uint64_t seed);

// Move per_domain_count uniformly chosen samples (seeded, without
// replacement) from every pool to its labeled set. Not charged to any budget.
DomainSequence draw_initial_labels(DomainSequence seq, std::size_t per_domain_count,
                                   std::uint64_t seed);

}  // namespace gdamf
