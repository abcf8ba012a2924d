#pragma once

#include "gdamf/classifier.hpp"
#include "gdamf/domains.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace gdamf {

// Distances between adjacent domains for a range of chain lengths, plus the
// min-max scaled curve ((raw - min)/(max - min); all zeros when max == min).
struct DistanceCurve {
    std::vector<int> k_values;  // K_intermediate per entry
    std::vector<double> raw;
    std::vector<double> scaled;
};

// Fraction of eval samples whose argmax prediction equals the label.
double accuracy(const Classifier& c, const LabeledSet& eval);

// Wasserstein-infinity (bottleneck) distance between equal-size point sets:
// the minimum over perfect matchings of the largest matched pair distance.
// Exact: binary search over the pairwise distances with a maximum bipartite
// matching feasibility test.
double w_infinity(const Matrix& a, const Matrix& b);

// Per class, subsample both sides to min(subsample_n, available) points
// (seeded), compute w_infinity, and return the maximum over classes. Throws
// if a class is missing on either side.
double max_per_class_w_infinity(const Matrix& xa, const std::vector<int>& ya, const Matrix& xb,
                                const std::vector<int>& yb, std::size_t subsample_n,
                                std::uint64_t seed);

// Same, on two domains of a sequence (ground-truth labels; analysis only).
// Domain j's points are its pool plus its labeled set (the source's labeled
// set for j = 0).
double max_per_class_w_infinity(const DomainSequence& seq, int domain_a, int domain_b,
                                std::size_t subsample_n, std::uint64_t seed);

// Mean of max_per_class_w_infinity over the K+1 adjacent pairs.
double mean_adjacent_distance(const DomainSequence& seq, std::size_t subsample_n,
                              std::uint64_t seed);

// Build a sequence per K in k_list, take the mean adjacent distance, min-max
// scale across the curve.
DistanceCurve adjacent_distance_curve(const std::function<DomainSequence(int)>& builder,
                                      const std::vector<int>& k_list, std::size_t subsample_n,
                                      std::uint64_t seed);

// CSV rows: K,raw_mean,scaled
void write_distance_curve_csv(const DistanceCurve& curve, std::ostream& out);

}  // namespace gdamf
