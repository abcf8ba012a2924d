#include "gdamf/metrics.hpp"

#include "gdamf/csv.hpp"
#include "gdamf/kernels.hpp"
#include "gdamf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

namespace gdamf {

double accuracy(const Classifier& c, const LabeledSet& eval) {
    if (eval.empty()) throw std::invalid_argument("empty evaluation set");
    const Matrix probs = predict_proba_batch(c, eval.features);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < probs.rows; ++i) {
        const double* p = probs.row(i);
        std::size_t best = 0;
        for (std::size_t j = 1; j < probs.cols; ++j)
            if (p[j] > p[best]) best = j;
        if (static_cast<int>(best) + 1 == eval.labels[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(probs.rows);
}

namespace {

// Hopcroft-Karp maximum matching on the threshold graph: left i may match
// right j iff dist2(i,j) <= limit. Edges stay implicit (the distance matrix
// is scanned directly).
class ThresholdMatcher {
public:
    explicit ThresholdMatcher(const Matrix& dist2) : d_(dist2), n_(dist2.rows) {}

    bool has_perfect_matching(double limit) {
        match_l_.assign(n_, -1);
        match_r_.assign(n_, -1);
        std::size_t matched = 0;
        while (bfs(limit)) {
            for (std::size_t u = 0; u < n_; ++u)
                if (match_l_[u] < 0 && dfs(u, limit)) ++matched;
        }
        return matched == n_;
    }

private:
    static constexpr int kInf = 1 << 30;

    bool bfs(double limit) {
        queue_.clear();
        dist_.assign(n_, kInf);
        for (std::size_t u = 0; u < n_; ++u)
            if (match_l_[u] < 0) {
                dist_[u] = 0;
                queue_.push_back(u);
            }
        bool found = false;
        for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
            const std::size_t u = queue_[qi];
            const double* row = d_.row(u);
            for (std::size_t v = 0; v < n_; ++v) {
                if (row[v] > limit) continue;
                const int w = match_r_[v];
                if (w < 0) {
                    found = true;
                } else if (dist_[static_cast<std::size_t>(w)] == kInf) {
                    dist_[static_cast<std::size_t>(w)] = dist_[u] + 1;
                    queue_.push_back(static_cast<std::size_t>(w));
                }
            }
        }
        return found;
    }

    bool dfs(std::size_t u, double limit) {
        const double* row = d_.row(u);
        for (std::size_t v = 0; v < n_; ++v) {
            if (row[v] > limit) continue;
            const int w = match_r_[v];
            if (w < 0 || (dist_[static_cast<std::size_t>(w)] == dist_[u] + 1 &&
                          dfs(static_cast<std::size_t>(w), limit))) {
                match_l_[u] = static_cast<int>(v);
                match_r_[v] = static_cast<int>(u);
                return true;
            }
        }
        dist_[u] = kInf;
        return false;
    }

    const Matrix& d_;
    std::size_t n_;
    std::vector<int> match_l_, match_r_, dist_;
    std::vector<std::size_t> queue_;
};

}  // namespace

double w_infinity(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows) throw std::invalid_argument("w_infinity: point set size mismatch");
    if (a.cols != b.cols) throw std::invalid_argument("w_infinity: dimension mismatch");
    if (a.rows == 0) throw std::invalid_argument("w_infinity: empty point sets");

    Matrix dist2;
    kernels::pairwise_sq_dists(a, b, dist2);

    std::vector<double> values(dist2.data);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    // smallest threshold admitting a perfect matching; the full graph always
    // has one, so the search is well defined
    ThresholdMatcher matcher(dist2);
    std::size_t lo = 0, hi = values.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (matcher.has_perfect_matching(values[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return std::sqrt(values[lo]);
}

namespace {

Matrix rows_of_class(const Matrix& x, const std::vector<int>& y, int cls,
                     std::size_t subsample_n, Rng& rng) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] == cls) idx.push_back(i);
    if (idx.size() > subsample_n) {
        const auto pick = rng.sample_without_replacement(idx.size(), subsample_n);
        std::vector<std::size_t> chosen(pick.size());
        for (std::size_t i = 0; i < pick.size(); ++i) chosen[i] = idx[pick[i]];
        idx = std::move(chosen);
    }
    return gather_rows(x, idx);
}

}  // namespace

double max_per_class_w_infinity(const Matrix& xa, const std::vector<int>& ya, const Matrix& xb,
                                const std::vector<int>& yb, std::size_t subsample_n,
                                std::uint64_t seed) {
    if (subsample_n == 0) throw std::invalid_argument("subsample_n must be >= 1");
    std::set<int> classes(ya.begin(), ya.end());
    classes.insert(yb.begin(), yb.end());

    double worst = 0.0;
    for (int cls : classes) {
        const std::size_t na = static_cast<std::size_t>(std::count(ya.begin(), ya.end(), cls));
        const std::size_t nb = static_cast<std::size_t>(std::count(yb.begin(), yb.end(), cls));
        if (na == 0 || nb == 0)
            throw std::runtime_error("class " + std::to_string(cls) +
                                     " missing on one side of the distance computation");
        const std::size_t n = std::min({subsample_n, na, nb});
        // one stream per class, replayed on both sides: identical domains
        // then pick identical subsamples and measure zero
        Rng rng_a(mix_seed(seed, static_cast<std::uint64_t>(cls)));
        Rng rng_b(mix_seed(seed, static_cast<std::uint64_t>(cls)));
        const Matrix pa = rows_of_class(xa, ya, cls, n, rng_a);
        const Matrix pb = rows_of_class(xb, yb, cls, n, rng_b);
        worst = std::max(worst, w_infinity(pa, pb));
    }
    return worst;
}

namespace {

// Domain j as (features, ground-truth labels): pool plus labeled set.
std::pair<Matrix, std::vector<int>> domain_points(const DomainSequence& seq, int j) {
    if (j == 0) return {seq.source().features, seq.source().labels};
    const auto& st = seq.stage(j);
    Matrix x = st.pool.features();
    std::vector<int> y = seq.pool_hidden_labels(j);
    for (std::size_t i = 0; i < st.labeled.size(); ++i) {
        append_row(x, st.labeled.features.row(i), st.labeled.features.cols);
        y.push_back(st.labeled.labels[i]);
    }
    return {std::move(x), std::move(y)};
}

}  // namespace

double max_per_class_w_infinity(const DomainSequence& seq, int domain_a, int domain_b,
                                std::size_t subsample_n, std::uint64_t seed) {
    const auto [xa, ya] = domain_points(seq, domain_a);
    const auto [xb, yb] = domain_points(seq, domain_b);
    return max_per_class_w_infinity(xa, ya, xb, yb, subsample_n, seed);
}

double mean_adjacent_distance(const DomainSequence& seq, std::size_t subsample_n,
                              std::uint64_t seed) {
    double sum = 0.0;
    for (int j = 0; j < seq.k(); ++j)
        sum += max_per_class_w_infinity(seq, j, j + 1, subsample_n,
                                        mix_seed(seed, static_cast<std::uint64_t>(j)));
    return sum / static_cast<double>(seq.k());
}

DistanceCurve adjacent_distance_curve(const std::function<DomainSequence(int)>& builder,
                                      const std::vector<int>& k_list, std::size_t subsample_n,
                                      std::uint64_t seed) {
    if (k_list.empty()) throw std::invalid_argument("empty K list");
    DistanceCurve curve;
    curve.k_values = k_list;
    for (int k : k_list) {
        const DomainSequence seq = builder(k);
        curve.raw.push_back(mean_adjacent_distance(seq, subsample_n, seed));
    }
    const double lo = *std::min_element(curve.raw.begin(), curve.raw.end());
    const double hi = *std::max_element(curve.raw.begin(), curve.raw.end());
    curve.scaled.resize(curve.raw.size(), 0.0);
    if (hi > lo)
        for (std::size_t i = 0; i < curve.raw.size(); ++i)
            curve.scaled[i] = (curve.raw[i] - lo) / (hi - lo);
    return curve;
}

void write_distance_curve_csv(const DistanceCurve& curve, std::ostream& out) {
    out << "K,raw_mean,scaled\n";
    for (std::size_t i = 0; i < curve.raw.size(); ++i)
        out << curve.k_values[i] << ',' << csv::format_double(curve.raw[i]) << ','
            << csv::format_double(curve.scaled[i]) << '\n';
}

}  // namespace gdamf
