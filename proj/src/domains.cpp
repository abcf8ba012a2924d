#include "gdamf/domains.hpp"

#include "gdamf/csv.hpp"
#include "gdamf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace gdamf {

void Budget::charge(double cost) {
    if (cost < 0.0) throw std::invalid_argument("negative cost");
    if (spent + cost > total) throw std::runtime_error("budget overdraw");
    spent += cost;
}

namespace {

void check_costs(const std::vector<double>& costs, std::size_t k) {
    if (costs.size() != k) throw std::invalid_argument("costs length must equal K");
    double prev = 0.0;
    for (double c : costs) {
        if (!(c > prev)) throw std::invalid_argument("costs must be strictly increasing and positive");
        prev = c;
    }
}

}  // namespace

DomainSequence::DomainSequence(LabeledSet source, std::vector<Stage> stages,
                               std::vector<double> costs, LabeledSet eval_set, int num_classes)
    : source_(std::move(source)),
      stages_(std::move(stages)),
      costs_(std::move(costs)),
      eval_(std::move(eval_set)),
      num_classes_(num_classes) {
    if (num_classes_ < 2) throw std::invalid_argument("num_classes must be >= 2");
    check_costs(costs_, stages_.size());
    source_.validate(num_classes_);
    eval_.validate(num_classes_);
    const std::size_t d = source_.features.cols;
    for (const Stage& st : stages_) {
        st.labeled.validate(num_classes_);
        if (st.pool.features().cols != d || (st.labeled.size() > 0 && st.labeled.features.cols != d))
            throw std::invalid_argument("inconsistent feature dimensions across domains");
        for (int y : st.pool.hidden_labels_)
            if (y < 1 || y > num_classes_) throw std::invalid_argument("label out of range");
    }
    if (eval_.size() > 0 && eval_.features.cols != d)
        throw std::invalid_argument("inconsistent feature dimensions across domains");
}

const DomainSequence::Stage& DomainSequence::stage(int j) const {
    if (j < 1 || j > k()) throw std::out_of_range("domain index out of range");
    return stages_[static_cast<std::size_t>(j - 1)];
}

DomainSequence::Stage& DomainSequence::stage_mut(int j) {
    if (j < 1 || j > k()) throw std::out_of_range("domain index out of range");
    return stages_[static_cast<std::size_t>(j - 1)];
}

double DomainSequence::cost(int j) const {
    if (j < 1 || j > k()) throw std::out_of_range("domain index out of range");
    return costs_[static_cast<std::size_t>(j - 1)];
}

void DomainSequence::set_costs(std::vector<double> costs) {
    check_costs(costs, stages_.size());
    costs_ = std::move(costs);
}

int DomainSequence::annotate(int j, std::size_t pool_index) {
    if (j == 0) throw std::invalid_argument("source has no pool");
    Stage& st = stage_mut(j);
    if (pool_index >= st.pool.size()) throw std::out_of_range("pool index out of range");
    const int label = st.pool.hidden_labels_[pool_index];
    st.labeled.append(st.pool.features_.row(pool_index), st.pool.features_.cols, label);
    erase_row(st.pool.features_, pool_index);
    st.pool.hidden_labels_.erase(st.pool.hidden_labels_.begin() +
                                 static_cast<std::ptrdiff_t>(pool_index));
    return label;
}

const std::vector<int>& DomainSequence::pool_hidden_labels(int j) const {
    return stage(j).pool.hidden_labels_;
}

std::vector<double> rotation_angles(int k_intermediate, double total_angle) {
    if (k_intermediate < 0) throw std::invalid_argument("k_intermediate must be >= 0");
    if (total_angle < 0.0) throw std::invalid_argument("total_angle must be >= 0");
    const int k = k_intermediate + 1;  // number of queryable domains
    std::vector<double> angles(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j)
        angles[static_cast<std::size_t>(j)] = total_angle * static_cast<double>(j) / k;
    return angles;
}

namespace {

std::vector<double> default_costs(int k) {
    std::vector<double> costs(static_cast<std::size_t>(k));
    for (int j = 1; j <= k; ++j) costs[static_cast<std::size_t>(j - 1)] = j;
    return costs;
}

void rotate_rows(Matrix& m, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    for (std::size_t i = 0; i < m.rows; ++i) {
        double* r = m.row(i);
        const double x = r[0], y = r[1];
        r[0] = c * x - s * y;
        r[1] = s * x + c * y;
    }
}

// One two-moon sample set, balanced classes, centered at the origin.
void sample_moons(std::size_t n, double noise, Rng& rng, Matrix& x, std::vector<int>& y) {
    x.resize(n, 2);
    y.resize(n);
    const std::size_t n1 = n - n / 2;  // remainder to class 1
    const double pi = 3.14159265358979323846;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = pi * rng.uniform();
        double px, py;
        int label;
        if (i < n1) {
            px = std::cos(t);
            py = std::sin(t);
            label = 1;
        } else {
            px = 1.0 - std::cos(t);
            py = 0.5 - std::sin(t);
            label = 2;
        }
        // center the joint cloud at the origin before any rotation
        px -= 0.5;
        py -= 0.25;
        x(i, 0) = px + noise * rng.normal();
        x(i, 1) = py + noise * rng.normal();
        y[i] = label;
    }
    // mix the two class blocks
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm);
    Matrix xs = gather_rows(x, perm);
    std::vector<int> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = y[perm[i]];
    x = std::move(xs);
    y = std::move(ys);
}

void sample_gaussians(std::size_t n, double separation, Rng& rng, Matrix& x,
                      std::vector<int>& y) {
    x.resize(n, 2);
    y.resize(n);
    const std::size_t n1 = n - n / 2;
    const double half = separation / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double mx = i < n1 ? half : -half;
        x(i, 0) = mx + rng.normal();
        x(i, 1) = rng.normal();
        y[i] = i < n1 ? 1 : 2;
    }
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm);
    Matrix xs = gather_rows(x, perm);
    std::vector<int> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = y[perm[i]];
    x = std::move(xs);
    y = std::move(ys);
}

template <class Sampler>
DomainSequence make_rotating(std::size_t n_source, std::size_t n_per_pool, std::size_t n_eval,
                             int k_intermediate, double total_angle, std::uint64_t seed,
                             Sampler&& sample) {
    if (n_source < 1 || n_per_pool < 1 || n_eval < 1)
        throw std::invalid_argument("sample counts must be >= 1");
    const auto angles = rotation_angles(k_intermediate, total_angle);
    const int k = k_intermediate + 1;
    Rng rng(seed);

    Matrix x;
    std::vector<int> y;
    sample(n_source, rng, x, y);
    rotate_rows(x, angles[0]);
    LabeledSet source{std::move(x), std::move(y)};

    std::vector<DomainSequence::Stage> stages;
    for (int j = 1; j <= k; ++j) {
        sample(n_per_pool, rng, x, y);
        rotate_rows(x, angles[static_cast<std::size_t>(j)]);
        DomainSequence::Stage st;
        st.pool = UnlabeledPool(std::move(x), std::move(y));
        stages.push_back(std::move(st));
    }

    sample(n_eval, rng, x, y);
    rotate_rows(x, angles.back());
    LabeledSet eval_set{std::move(x), std::move(y)};

    return DomainSequence(std::move(source), std::move(stages), default_costs(k),
                          std::move(eval_set), 2);
}

}  // namespace

DomainSequence make_rotating_moons(std::size_t n_source, std::size_t n_per_pool,
                                   std::size_t n_eval, int k_intermediate, double total_angle,
                                   double noise, std::uint64_t seed) {
    if (noise < 0.0) throw std::invalid_argument("noise must be >= 0");
    return make_rotating(n_source, n_per_pool, n_eval, k_intermediate, total_angle, seed,
                         [noise](std::size_t n, Rng& rng, Matrix& x, std::vector<int>& y) {
                             sample_moons(n, noise, rng, x, y);
                         });
}

DomainSequence make_rotating_gaussians(std::size_t n_source, std::size_t n_per_pool,
                                       std::size_t n_eval, int k_intermediate,
                                       double total_angle, double class_separation,
                                       std::uint64_t seed) {
    if (class_separation < 0.0) throw std::invalid_argument("class_separation must be >= 0");
    return make_rotating(n_source, n_per_pool, n_eval, k_intermediate, total_angle, seed,
                         [class_separation](std::size_t n, Rng& rng, Matrix& x,
                                            std::vector<int>& y) {
                             sample_gaussians(n, class_separation, rng, x, y);
                         });
}

namespace {

struct CsvDomain {
    Matrix features;
    std::vector<std::string> raw_labels;
};

CsvDomain parse_csv_domain(const std::string& path, const std::string& label_column,
                           std::vector<std::string>* feature_names) {
    const csv::Table t = csv::read_csv_file(path);
    const int label_idx = t.column(label_column);
    if (label_idx < 0)
        throw std::runtime_error(path + ": unknown label column '" + label_column + "'");

    std::vector<std::string> names;
    for (std::size_t c = 0; c < t.header.size(); ++c)
        if (static_cast<int>(c) != label_idx) names.push_back(t.header[c]);
    if (names.empty()) throw std::runtime_error(path + ": no feature columns");
    if (feature_names->empty())
        *feature_names = names;
    else if (*feature_names != names)
        throw std::runtime_error(path + ": columns do not match the first file");

    CsvDomain dom;
    dom.features.resize(t.rows.size(), names.size());
    dom.raw_labels.reserve(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        std::size_t fc = 0;
        for (std::size_t c = 0; c < t.header.size(); ++c) {
            if (static_cast<int>(c) == label_idx) continue;
            const std::string& cell = t.rows[r][c];
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument("trailing characters");
                dom.features(r, fc) = v;
            } catch (const std::exception&) {
                throw std::runtime_error(path + ": non-numeric feature value '" + cell +
                                         "' in column '" + t.header[c] + "', data row " +
                                         std::to_string(r + 1));
            }
            ++fc;
        }
        dom.raw_labels.push_back(t.rows[r][static_cast<std::size_t>(label_idx)]);
    }
    if (dom.features.rows == 0) throw std::runtime_error(path + ": no data rows");
    return dom;
}

}  // namespace

DomainSequence load_csv_sequence(const std::vector<std::string>& paths,
                                 const std::string& label_column,
                                 const std::vector<double>& costs, double eval_fraction,
                                 std::uint64_t seed) {
    if (paths.size() < 2)
        throw std::invalid_argument("need at least two CSV files (source and target)");
    if (!(eval_fraction > 0.0 && eval_fraction < 1.0))
        throw std::invalid_argument("eval_fraction must be in (0, 1)");
    const int k = static_cast<int>(paths.size()) - 1;
    check_costs(costs, static_cast<std::size_t>(k));

    std::vector<std::string> feature_names;
    std::vector<CsvDomain> doms;
    doms.reserve(paths.size());
    for (const auto& p : paths) doms.push_back(parse_csv_domain(p, label_column, &feature_names));

    // stable class-id mapping over all files, sorted lexicographically
    std::set<std::string> classes;
    for (const auto& d : doms)
        for (const auto& s : d.raw_labels) classes.insert(s);
    if (classes.size() < 2) throw std::runtime_error("need at least two distinct classes");
    std::map<std::string, int> class_id;
    int next = 1;
    for (const auto& s : classes) class_id[s] = next++;
    const int num_classes = static_cast<int>(classes.size());

    // standardize every file with the source column statistics
    const Matrix& src = doms.front().features;
    const std::size_t d = src.cols;
    std::vector<double> mean(d, 0.0), sd(d, 0.0);
    for (std::size_t i = 0; i < src.rows; ++i)
        for (std::size_t j = 0; j < d; ++j) mean[j] += src(i, j);
    for (std::size_t j = 0; j < d; ++j) mean[j] /= static_cast<double>(src.rows);
    for (std::size_t i = 0; i < src.rows; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = src(i, j) - mean[j];
            sd[j] += diff * diff;
        }
    for (std::size_t j = 0; j < d; ++j) {
        sd[j] = std::sqrt(sd[j] / static_cast<double>(src.rows));
        if (sd[j] == 0.0) sd[j] = 1.0;  // constant column: center only
    }
    for (auto& dom : doms)
        for (std::size_t i = 0; i < dom.features.rows; ++i)
            for (std::size_t j = 0; j < d; ++j)
                dom.features(i, j) = (dom.features(i, j) - mean[j]) / sd[j];

    auto to_labels = [&](const std::vector<std::string>& raw) {
        std::vector<int> out(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) out[i] = class_id.at(raw[i]);
        return out;
    };

    LabeledSet source{std::move(doms.front().features), to_labels(doms.front().raw_labels)};

    std::vector<DomainSequence::Stage> stages;
    for (int j = 1; j < k; ++j) {
        auto& dom = doms[static_cast<std::size_t>(j)];
        DomainSequence::Stage st;
        st.pool = UnlabeledPool(std::move(dom.features), to_labels(dom.raw_labels));
        stages.push_back(std::move(st));
    }

    // target file: held-out eval split, remainder becomes the pool
    auto& tgt = doms.back();
    const std::size_t n_tgt = tgt.features.rows;
    const std::size_t n_eval = static_cast<std::size_t>(
        std::floor(eval_fraction * static_cast<double>(n_tgt)));
    if (n_eval == 0 || n_eval >= n_tgt)
        throw std::runtime_error("eval split would leave an empty pool or eval set");
    Rng rng(mix_seed(seed, 0x6576616c));
    std::vector<std::size_t> perm(n_tgt);
    for (std::size_t i = 0; i < n_tgt; ++i) perm[i] = i;
    rng.shuffle(perm);
    const auto tgt_labels = to_labels(tgt.raw_labels);

    Matrix eval_x(n_eval, d), pool_x(n_tgt - n_eval, d);
    std::vector<int> eval_y(n_eval), pool_y(n_tgt - n_eval);
    for (std::size_t i = 0; i < n_tgt; ++i) {
        const std::size_t srcrow = perm[i];
        if (i < n_eval) {
            for (std::size_t j = 0; j < d; ++j) eval_x(i, j) = tgt.features(srcrow, j);
            eval_y[i] = tgt_labels[srcrow];
        } else {
            const std::size_t r = i - n_eval;
            for (std::size_t j = 0; j < d; ++j) pool_x(r, j) = tgt.features(srcrow, j);
            pool_y[r] = tgt_labels[srcrow];
        }
    }
    DomainSequence::Stage target_stage;
    target_stage.pool = UnlabeledPool(std::move(pool_x), std::move(pool_y));
    stages.push_back(std::move(target_stage));

    return DomainSequence(std::move(source), std::move(stages), costs,
                          LabeledSet{std::move(eval_x), std::move(eval_y)}, num_classes);
}

DomainSequence draw_initial_labels(DomainSequence seq, std::size_t per_domain_count,
                                   std::uint64_t seed) {
    for (int j = 1; j <= seq.k(); ++j) {
        if (per_domain_count > seq.stage(j).pool.size())
            throw std::invalid_argument("initial label count exceeds pool size");
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(j)));
        auto idx = rng.sample_without_replacement(seq.stage(j).pool.size(), per_domain_count);
        // remove from the back so earlier indices stay valid
        std::sort(idx.begin(), idx.end(), std::greater<>());
        for (std::size_t i : idx) seq.annotate(j, i);
    }
    return seq;
}

}  // namespace gdamf
