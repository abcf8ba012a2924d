#include "gdamf/classifier.hpp"

#include "gdamf/kernels.hpp"
#include "gdamf/rng.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace gdamf {

namespace {

constexpr double kBnEps = 1e-5;
constexpr double kBnMomentum = 0.1;
constexpr double kLeakySlope = 0.01;
constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

struct LayerOffsets {
    std::size_t in = 0, out = 0;
    std::size_t w = 0, b = 0;
    std::size_t gamma = 0, beta = 0, rmean = 0, rvar = 0;  // valid when bn
    bool bn = false;
};

struct ParamLayout {
    std::vector<LayerOffsets> hidden;
    std::size_t out_in = 0;
    std::size_t out_w = 0, out_b = 0;
    std::size_t total = 0;
};

ParamLayout layout_of(const Architecture& arch) {
    ParamLayout lay;
    std::size_t pos = 0;
    std::size_t in = arch.input_dim;
    for (std::size_t h : arch.hidden_dims) {
        LayerOffsets lo;
        lo.in = in;
        lo.out = h;
        lo.bn = arch.use_batchnorm;
        lo.w = pos;
        pos += in * h;
        lo.b = pos;
        pos += h;
        if (lo.bn) {
            lo.gamma = pos;
            pos += h;
            lo.beta = pos;
            pos += h;
            lo.rmean = pos;
            pos += h;
            lo.rvar = pos;
            pos += h;
        }
        lay.hidden.push_back(lo);
        in = h;
    }
    lay.out_in = in;
    lay.out_w = pos;
    pos += in * static_cast<std::size_t>(arch.num_classes);
    lay.out_b = pos;
    pos += static_cast<std::size_t>(arch.num_classes);
    lay.total = pos;
    return lay;
}

// X * W + b with W stored flat (in x out, row-major).
void linear(const Matrix& x, const double* theta, std::size_t w_off, std::size_t b_off,
            std::size_t in, std::size_t out, Matrix& y) {
    Matrix w(in, out);
    for (std::size_t i = 0; i < in * out; ++i) w.data[i] = theta[w_off + i];
    kernels::matmul(x, w, y);
    const double* b = theta + b_off;
    for (std::size_t i = 0; i < y.rows; ++i) {
        double* yi = y.row(i);
        for (std::size_t j = 0; j < out; ++j) yi[j] += b[j];
    }
}

struct ForwardCache {
    const Matrix* input = nullptr;
    // per hidden layer
    std::vector<Matrix> lin;    // linear output A
    std::vector<Matrix> xhat;   // batchnorm normalized input (train mode)
    std::vector<Matrix> act;    // post-activation S
    std::vector<Matrix> out;    // layer output (post dropout) = input to next
    std::vector<std::vector<double>> mu, var, istd;
    // output layer
    Matrix logits, logp, probs;
};

// batch_stats: normalize with batch statistics (training-mode network);
// otherwise with the running statistics stored in theta. masks may be nullptr.
void forward_pass(const Architecture& arch, const ParamLayout& lay, const double* theta,
                  const Matrix& x, bool batch_stats, const std::vector<Matrix>* masks,
                  ForwardCache& cache) {
    const std::size_t nl = lay.hidden.size();
    cache.input = &x;
    cache.lin.resize(nl);
    cache.xhat.resize(nl);
    cache.act.resize(nl);
    cache.out.resize(nl);
    cache.mu.assign(nl, {});
    cache.var.assign(nl, {});
    cache.istd.assign(nl, {});

    const Matrix* cur = &x;
    const double n_inv = x.rows > 0 ? 1.0 / static_cast<double>(x.rows) : 0.0;
    for (std::size_t li = 0; li < nl; ++li) {
        const LayerOffsets& lo = lay.hidden[li];
        Matrix& a = cache.lin[li];
        linear(*cur, theta, lo.w, lo.b, lo.in, lo.out, a);

        Matrix& s = cache.act[li];
        if (lo.bn) {
            Matrix& xh = cache.xhat[li];
            xh.resize(a.rows, a.cols);
            auto& istd = cache.istd[li];
            istd.assign(lo.out, 0.0);
            if (batch_stats) {
                auto& mu = cache.mu[li];
                auto& var = cache.var[li];
                mu.assign(lo.out, 0.0);
                var.assign(lo.out, 0.0);
                for (std::size_t i = 0; i < a.rows; ++i) {
                    const double* ai = a.row(i);
                    for (std::size_t j = 0; j < lo.out; ++j) mu[j] += ai[j];
                }
                for (std::size_t j = 0; j < lo.out; ++j) mu[j] *= n_inv;
                for (std::size_t i = 0; i < a.rows; ++i) {
                    const double* ai = a.row(i);
                    for (std::size_t j = 0; j < lo.out; ++j) {
                        const double d = ai[j] - mu[j];
                        var[j] += d * d;
                    }
                }
                for (std::size_t j = 0; j < lo.out; ++j) var[j] *= n_inv;
                for (std::size_t j = 0; j < lo.out; ++j)
                    istd[j] = 1.0 / std::sqrt(var[j] + kBnEps);
                for (std::size_t i = 0; i < a.rows; ++i) {
                    const double* ai = a.row(i);
                    double* xi = xh.row(i);
                    for (std::size_t j = 0; j < lo.out; ++j) xi[j] = (ai[j] - mu[j]) * istd[j];
                }
            } else {
                const double* rm = theta + lo.rmean;
                const double* rv = theta + lo.rvar;
                for (std::size_t j = 0; j < lo.out; ++j)
                    istd[j] = 1.0 / std::sqrt(rv[j] + kBnEps);
                for (std::size_t i = 0; i < a.rows; ++i) {
                    const double* ai = a.row(i);
                    double* xi = xh.row(i);
                    for (std::size_t j = 0; j < lo.out; ++j) xi[j] = (ai[j] - rm[j]) * istd[j];
                }
            }
            const double* gamma = theta + lo.gamma;
            const double* beta = theta + lo.beta;
            s.resize(a.rows, a.cols);
            for (std::size_t i = 0; i < a.rows; ++i) {
                const double* xi = xh.row(i);
                double* si = s.row(i);
                for (std::size_t j = 0; j < lo.out; ++j) si[j] = gamma[j] * xi[j] + beta[j];
            }
        } else {
            s = a;
        }
        // leaky ReLU in place
        for (double& v : s.data) v = v > 0.0 ? v : kLeakySlope * v;

        Matrix& o = cache.out[li];
        if (masks != nullptr) {
            const Matrix& m = (*masks)[li];
            o.resize(s.rows, s.cols);
            for (std::size_t i = 0; i < s.data.size(); ++i) o.data[i] = s.data[i] * m.data[i];
        } else {
            o = s;
        }
        cur = &o;
    }

    linear(*cur, theta, lay.out_w, lay.out_b, lay.out_in,
           static_cast<std::size_t>(arch.num_classes), cache.logits);

    // log-softmax
    const std::size_t L = static_cast<std::size_t>(arch.num_classes);
    cache.logp.resize(cache.logits.rows, L);
    cache.probs.resize(cache.logits.rows, L);
    for (std::size_t i = 0; i < cache.logits.rows; ++i) {
        const double* z = cache.logits.row(i);
        double mx = z[0];
        for (std::size_t j = 1; j < L; ++j) mx = z[j] > mx ? z[j] : mx;
        double sum = 0.0;
        for (std::size_t j = 0; j < L; ++j) sum += std::exp(z[j] - mx);
        const double lse = mx + std::log(sum);
        double* lp = cache.logp.row(i);
        double* p = cache.probs.row(i);
        for (std::size_t j = 0; j < L; ++j) {
            lp[j] = z[j] - lse;
            p[j] = std::exp(lp[j]);
        }
    }
}

double loss_from_cache(const ForwardCache& cache, const std::vector<int>& labels) {
    double sum = 0.0;
    for (std::size_t i = 0; i < cache.logp.rows; ++i)
        sum += -cache.logp(i, static_cast<std::size_t>(labels[i] - 1));
    return sum / static_cast<double>(labels.size());
}

// Gradient of the mean cross-entropy w.r.t. theta for a training-mode forward
// (batch statistics). Running-statistic coordinates stay zero.
void backward_pass(const Architecture& arch, const ParamLayout& lay, const double* theta,
                   const ForwardCache& cache, const std::vector<int>& labels,
                   const std::vector<Matrix>* masks, std::vector<double>& grad) {
    grad.assign(lay.total, 0.0);
    const std::size_t n = cache.probs.rows;
    const std::size_t L = static_cast<std::size_t>(arch.num_classes);
    const double n_inv = 1.0 / static_cast<double>(n);

    Matrix delta = cache.probs;  // (P - Y) / n
    for (std::size_t i = 0; i < n; ++i)
        delta(i, static_cast<std::size_t>(labels[i] - 1)) -= 1.0;
    for (double& v : delta.data) v *= n_inv;

    const std::size_t nl = lay.hidden.size();
    const Matrix& last_h = nl > 0 ? cache.out[nl - 1] : *cache.input;

    // output layer
    Matrix dw;
    kernels::matmul_at_b(last_h, delta, dw);
    for (std::size_t i = 0; i < dw.data.size(); ++i) grad[lay.out_w + i] = dw.data[i];
    for (std::size_t i = 0; i < n; ++i) {
        const double* di = delta.row(i);
        for (std::size_t j = 0; j < L; ++j) grad[lay.out_b + j] += di[j];
    }
    Matrix wout(lay.out_in, L);
    for (std::size_t i = 0; i < wout.data.size(); ++i) wout.data[i] = theta[lay.out_w + i];
    Matrix dh;
    kernels::matmul_a_bt(delta, wout, dh);

    for (std::size_t li = nl; li-- > 0;) {
        const LayerOffsets& lo = lay.hidden[li];
        // through dropout
        if (masks != nullptr) {
            const Matrix& m = (*masks)[li];
            for (std::size_t i = 0; i < dh.data.size(); ++i) dh.data[i] *= m.data[i];
        }
        // through leaky ReLU (cache.act holds post-activation values; the
        // sign matches the pre-activation sign)
        const Matrix& s = cache.act[li];
        for (std::size_t i = 0; i < dh.data.size(); ++i)
            if (s.data[i] <= 0.0) dh.data[i] *= kLeakySlope;

        Matrix da;
        if (lo.bn) {
            const Matrix& xh = cache.xhat[li];
            const auto& istd = cache.istd[li];
            const double* gamma = theta + lo.gamma;
            // dgamma, dbeta
            for (std::size_t i = 0; i < n; ++i) {
                const double* di = dh.row(i);
                const double* xi = xh.row(i);
                for (std::size_t j = 0; j < lo.out; ++j) {
                    grad[lo.gamma + j] += di[j] * xi[j];
                    grad[lo.beta + j] += di[j];
                }
            }
            // dxhat and its column sums
            Matrix dxh(n, lo.out);
            std::vector<double> sum1(lo.out, 0.0), sum2(lo.out, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                const double* di = dh.row(i);
                const double* xi = xh.row(i);
                double* oi = dxh.row(i);
                for (std::size_t j = 0; j < lo.out; ++j) {
                    oi[j] = di[j] * gamma[j];
                    sum1[j] += oi[j];
                    sum2[j] += oi[j] * xi[j];
                }
            }
            da.resize(n, lo.out);
            const double nn = static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double* oi = dxh.row(i);
                const double* xi = xh.row(i);
                double* ai = da.row(i);
                for (std::size_t j = 0; j < lo.out; ++j)
                    ai[j] = istd[j] * n_inv * (nn * oi[j] - sum1[j] - xi[j] * sum2[j]);
            }
        } else {
            da = dh;
        }

        const Matrix& prev = li > 0 ? cache.out[li - 1] : *cache.input;
        Matrix dwl;
        kernels::matmul_at_b(prev, da, dwl);
        for (std::size_t i = 0; i < dwl.data.size(); ++i) grad[lo.w + i] = dwl.data[i];
        for (std::size_t i = 0; i < n; ++i) {
            const double* ai = da.row(i);
            for (std::size_t j = 0; j < lo.out; ++j) grad[lo.b + j] += ai[j];
        }
        if (li > 0) {
            Matrix wl(lo.in, lo.out);
            for (std::size_t i = 0; i < wl.data.size(); ++i) wl.data[i] = theta[lo.w + i];
            kernels::matmul_a_bt(da, wl, dh);
        }
    }
}

void validate_training_set(const Architecture& arch, const LabeledSet& data) {
    if (data.empty()) throw std::invalid_argument("empty training set");
    data.validate(arch.num_classes);
    if (data.features.cols != arch.input_dim)
        throw std::invalid_argument("training data feature dimension mismatch");
}

Classifier train_impl(Classifier start, const LabeledSet& data, const TrainConfig& cfg) {
    cfg.validate();
    validate_training_set(start.arch, data);
    if (cfg.epochs == 0) return start;

    const Architecture& arch = start.arch;
    const ParamLayout lay = layout_of(arch);
    std::vector<double>& theta = start.theta;

    // trainable coordinate ranges (everything except running statistics)
    std::vector<std::pair<std::size_t, std::size_t>> trainable;
    std::vector<std::pair<std::size_t, std::size_t>> weight_ranges;
    for (const LayerOffsets& lo : lay.hidden) {
        trainable.push_back({lo.w, lo.in * lo.out});
        weight_ranges.push_back({lo.w, lo.in * lo.out});
        trainable.push_back({lo.b, lo.out});
        if (lo.bn) {
            trainable.push_back({lo.gamma, lo.out});
            trainable.push_back({lo.beta, lo.out});
        }
    }
    const std::size_t L = static_cast<std::size_t>(arch.num_classes);
    trainable.push_back({lay.out_w, lay.out_in * L});
    weight_ranges.push_back({lay.out_w, lay.out_in * L});
    trainable.push_back({lay.out_b, L});

    std::vector<double> adam_m, adam_v;
    if (cfg.optimizer == OptimizerKind::adam) {
        adam_m.assign(lay.total, 0.0);
        adam_v.assign(lay.total, 0.0);
    }
    long long step = 0;

    Rng rng(mix_seed(cfg.seed, 0x7261696e));  // training stream
    const std::size_t n = data.size();
    const std::size_t bs = static_cast<std::size_t>(cfg.batch_size);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    const bool use_dropout = arch.dropout_rate > 0.0 && !arch.hidden_dims.empty();
    std::vector<Matrix> masks(arch.hidden_dims.size());
    ForwardCache cache;
    std::vector<double> grad;
    std::vector<std::size_t> idx;
    std::vector<int> yb;

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(perm);
        for (std::size_t off = 0; off < n; off += bs) {
            const std::size_t cur = std::min(bs, n - off);
            idx.assign(perm.begin() + static_cast<std::ptrdiff_t>(off),
                       perm.begin() + static_cast<std::ptrdiff_t>(off + cur));
            Matrix xb = gather_rows(data.features, idx);
            yb.resize(cur);
            for (std::size_t i = 0; i < cur; ++i) yb[i] = data.labels[idx[i]];

            const std::vector<Matrix>* mask_ptr = nullptr;
            if (use_dropout) {
                const double p = arch.dropout_rate;
                const double scale = 1.0 / (1.0 - p);
                for (std::size_t li = 0; li < masks.size(); ++li) {
                    Matrix& m = masks[li];
                    m.resize(cur, arch.hidden_dims[li]);
                    for (double& v : m.data) v = rng.uniform() >= p ? scale : 0.0;
                }
                mask_ptr = &masks;
            }

            forward_pass(arch, lay, theta.data(), xb, /*batch_stats=*/true, mask_ptr, cache);

            // running-statistic update from this batch
            for (std::size_t li = 0; li < lay.hidden.size(); ++li) {
                const LayerOffsets& lo = lay.hidden[li];
                if (!lo.bn) continue;
                for (std::size_t j = 0; j < lo.out; ++j) {
                    theta[lo.rmean + j] = (1.0 - kBnMomentum) * theta[lo.rmean + j] +
                                          kBnMomentum * cache.mu[li][j];
                    theta[lo.rvar + j] = (1.0 - kBnMomentum) * theta[lo.rvar + j] +
                                         kBnMomentum * cache.var[li][j];
                }
            }

            backward_pass(arch, lay, theta.data(), cache, yb, mask_ptr, grad);

            if (cfg.weight_decay > 0.0)
                for (const auto& [o, len] : weight_ranges)
                    for (std::size_t i = 0; i < len; ++i) grad[o + i] += cfg.weight_decay * theta[o + i];

            ++step;
            if (cfg.optimizer == OptimizerKind::adam) {
                const double bc1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(step));
                const double bc2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(step));
                for (const auto& [o, len] : trainable) {
                    for (std::size_t i = o; i < o + len; ++i) {
                        adam_m[i] = kAdamBeta1 * adam_m[i] + (1.0 - kAdamBeta1) * grad[i];
                        adam_v[i] = kAdamBeta2 * adam_v[i] + (1.0 - kAdamBeta2) * grad[i] * grad[i];
                        const double mhat = adam_m[i] / bc1;
                        const double vhat = adam_v[i] / bc2;
                        theta[i] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + kAdamEps);
                    }
                }
            } else {
                for (const auto& [o, len] : trainable)
                    for (std::size_t i = o; i < o + len; ++i)
                        theta[i] -= cfg.learning_rate * grad[i];
            }
        }
    }
    return start;
}

}  // namespace

void Architecture::validate() const {
    if (input_dim < 1) throw std::invalid_argument("input_dim must be >= 1");
    if (num_classes < 2) throw std::invalid_argument("num_classes must be >= 2");
    for (std::size_t h : hidden_dims)
        if (h < 1) throw std::invalid_argument("hidden layer width must be >= 1");
    if (!(dropout_rate >= 0.0 && dropout_rate < 1.0))
        throw std::invalid_argument("dropout_rate must be in [0, 1)");
}

std::size_t Architecture::theta_size() const { return layout_of(*this).total; }

Architecture default_architecture(std::size_t input_dim, int num_classes) {
    Architecture arch;
    arch.input_dim = input_dim;
    arch.hidden_dims = {32};
    arch.num_classes = num_classes;
    arch.dropout_rate = 0.1;
    arch.use_batchnorm = true;
    return arch;
}

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
    if (epochs < 0) throw std::invalid_argument("epochs must be nonnegative");
    if (batch_size < 1) throw std::invalid_argument("batch_size must be positive");
    if (weight_decay < 0.0) throw std::invalid_argument("weight_decay must be nonnegative");
}

void LabeledSet::append(const double* x, std::size_t len, int label) {
    append_row(features, x, len);
    labels.push_back(label);
}

void LabeledSet::validate(int num_classes) const {
    if (features.rows != labels.size())
        throw std::invalid_argument("labeled set row/label count mismatch");
    for (int y : labels)
        if (y < 1 || y > num_classes) throw std::invalid_argument("label out of range");
}

UnlabeledPool::UnlabeledPool(Matrix features, std::vector<int> hidden_labels)
    : features_(std::move(features)), hidden_labels_(std::move(hidden_labels)) {
    if (features_.rows != hidden_labels_.size())
        throw std::invalid_argument("pool row/label count mismatch");
}

Classifier init_classifier(const Architecture& arch, std::uint64_t seed) {
    arch.validate();
    const ParamLayout lay = layout_of(arch);
    Classifier c;
    c.arch = arch;
    c.rng_seed = seed;
    c.theta.assign(lay.total, 0.0);
    Rng rng(mix_seed(seed, 0x696e6974));  // init stream
    for (const LayerOffsets& lo : lay.hidden) {
        const double a = std::sqrt(6.0 / static_cast<double>(lo.in + lo.out));
        for (std::size_t i = 0; i < lo.in * lo.out; ++i) c.theta[lo.w + i] = rng.uniform(-a, a);
        if (lo.bn) {
            for (std::size_t j = 0; j < lo.out; ++j) c.theta[lo.gamma + j] = 1.0;
            for (std::size_t j = 0; j < lo.out; ++j) c.theta[lo.rvar + j] = 1.0;
        }
    }
    const std::size_t L = static_cast<std::size_t>(arch.num_classes);
    const double a = std::sqrt(6.0 / static_cast<double>(lay.out_in + L));
    for (std::size_t i = 0; i < lay.out_in * L; ++i) c.theta[lay.out_w + i] = rng.uniform(-a, a);
    return c;
}

Classifier train(const Architecture& arch, const LabeledSet& data, const TrainConfig& cfg) {
    return train_impl(init_classifier(arch, cfg.seed), data, cfg);
}

Classifier train(const Classifier& init, const LabeledSet& data, const TrainConfig& cfg) {
    Classifier start = init;
    start.rng_seed = cfg.seed;
    return train_impl(std::move(start), data, cfg);
}

std::vector<double> predict_proba(const Classifier& c, std::span<const double> x) {
    if (x.size() != c.arch.input_dim)
        throw std::invalid_argument("predict_proba: feature dimension mismatch");
    Matrix xb(1, c.arch.input_dim);
    for (std::size_t j = 0; j < x.size(); ++j) xb(0, j) = x[j];
    Matrix p = predict_proba_batch(c, xb);
    return std::vector<double>(p.data.begin(), p.data.end());
}

Matrix predict_proba_batch(const Classifier& c, const Matrix& x) {
    if (x.cols != c.arch.input_dim)
        throw std::invalid_argument("predict_proba: feature dimension mismatch");
    const ParamLayout lay = layout_of(c.arch);
    if (c.theta.size() != lay.total) throw std::invalid_argument("theta size mismatch");
    ForwardCache cache;
    forward_pass(c.arch, lay, c.theta.data(), x, /*batch_stats=*/false, nullptr, cache);
    return std::move(cache.probs);
}

std::pair<double, std::vector<double>> loss_and_gradient(const Classifier& c,
                                                         const LabeledSet& batch) {
    validate_training_set(c.arch, batch);
    const ParamLayout lay = layout_of(c.arch);
    if (c.theta.size() != lay.total) throw std::invalid_argument("theta size mismatch");
    ForwardCache cache;
    forward_pass(c.arch, lay, c.theta.data(), batch.features, /*batch_stats=*/true, nullptr,
                 cache);
    std::vector<double> grad;
    backward_pass(c.arch, lay, c.theta.data(), cache, batch.labels, nullptr, grad);
    return {loss_from_cache(cache, batch.labels), std::move(grad)};
}

double mean_cross_entropy(const Classifier& c, const LabeledSet& data) {
    validate_training_set(c.arch, data);
    const ParamLayout lay = layout_of(c.arch);
    ForwardCache cache;
    forward_pass(c.arch, lay, c.theta.data(), data.features, /*batch_stats=*/false, nullptr,
                 cache);
    return loss_from_cache(cache, data.labels);
}

namespace {

nlohmann::json arch_to_json(const Architecture& a) {
    return {{"input_dim", a.input_dim},
            {"hidden_dims", a.hidden_dims},
            {"num_classes", a.num_classes},
            {"dropout_rate", a.dropout_rate},
            {"use_batchnorm", a.use_batchnorm}};
}

Architecture arch_from_json(const nlohmann::json& j) {
    Architecture a;
    a.input_dim = j.at("input_dim").get<std::size_t>();
    a.hidden_dims = j.at("hidden_dims").get<std::vector<std::size_t>>();
    a.num_classes = j.at("num_classes").get<int>();
    a.dropout_rate = j.at("dropout_rate").get<double>();
    a.use_batchnorm = j.at("use_batchnorm").get<bool>();
    a.validate();
    return a;
}

}  // namespace

void save_classifier(const Classifier& c, std::ostream& out) {
    nlohmann::json j;
    j["format"] = "gdamf-classifier";
    j["version"] = 1;
    j["arch"] = arch_to_json(c.arch);
    j["rng_seed"] = c.rng_seed;
    j["theta"] = c.theta;
    out << j.dump() << '\n';
}

Classifier load_classifier(std::istream& in) {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("format").get<std::string>() != "gdamf-classifier")
        throw std::invalid_argument("not a classifier record");
    Classifier c;
    c.arch = arch_from_json(j.at("arch"));
    c.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    c.theta = j.at("theta").get<std::vector<double>>();
    if (c.theta.size() != c.arch.theta_size())
        throw std::invalid_argument("classifier record: theta size mismatch");
    return c;
}

void save_classifier_file(const Classifier& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    save_classifier(c, out);
}

Classifier load_classifier_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return load_classifier(in);
}

}  // namespace gdamf
