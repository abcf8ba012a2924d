// Acceptance suite. Runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion; exits nonzero if any fail.

#include "gdamf/allocation.hpp"
#include "gdamf/classifier.hpp"
#include "gdamf/harness.hpp"
#include "gdamf/metrics.hpp"
#include "gdamf/rng.hpp"

#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace {

using namespace gdamf;
using harness::ExperimentSpec;
using harness::Method;
using harness::RunRecord;

constexpr double kPi = 3.14159265358979323846;
constexpr std::uint64_t kBaseSeed = 1;

struct Outcome {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

std::vector<Outcome> g_outcomes;

void run_criterion(const std::string& name, const std::function<std::pair<bool, std::string>()>& fn,
                   double time_limit_s = 0.0) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    out.name = name;
    try {
        const auto [pass, detail] = fn();
        out.pass = pass;
        out.detail = detail;
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    out.seconds = std::chrono::duration<double>(t1 - t0).count();
    if (time_limit_s > 0.0 && out.seconds > time_limit_s) {
        out.pass = false;
        out.detail += " [over the " + std::to_string(static_cast<int>(time_limit_s)) +
                      "s runtime limit]";
    }
    std::printf("[%s] %s (%.1fs) %s\n", out.pass ? "PASS" : "FAIL", out.name.c_str(),
                out.seconds, out.detail.c_str());
    std::fflush(stdout);
    g_outcomes.push_back(std::move(out));
}

double mean_target_accuracy(const std::vector<RunRecord>& records, double budget) {
    double sum = 0.0;
    int n = 0;
    for (const RunRecord& r : records)
        if (r.budget == budget) {
            sum += r.acc_target;
            ++n;
        }
    return sum / static_cast<double>(n);
}

ExperimentSpec moons_spec(Method method, std::size_t n_source, int k_intermediate,
                          std::vector<double> budgets) {
    ExperimentSpec spec;
    spec.dataset.kind = harness::DatasetKind::moons;
    spec.dataset.n_source = n_source;
    spec.dataset.n_per_pool = 1000;
    spec.dataset.n_eval = 1000;
    spec.dataset.k_intermediate = k_intermediate;
    spec.dataset.total_angle = kPi / 2.0;
    spec.dataset.noise = 0.1;
    spec.method = method;
    spec.budgets = std::move(budgets);
    spec.repetitions = 20;
    spec.base_seed = kBaseSeed;
    spec.initial_labels = static_cast<long long>((n_source + 99) / 100);  // n_0 / 100
    return spec;
}

// Desk-scale budget-sweep setting: n_0 = 600 so that the 25% budget affords
// target-only only a handful of labels, separation 1.5 and a pi/4 rotation so
// neither method saturates the Bayes ceiling.
ExperimentSpec gaussians_spec(Method method, std::vector<double> budgets) {
    ExperimentSpec spec;
    spec.dataset.kind = harness::DatasetKind::gaussians;
    spec.dataset.n_source = 600;
    spec.dataset.n_per_pool = 1000;
    spec.dataset.n_eval = 1000;
    spec.dataset.k_intermediate = 2;
    spec.dataset.total_angle = kPi / 4.0;
    spec.dataset.class_separation = 1.5;
    spec.method = method;
    spec.budgets = std::move(budgets);
    spec.costs = {1.0, 2.0, 3.0};
    spec.repetitions = 20;
    spec.base_seed = kBaseSeed;
    spec.initial_labels = 6;  // n_0 / 100
    return spec;
}

// shared across criteria 1, 6, 7, 8, 9
std::map<std::string, std::pair<ExperimentSpec, std::vector<RunRecord>>> g_experiments;

const std::vector<RunRecord>& run_and_keep(const std::string& key, const ExperimentSpec& spec) {
    auto [it, inserted] = g_experiments.try_emplace(key, spec, std::vector<RunRecord>{});
    if (inserted) it->second.second = harness::run_experiment(spec);
    return it->second.second;
}

std::pair<bool, std::string> criterion1() {
    const auto& gst19 =
        run_and_keep("gst19", moons_spec(Method::gradual_self_train, 2000, 19, {0.0}));
    const auto& gst1 =
        run_and_keep("gst1", moons_spec(Method::gradual_self_train, 2000, 1, {0.0}));
    const auto& gdamf1 = run_and_keep("gdamf1_b0", moons_spec(Method::gdamf, 2000, 1, {0.0}));

    const double acc_gst19 = mean_target_accuracy(gst19, 0.0);
    const double acc_gst1 = mean_target_accuracy(gst1, 0.0);
    const double acc_gdamf1 = mean_target_accuracy(gdamf1, 0.0);

    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "GST@19=%.4f GST@1=%.4f GDAMF@1(B=0)=%.4f; need gap(a)>=0.15 got %.4f, "
                  "gap(b)>=0.10 got %.4f",
                  acc_gst19, acc_gst1, acc_gdamf1, acc_gst19 - acc_gst1,
                  acc_gdamf1 - acc_gst1);
    const bool pass = (acc_gst19 - acc_gst1 >= 0.15) && (acc_gdamf1 - acc_gst1 >= 0.10);
    return {pass, detail};
}

std::pair<bool, std::string> criterion2() {
    // fewest and most intermediate domains of the two-moon study
    const DistanceCurve curve = adjacent_distance_curve(
        [](int k_intermediate) {
            return make_rotating_moons(2000, 1000, 1000, k_intermediate, kPi / 2.0, 0.1, 424242);
        },
        {1, 19}, 200, 424242);
    const bool pass = curve.scaled.front() == 1.0 && curve.scaled.back() == 0.0 &&
                      curve.raw.front() > curve.raw.back();
    char detail[160];
    std::snprintf(detail, sizeof(detail), "scaled(K=1)=%g scaled(K=19)=%g raw(K=1)=%.4f raw(K=19)=%.4f",
                  curve.scaled.front(), curve.scaled.back(), curve.raw.front(),
                  curve.raw.back());
    return {pass, detail};
}

std::pair<bool, std::string> criterion3() {
    FidelityEstimate fid;
    fid.rho = {1.0 / std::sqrt(2.0)};
    const auto r = compute_ratios(fid, {1.0, 2.0});
    const auto m = compute_counts(r, {1.0, 2.0}, 100.0);
    const bool worked = std::abs(r[0] - std::sqrt(2.0)) <= 1e-12 && r[1] == 1.0 &&
                        m[0] == 41 && m[1] == 29;

    Rng rng(99);
    int violations = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t k = 1 + rng.uniform_index(6);
        std::vector<double> costs(k);
        double c = 0.0;
        for (auto& v : costs) {
            c += 0.1 + 3.0 * rng.uniform();
            v = c;
        }
        FidelityEstimate f;
        f.rho.resize(k - 1);
        double prev = 0.0;
        for (auto& v : f.rho) {
            prev = prev + (1.0 - prev) * rng.uniform();
            v = prev;
        }
        const double budget = 300.0 * rng.uniform();
        const auto rr = compute_ratios(f, costs);
        if (rr.back() != 1.0) ++violations;
        const auto mm = compute_counts(rr, costs, budget);
        double total = 0.0;
        for (std::size_t s = 0; s < k; ++s) total += static_cast<double>(mm[s]) * costs[s];
        if (total > budget) ++violations;
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "worked example %s, %d violations in 1000 random plans",
                  worked ? "exact" : "WRONG", violations);
    return {worked && violations == 0, detail};
}

std::pair<bool, std::string> criterion4() {
    Rng rng(2024);
    int bad = 0;
    int pairs = 0;
    double worst_rel = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        Architecture arch;
        arch.input_dim = 2 + rng.uniform_index(3);
        arch.num_classes = 2 + static_cast<int>(rng.uniform_index(3));
        if (rng.uniform() < 0.7) arch.hidden_dims = {4 + rng.uniform_index(5)};
        arch.use_batchnorm = rng.uniform() < 0.5 && !arch.hidden_dims.empty();
        arch.dropout_rate = 0.0;

        Classifier c = init_classifier(arch, rep);
        for (double& v : c.theta) v = 0.5 * rng.normal();
        // running variances must stay positive
        const Classifier marker = init_classifier(arch, rep);
        for (std::size_t i = 0; i < c.theta.size(); ++i)
            if (marker.theta[i] == 1.0) c.theta[i] = 0.5 + rng.uniform();

        LabeledSet batch;
        const std::size_t n = 2 + rng.uniform_index(6);
        batch.features.resize(n, arch.input_dim);
        for (double& v : batch.features.data) v = rng.normal();
        batch.labels.resize(n);
        for (auto& y : batch.labels)
            y = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(arch.num_classes)));

        const auto [loss, grad] = loss_and_gradient(c, batch);
        (void)loss;
        for (std::size_t i = 0; i < grad.size(); ++i) {
            const double fd = oracles::central_difference(c, batch, i, 1e-5);
            // relative tolerance 1e-4 with the 1e-7 absolute floor for small
            // coordinates (central differences of an O(1) loss bottom out
            // near 1e-11, so below ~1e-7 only the absolute test is
            // informative)
            const double err = std::abs(fd - grad[i]);
            if (err > 1e-7 + 1e-4 * std::abs(grad[i])) ++bad;
            if (std::abs(grad[i]) >= 1e-7)
                worst_rel = std::max(worst_rel, err / std::abs(grad[i]));
        }
        ++pairs;
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "%d pairs, %d coordinate failures, worst rel err %.2e",
                  pairs, bad, worst_rel);
    return {bad == 0 && pairs == 100, detail};
}

std::pair<bool, std::string> criterion5() {
    Rng rng(555);
    auto random_points = [&](std::size_t n, std::size_t d) {
        Matrix m(n, d);
        for (double& v : m.data) v = rng.normal();
        return m;
    };

    int bad = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 1 + rng.uniform_index(7);
        const std::size_t d = 1 + rng.uniform_index(3);
        const Matrix a = random_points(n, d);
        const Matrix b = random_points(n, d);
        if (std::abs(w_infinity(a, b) - oracles::brute_force_w_infinity(a, b)) > 1e-12) ++bad;
    }

    int axiom_bad = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 1 + rng.uniform_index(6);
        const Matrix a = random_points(n, 2);
        const Matrix b = random_points(n, 2);
        const Matrix c = random_points(n, 2);
        const double ab = w_infinity(a, b);
        const double bc = w_infinity(b, c);
        const double ac = w_infinity(a, c);
        if (std::abs(ab - w_infinity(b, a)) > 1e-12) ++axiom_bad;
        if (w_infinity(a, a) != 0.0) ++axiom_bad;
        if (ac > ab + bc + 1e-12) ++axiom_bad;
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "%d/200 brute-force mismatches, %d axiom violations in 200 triples", bad,
                  axiom_bad);
    return {bad == 0 && axiom_bad == 0, detail};
}

std::pair<bool, std::string> criterion7() {
    // 25/50/75/100 percent of B_max = n0/10 = 60
    const std::vector<double> budgets = {15.0, 30.0, 45.0, 60.0};
    const auto& gdamf = run_and_keep("gauss_gdamf", gaussians_spec(Method::gdamf, budgets));
    const auto& tonly =
        run_and_keep("gauss_tonly", gaussians_spec(Method::target_only, budgets));

    bool dominated = true;
    std::string curve;
    for (double b : budgets) {
        const double g = mean_target_accuracy(gdamf, b);
        const double t = mean_target_accuracy(tonly, b);
        char part[80];
        std::snprintf(part, sizeof(part), " B=%g: %.4f vs %.4f;", b, g, t);
        curve += part;
        if (g < t) dominated = false;
    }
    const double margin25 =
        mean_target_accuracy(gdamf, budgets[0]) - mean_target_accuracy(tonly, budgets[0]);
    const bool pass = dominated && margin25 >= 0.03;
    char detail[320];
    std::snprintf(detail, sizeof(detail), "gdamf vs target_only:%s margin@25%%=%.4f",
                  curve.c_str(), margin25);
    return {pass, detail};
}

std::pair<bool, std::string> criterion6() {
    // budget safety plus bit-identical reruns for every experiment of
    // criteria 1 and 7
    const char* keys[] = {"gst19", "gst1", "gdamf1_b0", "gauss_gdamf", "gauss_tonly"};
    int overspends = 0;
    int mismatches = 0;
    for (const char* key : keys) {
        const auto& [spec, records] = g_experiments.at(key);
        for (const RunRecord& r : records)
            if (r.spent > r.budget) ++overspends;
        const auto rerun = harness::run_experiment(spec);
        if (rerun.size() != records.size()) {
            ++mismatches;
            continue;
        }
        for (std::size_t i = 0; i < rerun.size(); ++i) {
            if (rerun[i].acc.size() != records[i].acc.size() ||
                std::memcmp(rerun[i].acc.data(), records[i].acc.data(),
                            rerun[i].acc.size() * sizeof(double)) != 0)
                ++mismatches;
            if (rerun[i].spent != records[i].spent || rerun[i].m_bar != records[i].m_bar)
                ++mismatches;
        }
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "%d overspends, %d rerun mismatches across 5 experiments", overspends,
                  mismatches);
    return {overspends == 0 && mismatches == 0, detail};
}

std::pair<bool, std::string> criterion8() {
    // desk-scale ablation setting: n0 = 600 keeps the per-domain labeled sets
    // small enough that warm-starting carries real information
    const std::size_t n0 = 600;
    const double b_max = 60.0;  // n0 / 10
    const auto& full = run_and_keep("abl_full", moons_spec(Method::gdamf, n0, 1, {b_max}));
    const auto& no_alint = run_and_keep(
        "abl_no_al_int", moons_spec(Method::gdamf_no_al_no_intermediate, n0, 1, {b_max}));
    const auto& no_warm =
        run_and_keep("abl_no_warm", moons_spec(Method::gdamf_no_warm_start, n0, 1, {b_max}));

    const double acc_full = mean_target_accuracy(full, b_max);
    const double acc_no_alint = mean_target_accuracy(no_alint, b_max);
    const double acc_no_warm = mean_target_accuracy(no_warm, b_max);
    const bool pass =
        acc_full >= acc_no_alint + 0.03 && acc_full >= acc_no_warm + 0.03;
    char detail[240];
    std::snprintf(detail, sizeof(detail),
                  "full=%.4f w/o-AL/intermediate=%.4f w/o-warm-start=%.4f (margins %.4f, %.4f)",
                  acc_full, acc_no_alint, acc_no_warm, acc_full - acc_no_alint,
                  acc_full - acc_no_warm);
    return {pass, detail};
}

std::pair<bool, std::string> criterion9() {
    auto target_cost_fraction = [](const std::vector<RunRecord>& records) {
        double sum = 0.0;
        int n = 0;
        for (const RunRecord& r : records) {
            if (r.spent <= 0.0) continue;
            const int target = r.domains.back();
            double target_cost = 0.0;
            for (std::size_t i = 0; i < r.domains.size(); ++i)
                if (r.domains[i] == target)
                    target_cost = static_cast<double>(r.m_bar[i]) * 2.0;  // c^(K) = K = 2
            sum += target_cost / r.spent;
            ++n;
        }
        return sum / static_cast<double>(n);
    };
    const auto& full = g_experiments.at("abl_full").second;
    const auto& no_warm = g_experiments.at("abl_no_warm").second;
    const double frac_full = target_cost_fraction(full);
    const double frac_no_warm = target_cost_fraction(no_warm);
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "target cost share: full=%.4f w/o-warm-start=%.4f (need strictly larger)",
                  frac_full, frac_no_warm);
    return {frac_no_warm > frac_full, detail};
}

std::pair<bool, std::string> extra_budget_monotonicity() {
    // harness example: GDAMF mean accuracy nondecreasing in budget within a
    // 0.03 noise band (data already computed for criterion 7)
    const auto& gdamf = g_experiments.at("gauss_gdamf").second;
    const std::vector<double> budgets = {15.0, 30.0, 45.0, 60.0};
    bool pass = true;
    std::string curve;
    double prev = 0.0;
    for (std::size_t i = 0; i < budgets.size(); ++i) {
        const double m = mean_target_accuracy(gdamf, budgets[i]);
        char part[48];
        std::snprintf(part, sizeof(part), " %.4f", m);
        curve += part;
        if (i > 0 && m < prev - 0.03) pass = false;
        prev = m;
    }
    return {pass, "means by budget:" + curve};
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    run_criterion("1. two-moon trend: GST degrades with sparse chains, GDAMF holds at B=0",
                  criterion1, 600.0);
    run_criterion("2. distance-curve endpoints scale to exactly 1 and 0", criterion2);
    run_criterion("3. allocation arithmetic: worked example + 1000 feasible random plans",
                  criterion3);
    run_criterion("4. analytic gradients match central finite differences", criterion4, 60.0);
    run_criterion("5. bottleneck solver equals brute force; metric axioms hold", criterion5);
    run_criterion("7. budget sweep: GDAMF dominates target-only on rotating gaussians",
                  criterion7, 1200.0);
    run_criterion("6. budget safety and bit-identical reruns", criterion6);
    run_criterion("8. ablations lose at least 0.03 mean accuracy", criterion8);
    run_criterion("9. no-warm-start shifts query cost toward the target", criterion9);
    run_criterion("extra: GDAMF accuracy nondecreasing in budget (0.03 band)",
                  extra_budget_monotonicity);

    int failures = 0;
    for (const Outcome& o : g_outcomes)
        if (!o.pass) ++failures;
    std::printf("%d/%zu passed\n", static_cast<int>(g_outcomes.size()) - failures,
                g_outcomes.size());
    return failures == 0 ? 0 : 1;
}
