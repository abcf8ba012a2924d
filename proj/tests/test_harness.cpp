#include "gdamf/harness.hpp"

#include "gdamf/csv.hpp"

#include "doctest.h"

#include <cmath>
#include <cstring>
#include <sstream>

using namespace gdamf;
using namespace gdamf::harness;

namespace {

ExperimentSpec tiny_spec(Method method) {
    ExperimentSpec spec;
    spec.dataset.kind = DatasetKind::moons;
    spec.dataset.n_source = 120;
    spec.dataset.n_per_pool = 60;
    spec.dataset.n_eval = 60;
    spec.dataset.k_intermediate = 1;
    spec.method = method;
    spec.budgets = {6.0};
    spec.repetitions = 2;
    spec.base_seed = 5;
    spec.train.epochs = 6;
    spec.initial_labels = 4;
    spec.probe_count = 50;
    return spec;
}

}  // namespace

TEST_CASE("spec text parses, overrides apply, unknown keys fail") {
    std::istringstream in(
        "# comment\n"
        "dataset = gaussians\n"
        "n_source = 300   # inline comment\n"
        "k_intermediate = 2\n"
        "method = target_only\n"
        "budgets = 10, 20\n"
        "costs = 1,2,3\n"
        "repetitions = 4\n"
        "optimizer = sgd\n"
        "hidden_dims = 16,8\n"
        "batchnorm = false\n");
    ExperimentSpec spec = parse_spec_text(in, "test");
    CHECK(spec.dataset.kind == DatasetKind::gaussians);
    CHECK(spec.dataset.n_source == 300);
    CHECK(spec.method == Method::target_only);
    CHECK(spec.budgets == std::vector<double>{10.0, 20.0});
    CHECK(spec.costs == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(spec.repetitions == 4);
    CHECK(spec.train.optimizer == OptimizerKind::sgd);
    CHECK(spec.hidden_dims == std::vector<std::size_t>{16, 8});
    CHECK(spec.batchnorm == false);

    apply_override(spec, "budgets", "42");
    CHECK(spec.budgets == std::vector<double>{42.0});
    CHECK_THROWS(apply_override(spec, "no_such_key", "1"));
    CHECK_THROWS(apply_override(spec, "repetitions", "many"));

    std::istringstream bad("dataset moons\n");
    CHECK_THROWS(parse_spec_text(bad, "test"));
}

TEST_CASE("spec validation catches bad configurations before running") {
    ExperimentSpec spec = tiny_spec(Method::gdamf);
    spec.repetitions = 0;
    CHECK_THROWS(spec.validate());

    spec = tiny_spec(Method::gdamf);
    spec.costs = {2.0, 1.0};
    CHECK_THROWS(spec.validate());

    spec = tiny_spec(Method::gdamf);
    spec.costs = {1.0, 2.0, 3.0};  // K is 2
    CHECK_THROWS(spec.validate());

    spec = tiny_spec(Method::target_only);
    spec.budgets = {1.0};  // cannot afford one target label at cost 2
    CHECK_THROWS(spec.validate());

    spec = tiny_spec(Method::gdamf);
    spec.initial_labels = 0;
    CHECK_THROWS(spec.validate());

    spec = tiny_spec(Method::gdamf);
    spec.dataset.kind = DatasetKind::csv;
    CHECK_THROWS(spec.validate());  // no csv paths
}

TEST_CASE("spec hash is stable and ignores output fields") {
    ExperimentSpec a = tiny_spec(Method::gdamf);
    ExperimentSpec b = a;
    b.output_dir = "elsewhere";
    b.workers = 4;
    CHECK(spec_hash(a) == spec_hash(b));
    b.base_seed = 6;
    CHECK(spec_hash(a) != spec_hash(b));
    CHECK(spec_hash(a).size() == 16);
}

TEST_CASE("zero-budget runs spend nothing and fill every column") {
    ExperimentSpec spec = tiny_spec(Method::gdamf);
    spec.budgets = {0.0};
    spec.repetitions = 3;
    const auto records = run_experiment(spec);
    REQUIRE(records.size() == 3);
    for (const auto& rec : records) {
        CHECK(rec.spent == 0.0);
        CHECK(rec.domains == std::vector<int>{0, 1, 2});
        CHECK(rec.m_bar == std::vector<long long>{0, 0, 0});
        CHECK(rec.acc_target == rec.acc.back());
        for (double a : rec.acc) {
            CHECK(a >= 0.0);
            CHECK(a <= 1.0);
        }
    }

    std::ostringstream out;
    write_records_csv(records, out);
    std::istringstream in(out.str());
    const auto rows = read_records_csv(in, "mem");
    REQUIRE(rows.size() == 9);  // 3 reps x 3 domains
    CHECK(rows[0].method == "gdamf");
    CHECK(rows[0].budget == 0.0);

    const std::string header = out.str().substr(0, out.str().find('\n'));
    CHECK(header == "method,budget,rep,seed,domain,m_bar,spent,acc_target,acc_domain_j,duration_ms");
}

TEST_CASE("target_only buys exactly floor(B / c_K) labels") {
    ExperimentSpec spec = tiny_spec(Method::target_only);
    spec.budgets = {7.0};  // c_K = 2 -> 3 labels
    spec.repetitions = 1;
    const auto records = run_experiment(spec);
    REQUIRE(records.size() == 1);
    CHECK(records[0].domains == std::vector<int>{2});
    CHECK(records[0].m_bar == std::vector<long long>{3});
    CHECK(records[0].spent == 6.0);
    CHECK(records[0].history.empty());
}

TEST_CASE("gradual_self_train ignores the budget") {
    ExperimentSpec spec = tiny_spec(Method::gradual_self_train);
    spec.budgets = {6.0};
    spec.repetitions = 1;
    const auto records = run_experiment(spec);
    REQUIRE(records.size() == 1);
    CHECK(records[0].spent == 0.0);
    CHECK(records[0].m_bar == std::vector<long long>{0, 0, 0});
}

TEST_CASE("default budget list follows the B_max convention") {
    ExperimentSpec spec = tiny_spec(Method::gdamf);
    spec.budgets.clear();
    spec.dataset.n_source = 123;
    CHECK(spec.effective_budgets() == std::vector<double>{13.0});  // ceil(123/10)
    spec.budgets = {5.0};
    CHECK(spec.effective_budgets() == std::vector<double>{5.0});
    spec.budgets.clear();
    spec.dataset.kind = DatasetKind::csv;
    CHECK_THROWS(spec.effective_budgets());
}

TEST_CASE("worker count does not change the records") {
    ExperimentSpec spec = tiny_spec(Method::gdamf);
    spec.repetitions = 3;
    spec.workers = 1;
    const auto serial = run_experiment(spec);
    spec.workers = 3;
    const auto parallel = run_experiment(spec);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].rep == parallel[i].rep);
        CHECK(serial[i].acc == parallel[i].acc);
        CHECK(serial[i].m_bar == parallel[i].m_bar);
        CHECK(serial[i].spent == parallel[i].spent);
    }
}

TEST_CASE("reruns reproduce everything except durations") {
    ExperimentSpec spec = tiny_spec(Method::gdamf);
    const auto a = run_experiment(spec);
    const auto b = run_experiment(spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].seed == b[i].seed);
        CHECK(a[i].spent == b[i].spent);
        CHECK(a[i].m_bar == b[i].m_bar);
        REQUIRE(a[i].acc.size() == b[i].acc.size());
        CHECK(std::memcmp(a[i].acc.data(), b[i].acc.data(),
                          a[i].acc.size() * sizeof(double)) == 0);
    }
}

TEST_CASE("paired repetitions see identical data across method arms") {
    const ExperimentSpec g = tiny_spec(Method::gdamf);
    const ExperimentSpec t = tiny_spec(Method::target_only);
    // the data stream depends only on the repetition seed
    const auto seq_g = build_dataset(g.dataset, g.effective_costs(),
                                     mix_seed(g.base_seed + 1, 101));
    const auto seq_t = build_dataset(t.dataset, t.effective_costs(),
                                     mix_seed(t.base_seed + 1, 101));
    CHECK(seq_g.source().features == seq_t.source().features);
    CHECK(seq_g.eval_set().features == seq_t.eval_set().features);
}

TEST_CASE("summarize aggregates by method and budget") {
    std::vector<RecordRow> rows;
    for (int rep = 0; rep < 20; ++rep) {
        RecordRow r;
        r.method = "gdamf";
        r.budget = 10.0;
        r.rep = rep;
        r.domain = 1;
        r.m_bar = 4;
        r.spent = 8.0;
        r.acc_target = 0.9;
        r.acc_domain = 0.9;
        rows.push_back(r);
    }
    RecordRow other = rows[0];
    other.method = "target_only";
    other.acc_target = 0.7;
    rows.push_back(other);

    const auto summary = summarize(rows);
    REQUIRE(summary.size() == 2);
    CHECK(summary[0].method == "gdamf");
    CHECK(summary[0].reps == 20);
    CHECK(summary[0].acc_mean == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(summary[0].acc_sd == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(summary[0].m_bar_mean == std::vector<std::pair<int, double>>{{1, 4.0}});
    CHECK(summary[1].method == "target_only");
    CHECK(summary[1].acc_mean == doctest::Approx(0.7).epsilon(1e-12));

    CHECK_THROWS(summarize({}));

    std::ostringstream sout;
    write_summary_csv(summary, sout);
    CHECK(sout.str().find("method,budget,reps,acc_mean,acc_sd,acc_min,acc_max,spent_mean") == 0);
    std::ostringstream qout;
    write_query_summary_csv(summary, qout);
    CHECK(qout.str().find("method,budget,domain,m_bar_mean") == 0);
}

TEST_CASE("history lines exist only for budgeted loop methods") {
    ExperimentSpec spec = tiny_spec(Method::gdamf);
    spec.repetitions = 1;
    const auto records = run_experiment(spec);
    std::ostringstream out;
    write_history_jsonl(records, out);
    CHECK(out.str().find("\"sweeps\"") != std::string::npos);
    CHECK(out.str().find(records[0].spec_hash) != std::string::npos);

    ExperimentSpec tspec = tiny_spec(Method::target_only);
    tspec.repetitions = 1;
    std::ostringstream tout;
    write_history_jsonl(run_experiment(tspec), tout);
    CHECK(tout.str().empty());
}

TEST_CASE("output directory resolution honors the env root") {
    CHECK(resolve_output_dir("/abs/path") == "/abs/path");
    ::setenv("GDAMF_OUT_ROOT", "/tmp/gdamf_root", 1);
    CHECK(resolve_output_dir("runs") == "/tmp/gdamf_root/runs");
    ::unsetenv("GDAMF_OUT_ROOT");
    CHECK(resolve_output_dir("runs") == "runs");
}
