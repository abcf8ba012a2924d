#pragma once

#include "gdamf/classifier.hpp"
#include "gdamf/domains.hpp"
#include "gdamf/gdamf.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace gdamf::harness {

enum class Method {
    gdamf,
    gdamf_no_al,
    gdamf_no_intermediate,
    gdamf_no_al_no_intermediate,
    gdamf_no_warm_start,
    gradual_self_train,
    target_only,
};

std::string to_string(Method m);
Method method_from_string(const std::string& s);

enum class DatasetKind { moons, gaussians, csv };

struct DatasetSpec {
    DatasetKind kind = DatasetKind::moons;
    std::size_t n_source = 2000;
    std::size_t n_per_pool = 1000;
    std::size_t n_eval = 1000;
    int k_intermediate = 1;
    double total_angle = 1.5707963267948966;  // pi/2
    double noise = 0.1;                       // moons
    double class_separation = 3.0;            // gaussians
    std::vector<std::string> csv_paths;
    std::string label_column;
    double eval_fraction = 0.25;
};

struct ExperimentSpec {
    DatasetSpec dataset;
    Method method = Method::gdamf;
    std::vector<double> budgets;    // empty: {ceil(n_source / 10)} (generators only)
    std::vector<double> costs;      // empty: domain indices 1..K
    int repetitions = 20;
    std::uint64_t base_seed = 1;
    TrainConfig train;
    std::vector<std::size_t> hidden_dims = {32};
    double dropout = 0.1;
    bool batchnorm = true;
    long long initial_labels = -1;  // -1: ceil(|source| / 100)
    std::size_t probe_count = 1000;
    std::string output_dir = "out";
    int workers = 1;

    // number of queryable domains implied by the dataset spec
    int k() const;
    std::vector<double> effective_costs() const;
    std::vector<double> effective_budgets() const;

    // throws a descriptive error before any run starts
    void validate() const;
};

// One (budget, repetition) outcome. Chain methods carry one entry per domain
// model 0..K; target_only carries a single entry for the target domain.
struct RunRecord {
    std::string spec_hash;
    Method method = Method::gdamf;
    double budget = 0.0;
    int rep = 0;
    std::uint64_t seed = 0;
    std::vector<int> domains;
    std::vector<double> acc;       // eval accuracy of the model for domains[i]
    std::vector<long long> m_bar;  // queries charged to domains[i]
    double spent = 0.0;
    double acc_target = 0.0;
    double duration_ms = 0.0;
    std::vector<SweepRecord> history;
};

DomainSequence build_dataset(const DatasetSpec& ds, const std::vector<double>& costs,
                             std::uint64_t data_seed);

// All (budget, repetition) runs of a spec, in budget-major order. Repetition
// seeds are base_seed + rep, with fixed per-role streams, so every method arm
// sees the same data per repetition. on_record (optional) fires as runs
// finish.
std::vector<RunRecord> run_experiment(const ExperimentSpec& spec,
                                      const std::function<void(const RunRecord&)>& on_record = {});

// Long-format CSV, one row per (record, domain):
// method,budget,rep,seed,domain,m_bar,spent,acc_target,acc_domain_j,duration_ms
void write_records_csv(const std::vector<RunRecord>& records, std::ostream& out);

// Data rows of one record, no header (for append-style persistence).
void write_record_rows(const RunRecord& record, std::ostream& out);

// One JSON line per record with per-sweep history, keyed by spec hash + rep.
void write_history_jsonl(const std::vector<RunRecord>& records, std::ostream& out);

struct RecordRow {
    std::string method;
    double budget = 0.0;
    int rep = 0;
    std::uint64_t seed = 0;
    int domain = 0;
    long long m_bar = 0;
    double spent = 0.0;
    double acc_target = 0.0;
    double acc_domain = 0.0;
    double duration_ms = 0.0;
};

std::vector<RecordRow> read_records_csv(std::istream& in, const std::string& name_for_errors);
std::vector<RecordRow> rows_of(const std::vector<RunRecord>& records);

struct SummaryRow {
    std::string method;
    double budget = 0.0;
    int reps = 0;
    double acc_mean = 0.0, acc_sd = 0.0, acc_min = 0.0, acc_max = 0.0;
    double spent_mean = 0.0;
    std::vector<std::pair<int, double>> m_bar_mean;  // (domain, mean queries)
};

// Per (method, budget): mean/sd/min/max of target accuracy and mean
// per-domain query counts. Throws on empty input.
std::vector<SummaryRow> summarize(const std::vector<RecordRow>& rows);

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);
void write_query_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);
void print_summary_table(const std::vector<SummaryRow>& rows, std::ostream& out);

// Spec files are `key = value` lines; '#' starts a comment. Unknown keys are
// errors. apply_override handles the CLI's --set key=value flags.
ExperimentSpec parse_spec_text(std::istream& in, const std::string& name_for_errors);
ExperimentSpec load_spec_file(const std::string& path);
void apply_override(ExperimentSpec& spec, const std::string& key, const std::string& value);

// Canonical key=value rendering of a spec (stable across runs) and its
// 64-bit FNV-1a hash in hex. Output-only fields (output_dir, workers) are
// excluded so relocating results does not change the hash.
std::string canonical_spec_text(const ExperimentSpec& spec);
std::string spec_hash(const ExperimentSpec& spec);

// Joins relative dirs onto $GDAMF_OUT_ROOT when set.
std::string resolve_output_dir(const std::string& dir);

}  // namespace gdamf::harness
