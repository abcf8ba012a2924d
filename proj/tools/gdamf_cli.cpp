#include "gdamf/csv.hpp"
#include "gdamf/harness.hpp"
#include "gdamf/metrics.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace gdamf;

std::pair<std::string, std::string> split_key_value(const std::string& s) {
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("--set expects key=value, got '" + s + "'");
    return {s.substr(0, eq), s.substr(eq + 1)};
}

int cmd_run(const std::string& spec_path, const std::vector<std::string>& overrides,
            const std::string& output_dir_flag, int workers_flag, bool quiet) {
    harness::ExperimentSpec spec = harness::load_spec_file(spec_path);
    for (const auto& kv : overrides) {
        const auto [key, value] = split_key_value(kv);
        harness::apply_override(spec, key, value);
    }
    if (!output_dir_flag.empty()) spec.output_dir = output_dir_flag;
    if (workers_flag > 0) spec.workers = workers_flag;
    spec.validate();

    const std::string out_dir = harness::resolve_output_dir(spec.output_dir);
    std::filesystem::create_directories(out_dir);
    const std::string runs_path = out_dir + "/runs.csv";
    const std::string history_path = out_dir + "/history.jsonl";

    std::ofstream runs(runs_path);
    if (!runs) throw std::runtime_error("cannot open for writing: " + runs_path);
    runs << "method,budget,rep,seed,domain,m_bar,spent,acc_target,acc_domain_j,duration_ms\n";
    runs.flush();
    std::ofstream history(history_path);
    if (!history) throw std::runtime_error("cannot open for writing: " + history_path);

    std::size_t done = 0;
    const std::size_t total =
        spec.effective_budgets().size() * static_cast<std::size_t>(spec.repetitions);
    auto on_record = [&](const harness::RunRecord& rec) {
        // per-record append: one record's rows and history line at a time
        harness::write_record_rows(rec, runs);
        runs.flush();
        harness::write_history_jsonl({rec}, history);
        history.flush();
        ++done;
        if (!quiet)
            std::cerr << "[" << done << "/" << total << "] " << harness::to_string(rec.method)
                      << " budget=" << csv::format_double(rec.budget) << " rep=" << rec.rep
                      << " acc_target=" << csv::format_double(rec.acc_target)
                      << " spent=" << csv::format_double(rec.spent) << "\n";
    };

    std::vector<harness::RunRecord> records = harness::run_experiment(spec, on_record);

    const auto summary = harness::summarize(harness::rows_of(records));
    harness::print_summary_table(summary, std::cout);
    std::cout << "records: " << runs_path << "\nhistory: " << history_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gradual domain adaptation with multifidelity active learning"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run the experiment described by a spec file");
    std::string spec_path;
    run->add_option("spec", spec_path, "spec file (key = value lines)")->required();
    std::vector<std::string> overrides;
    run->add_option("--set", overrides, "override a spec key (key=value), repeatable");
    std::string output_dir_flag;
    run->add_option("--output-dir", output_dir_flag, "override the spec output_dir");
    int workers_flag = 0;
    run->add_option("--workers", workers_flag, "concurrent repetitions");
    bool quiet = false;
    run->add_flag("--quiet", quiet, "suppress per-run progress lines");

    auto* dist = app.add_subcommand("distances", "Adjacent-domain distance curve");
    std::string dist_spec;
    dist->add_option("spec", dist_spec, "optional spec file for the dataset block");
    std::vector<std::string> dist_overrides;
    dist->add_option("--set", dist_overrides, "override a spec key (key=value), repeatable");
    std::string k_list_str = "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19";
    dist->add_option("--k-list", k_list_str, "comma list of intermediate-domain counts");
    std::size_t subsample = 200;
    dist->add_option("--subsample", subsample, "per-class subsample size");
    std::uint64_t dist_seed = 1;
    dist->add_option("--seed", dist_seed, "dataset/subsample seed");
    std::string dist_out;
    dist->add_option("--out", dist_out, "output CSV path (default stdout)");

    auto* summ = app.add_subcommand("summarize", "Summarize run-record CSVs");
    std::vector<std::string> record_paths;
    summ->add_option("records", record_paths, "runs.csv files")->required();
    std::string summary_out, queries_out;
    summ->add_option("--out", summary_out, "summary CSV path");
    summ->add_option("--queries-out", queries_out, "per-domain query-count CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(spec_path, overrides, output_dir_flag, workers_flag, quiet);

        if (dist->parsed()) {
            harness::ExperimentSpec spec;
            if (!dist_spec.empty()) spec = harness::load_spec_file(dist_spec);
            for (const auto& kv : dist_overrides) {
                const auto [key, value] = split_key_value(kv);
                harness::apply_override(spec, key, value);
            }
            DistanceCurve curve;
            if (spec.dataset.kind == harness::DatasetKind::csv) {
                // a CSV sequence has a fixed chain; emit its single point
                const auto seq = harness::build_dataset(spec.dataset, spec.effective_costs(),
                                                        dist_seed);
                curve.k_values = {seq.k() - 1};
                curve.raw = {mean_adjacent_distance(seq, subsample, dist_seed)};
                curve.scaled = {0.0};
            } else {
                std::vector<int> k_list;
                std::string cur;
                for (char ch : k_list_str + ",") {
                    if (ch == ',') {
                        if (!cur.empty()) k_list.push_back(std::stoi(cur));
                        cur.clear();
                    } else {
                        cur.push_back(ch);
                    }
                }
                harness::DatasetSpec ds = spec.dataset;
                curve = adjacent_distance_curve(
                    [&](int k_intermediate) {
                        harness::DatasetSpec d = ds;
                        d.k_intermediate = k_intermediate;
                        std::vector<double> costs(static_cast<std::size_t>(k_intermediate) + 1);
                        for (std::size_t j = 0; j < costs.size(); ++j)
                            costs[j] = static_cast<double>(j + 1);
                        return harness::build_dataset(d, costs, dist_seed);
                    },
                    k_list, subsample, dist_seed);
            }
            if (dist_out.empty()) {
                write_distance_curve_csv(curve, std::cout);
            } else {
                std::ofstream out(dist_out);
                if (!out) throw std::runtime_error("cannot open for writing: " + dist_out);
                write_distance_curve_csv(curve, out);
                std::cout << "curve: " << dist_out << "\n";
            }
            return 0;
        }

        if (summ->parsed()) {
            std::vector<harness::RecordRow> rows;
            for (const auto& path : record_paths) {
                std::ifstream in(path);
                if (!in) throw std::runtime_error("cannot open: " + path);
                auto part = harness::read_records_csv(in, path);
                rows.insert(rows.end(), part.begin(), part.end());
            }
            const auto summary = harness::summarize(rows);
            harness::print_summary_table(summary, std::cout);
            if (!summary_out.empty()) {
                std::ofstream out(summary_out);
                if (!out) throw std::runtime_error("cannot open for writing: " + summary_out);
                harness::write_summary_csv(summary, out);
            }
            if (!queries_out.empty()) {
                std::ofstream out(queries_out);
                if (!out) throw std::runtime_error("cannot open for writing: " + queries_out);
                harness::write_query_summary_csv(summary, out);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
