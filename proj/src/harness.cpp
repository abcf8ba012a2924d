#include "gdamf/harness.hpp"

#include "gdamf/csv.hpp"
#include "gdamf/metrics.hpp"
#include "gdamf/rng.hpp"
#include "gdamf/selftrain.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gdamf::harness {

namespace {

using csv::format_double;

// per-repetition role streams (paired across method arms)
constexpr std::uint64_t kStreamData = 101;
constexpr std::uint64_t kStreamInitLabels = 202;
constexpr std::uint64_t kStreamTrain = 303;
constexpr std::uint64_t kStreamProbes = 404;
constexpr std::uint64_t kStreamRandomQuery = 505;
constexpr std::uint64_t kStreamTargetOnly = 606;

const std::vector<std::pair<Method, const char*>> kMethodNames = {
    {Method::gdamf, "gdamf"},
    {Method::gdamf_no_al, "gdamf_no_al"},
    {Method::gdamf_no_intermediate, "gdamf_no_intermediate"},
    {Method::gdamf_no_al_no_intermediate, "gdamf_no_al_no_intermediate"},
    {Method::gdamf_no_warm_start, "gdamf_no_warm_start"},
    {Method::gradual_self_train, "gradual_self_train"},
    {Method::target_only, "target_only"},
};

bool is_gdamf_family(Method m) {
    return m != Method::gradual_self_train && m != Method::target_only;
}

}  // namespace

std::string to_string(Method m) {
    for (const auto& [method, name] : kMethodNames)
        if (method == m) return name;
    throw std::logic_error("unknown method");
}

Method method_from_string(const std::string& s) {
    for (const auto& [method, name] : kMethodNames)
        if (s == name) return method;
    throw std::invalid_argument("unknown method '" + s + "'");
}

int ExperimentSpec::k() const {
    if (dataset.kind == DatasetKind::csv)
        return static_cast<int>(dataset.csv_paths.size()) - 1;
    return dataset.k_intermediate + 1;
}

std::vector<double> ExperimentSpec::effective_costs() const {
    if (!costs.empty()) return costs;
    std::vector<double> out(static_cast<std::size_t>(k()));
    for (int j = 1; j <= k(); ++j) out[static_cast<std::size_t>(j - 1)] = j;
    return out;
}

std::vector<double> ExperimentSpec::effective_budgets() const {
    if (!budgets.empty()) return budgets;
    if (dataset.kind == DatasetKind::csv)
        throw std::invalid_argument("budgets must be given explicitly for csv datasets");
    // B_max = ceil(n_0 / 10)
    return {std::ceil(static_cast<double>(dataset.n_source) / 10.0)};
}

void ExperimentSpec::validate() const {
    if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    for (double b : effective_budgets())
        if (b < 0.0) throw std::invalid_argument("budgets must be nonnegative");
    train.validate();
    for (std::size_t h : hidden_dims)
        if (h < 1) throw std::invalid_argument("hidden layer width must be >= 1");
    if (!(dropout >= 0.0 && dropout < 1.0))
        throw std::invalid_argument("dropout must be in [0, 1)");
    if (probe_count < 2) throw std::invalid_argument("probe_count must be >= 2");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");

    if (dataset.kind == DatasetKind::csv) {
        if (dataset.csv_paths.size() < 2)
            throw std::invalid_argument("csv dataset needs at least two files");
        if (dataset.label_column.empty())
            throw std::invalid_argument("csv dataset needs label_column");
        if (!(dataset.eval_fraction > 0.0 && dataset.eval_fraction < 1.0))
            throw std::invalid_argument("eval_fraction must be in (0, 1)");
    } else {
        if (dataset.n_source < 1 || dataset.n_per_pool < 1 || dataset.n_eval < 1)
            throw std::invalid_argument("dataset sample counts must be >= 1");
        if (dataset.k_intermediate < 0)
            throw std::invalid_argument("k_intermediate must be >= 0");
        if (dataset.total_angle < 0.0)
            throw std::invalid_argument("total_angle must be >= 0");
    }

    const auto eff = effective_costs();
    if (eff.size() != static_cast<std::size_t>(k()))
        throw std::invalid_argument("costs length must equal the number of domains K");
    double prev = 0.0;
    for (double c : eff) {
        if (!(c > prev))
            throw std::invalid_argument("costs must be strictly increasing and positive");
        prev = c;
    }

    if (method == Method::target_only)
        for (double b : effective_budgets())
            if (b < eff.back())
                throw std::invalid_argument(
                    "target_only cannot afford a single target label at budget " +
                    format_double(b));
    if (is_gdamf_family(method) && initial_labels == 0)
        throw std::invalid_argument("gdamf methods need initial labels in every domain");
}

DomainSequence build_dataset(const DatasetSpec& ds, const std::vector<double>& costs,
                             std::uint64_t data_seed) {
    switch (ds.kind) {
        case DatasetKind::moons: {
            DomainSequence seq =
                make_rotating_moons(ds.n_source, ds.n_per_pool, ds.n_eval, ds.k_intermediate,
                                    ds.total_angle, ds.noise, data_seed);
            seq.set_costs(costs);
            return seq;
        }
        case DatasetKind::gaussians: {
            DomainSequence seq = make_rotating_gaussians(ds.n_source, ds.n_per_pool, ds.n_eval,
                                                         ds.k_intermediate, ds.total_angle,
                                                         ds.class_separation, data_seed);
            seq.set_costs(costs);
            return seq;
        }
        case DatasetKind::csv:
            return load_csv_sequence(ds.csv_paths, ds.label_column, costs, ds.eval_fraction,
                                     data_seed);
    }
    throw std::logic_error("unknown dataset kind");
}

namespace {

RunRecord run_single(const ExperimentSpec& spec, const std::string& hash, double budget,
                     int rep) {
    const auto t0 = std::chrono::steady_clock::now();

    RunRecord rec;
    rec.spec_hash = hash;
    rec.method = spec.method;
    rec.budget = budget;
    rec.rep = rep;
    rec.seed = spec.base_seed + static_cast<std::uint64_t>(rep);

    DomainSequence seq =
        build_dataset(spec.dataset, spec.effective_costs(), mix_seed(rec.seed, kStreamData));
    const int k = seq.k();

    Architecture arch;
    arch.input_dim = seq.feature_dim();
    arch.hidden_dims = spec.hidden_dims;
    arch.num_classes = seq.num_classes();
    arch.dropout_rate = spec.dropout;
    arch.use_batchnorm = spec.batchnorm;

    TrainConfig tcfg = spec.train;
    tcfg.seed = mix_seed(rec.seed, kStreamTrain);

    switch (spec.method) {
        case Method::gradual_self_train: {
            const auto models = gradual_self_train(seq, arch, tcfg);
            for (int j = 0; j <= k; ++j) {
                rec.domains.push_back(j);
                rec.acc.push_back(accuracy(models[static_cast<std::size_t>(j)], seq.eval_set()));
                rec.m_bar.push_back(0);
            }
            rec.spent = 0.0;
            break;
        }
        case Method::target_only: {
            const double ck = seq.cost(k);
            const auto n_buy = static_cast<std::size_t>(std::floor(budget / ck));
            Rng rng(mix_seed(rec.seed, kStreamTargetOnly));
            auto idx = rng.sample_without_replacement(seq.stage(k).pool.size(), n_buy);
            std::sort(idx.begin(), idx.end(), std::greater<>());
            for (std::size_t i : idx) seq.annotate(k, i);
            const Classifier model = train(arch, seq.stage(k).labeled, tcfg);
            rec.domains.push_back(k);
            rec.acc.push_back(accuracy(model, seq.eval_set()));
            rec.m_bar.push_back(static_cast<long long>(n_buy));
            rec.spent = static_cast<double>(n_buy) * ck;
            break;
        }
        default: {  // gdamf family
            const std::size_t init_count =
                spec.initial_labels >= 0
                    ? static_cast<std::size_t>(spec.initial_labels)
                    : static_cast<std::size_t>(
                          std::ceil(static_cast<double>(seq.source().size()) / 100.0));
            seq = draw_initial_labels(std::move(seq), init_count,
                                      mix_seed(rec.seed, kStreamInitLabels));

            GdamfConfig cfg;
            cfg.train = tcfg;
            cfg.budget = budget;
            cfg.disable_uncertainty = spec.method == Method::gdamf_no_al ||
                                      spec.method == Method::gdamf_no_al_no_intermediate;
            cfg.disable_intermediates = spec.method == Method::gdamf_no_intermediate ||
                                        spec.method == Method::gdamf_no_al_no_intermediate;
            cfg.disable_warm_start = spec.method == Method::gdamf_no_warm_start;
            cfg.probe_count = spec.probe_count;
            cfg.probe_seed = mix_seed(rec.seed, kStreamProbes);
            cfg.query_seed = mix_seed(rec.seed, kStreamRandomQuery);

            GdamfResult res = run_gdamf(std::move(seq), arch, cfg);
            // under the collapsed-chain ablation the one queryable stage is
            // the original target domain K
            for (std::size_t i = 0; i < res.models.size(); ++i) {
                const int domain = cfg.disable_intermediates && i == 1 ? k : static_cast<int>(i);
                rec.domains.push_back(domain);
                rec.acc.push_back(accuracy(res.models[i], res.sequence.eval_set()));
                rec.m_bar.push_back(domain == 0 ? 0
                                                : res.m_bar[static_cast<std::size_t>(
                                                      cfg.disable_intermediates ? 0 : domain - 1)]);
            }
            rec.spent = res.spent;
            rec.history = std::move(res.history);
            break;
        }
    }
    rec.acc_target = rec.acc.back();

    const auto t1 = std::chrono::steady_clock::now();
    rec.duration_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rec;
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentSpec& spec,
                                      const std::function<void(const RunRecord&)>& on_record) {
    spec.validate();
    const std::string hash = spec_hash(spec);

    struct Job {
        double budget;
        int rep;
    };
    std::vector<Job> jobs;
    for (double b : spec.effective_budgets())
        for (int rep = 0; rep < spec.repetitions; ++rep) jobs.push_back({b, rep});

    std::vector<RunRecord> records(jobs.size());
    std::exception_ptr error;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(spec.workers) \
    if (spec.workers > 1 && jobs.size() > 1)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(jobs.size()); ++i) {
        const auto ui = static_cast<std::size_t>(i);
        try {
            records[ui] = run_single(spec, hash, jobs[ui].budget, jobs[ui].rep);
            if (on_record) {
#ifdef _OPENMP
#pragma omp critical(gdamf_on_record)
#endif
                on_record(records[ui]);
            }
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(gdamf_record_error)
#endif
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return records;
}

void write_record_rows(const RunRecord& r, std::ostream& out) {
    for (std::size_t i = 0; i < r.domains.size(); ++i) {
        out << to_string(r.method) << ',' << format_double(r.budget) << ',' << r.rep << ','
            << r.seed << ',' << r.domains[i] << ',' << r.m_bar[i] << ','
            << format_double(r.spent) << ',' << format_double(r.acc_target) << ','
            << format_double(r.acc[i]) << ',' << format_double(r.duration_ms) << '\n';
    }
}

void write_records_csv(const std::vector<RunRecord>& records, std::ostream& out) {
    out << "method,budget,rep,seed,domain,m_bar,spent,acc_target,acc_domain_j,duration_ms\n";
    for (const RunRecord& r : records) write_record_rows(r, out);
}

void write_history_jsonl(const std::vector<RunRecord>& records, std::ostream& out) {
    for (const RunRecord& r : records) {
        if (r.history.empty()) continue;
        nlohmann::json sweeps = nlohmann::json::array();
        for (const SweepRecord& s : r.history) {
            sweeps.push_back({{"rho_raw", s.rho_raw},
                              {"rho", s.rho},
                              {"r", s.r},
                              {"m", s.m},
                              {"m_bar", s.m_bar},
                              {"budget_remaining", s.budget_remaining},
                              {"queries", s.queries}});
        }
        nlohmann::json line = {{"spec_hash", r.spec_hash},
                               {"method", to_string(r.method)},
                               {"budget", r.budget},
                               {"rep", r.rep},
                               {"seed", r.seed},
                               {"sweeps", std::move(sweeps)}};
        out << line.dump() << '\n';
    }
}

std::vector<RecordRow> read_records_csv(std::istream& in, const std::string& name_for_errors) {
    const csv::Table t = csv::read_csv(in, name_for_errors);
    const char* needed[] = {"method", "budget",     "rep",          "seed",         "domain",
                            "m_bar",  "spent",      "acc_target",   "acc_domain_j", "duration_ms"};
    std::map<std::string, int> col;
    for (const char* name : needed) {
        const int c = t.column(name);
        if (c < 0)
            throw std::runtime_error(name_for_errors + ": missing column '" + name + "'");
        col[name] = c;
    }
    std::vector<RecordRow> rows;
    rows.reserve(t.rows.size());
    for (const auto& cells : t.rows) {
        RecordRow r;
        r.method = cells[static_cast<std::size_t>(col["method"])];
        r.budget = std::stod(cells[static_cast<std::size_t>(col["budget"])]);
        r.rep = std::stoi(cells[static_cast<std::size_t>(col["rep"])]);
        r.seed = std::stoull(cells[static_cast<std::size_t>(col["seed"])]);
        r.domain = std::stoi(cells[static_cast<std::size_t>(col["domain"])]);
        r.m_bar = std::stoll(cells[static_cast<std::size_t>(col["m_bar"])]);
        r.spent = std::stod(cells[static_cast<std::size_t>(col["spent"])]);
        r.acc_target = std::stod(cells[static_cast<std::size_t>(col["acc_target"])]);
        r.acc_domain = std::stod(cells[static_cast<std::size_t>(col["acc_domain_j"])]);
        r.duration_ms = std::stod(cells[static_cast<std::size_t>(col["duration_ms"])]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<RecordRow> rows_of(const std::vector<RunRecord>& records) {
    std::vector<RecordRow> rows;
    for (const RunRecord& r : records) {
        for (std::size_t i = 0; i < r.domains.size(); ++i) {
            RecordRow row;
            row.method = to_string(r.method);
            row.budget = r.budget;
            row.rep = r.rep;
            row.seed = r.seed;
            row.domain = r.domains[i];
            row.m_bar = r.m_bar[i];
            row.spent = r.spent;
            row.acc_target = r.acc_target;
            row.acc_domain = r.acc[i];
            row.duration_ms = r.duration_ms;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<SummaryRow> summarize(const std::vector<RecordRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("summarize: no records");

    struct Group {
        std::map<int, double> acc_by_rep;     // target accuracy per repetition
        std::map<int, double> spent_by_rep;
        std::map<int, std::map<int, long long>> m_bar;  // rep -> domain -> m_bar
    };
    std::map<std::pair<std::string, double>, Group> groups;
    for (const RecordRow& r : rows) {
        Group& g = groups[{r.method, r.budget}];
        g.acc_by_rep[r.rep] = r.acc_target;
        g.spent_by_rep[r.rep] = r.spent;
        g.m_bar[r.rep][r.domain] = r.m_bar;
    }

    std::vector<SummaryRow> out;
    for (const auto& [key, g] : groups) {
        SummaryRow s;
        s.method = key.first;
        s.budget = key.second;
        s.reps = static_cast<int>(g.acc_by_rep.size());
        double sum = 0.0;
        s.acc_min = 1.0;
        s.acc_max = 0.0;
        for (const auto& [rep, acc] : g.acc_by_rep) {
            sum += acc;
            s.acc_min = std::min(s.acc_min, acc);
            s.acc_max = std::max(s.acc_max, acc);
        }
        const double n = static_cast<double>(s.reps);
        s.acc_mean = sum / n;
        double ss = 0.0;
        for (const auto& [rep, acc] : g.acc_by_rep)
            ss += (acc - s.acc_mean) * (acc - s.acc_mean);
        s.acc_sd = std::sqrt(ss / (s.reps > 1 ? n - 1.0 : 1.0));
        double spent_sum = 0.0;
        for (const auto& [rep, spent] : g.spent_by_rep) spent_sum += spent;
        s.spent_mean = spent_sum / n;

        std::map<int, std::pair<double, int>> per_domain;  // domain -> (sum, count)
        for (const auto& [rep, by_domain] : g.m_bar)
            for (const auto& [domain, m] : by_domain) {
                per_domain[domain].first += static_cast<double>(m);
                per_domain[domain].second += 1;
            }
        for (const auto& [domain, sc] : per_domain)
            s.m_bar_mean.push_back({domain, sc.first / static_cast<double>(sc.second)});
        out.push_back(std::move(s));
    }
    return out;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
    out << "method,budget,reps,acc_mean,acc_sd,acc_min,acc_max,spent_mean\n";
    for (const SummaryRow& s : rows) {
        out << s.method << ',' << format_double(s.budget) << ',' << s.reps << ','
            << format_double(s.acc_mean) << ',' << format_double(s.acc_sd) << ','
            << format_double(s.acc_min) << ',' << format_double(s.acc_max) << ','
            << format_double(s.spent_mean) << '\n';
    }
}

void write_query_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
    out << "method,budget,domain,m_bar_mean\n";
    for (const SummaryRow& s : rows)
        for (const auto& [domain, mean] : s.m_bar_mean)
            out << s.method << ',' << format_double(s.budget) << ',' << domain << ','
                << format_double(mean) << '\n';
}

void print_summary_table(const std::vector<SummaryRow>& rows, std::ostream& out) {
    out << std::left << std::setw(30) << "method" << std::right << std::setw(10) << "budget"
        << std::setw(6) << "reps" << std::setw(10) << "acc_mean" << std::setw(9) << "acc_sd"
        << std::setw(9) << "acc_min" << std::setw(9) << "acc_max" << std::setw(12)
        << "spent_mean" << '\n';
    for (const SummaryRow& s : rows) {
        out << std::left << std::setw(30) << s.method << std::right << std::fixed
            << std::setprecision(1) << std::setw(10) << s.budget << std::setw(6) << s.reps
            << std::setprecision(4) << std::setw(10) << s.acc_mean << std::setw(9) << s.acc_sd
            << std::setw(9) << s.acc_min << std::setw(9) << s.acc_max << std::setprecision(1)
            << std::setw(12) << s.spent_mean << '\n';
        out.unsetf(std::ios::fixed);
    }
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("expected a boolean, got '" + v + "'");
}

}  // namespace

void apply_override(ExperimentSpec& spec, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    try {
        if (key == "dataset") {
            if (v == "moons")
                spec.dataset.kind = DatasetKind::moons;
            else if (v == "gaussians")
                spec.dataset.kind = DatasetKind::gaussians;
            else if (v == "csv")
                spec.dataset.kind = DatasetKind::csv;
            else
                throw std::invalid_argument("unknown dataset '" + v + "'");
        } else if (key == "n_source") {
            spec.dataset.n_source = std::stoull(v);
        } else if (key == "n_per_pool") {
            spec.dataset.n_per_pool = std::stoull(v);
        } else if (key == "n_eval") {
            spec.dataset.n_eval = std::stoull(v);
        } else if (key == "k_intermediate") {
            spec.dataset.k_intermediate = std::stoi(v);
        } else if (key == "total_angle") {
            spec.dataset.total_angle = std::stod(v);
        } else if (key == "noise") {
            spec.dataset.noise = std::stod(v);
        } else if (key == "class_separation") {
            spec.dataset.class_separation = std::stod(v);
        } else if (key == "csv_paths") {
            spec.dataset.csv_paths = split_list(v);
            for (auto& p : spec.dataset.csv_paths) p = trim(p);
        } else if (key == "label_column") {
            spec.dataset.label_column = v;
        } else if (key == "eval_fraction") {
            spec.dataset.eval_fraction = std::stod(v);
        } else if (key == "method") {
            spec.method = method_from_string(v);
        } else if (key == "budgets") {
            spec.budgets.clear();
            for (const auto& tok : split_list(v)) spec.budgets.push_back(std::stod(trim(tok)));
        } else if (key == "costs") {
            spec.costs.clear();
            for (const auto& tok : split_list(v)) spec.costs.push_back(std::stod(trim(tok)));
        } else if (key == "repetitions") {
            spec.repetitions = std::stoi(v);
        } else if (key == "base_seed") {
            spec.base_seed = std::stoull(v);
        } else if (key == "epochs") {
            spec.train.epochs = std::stoi(v);
        } else if (key == "learning_rate") {
            spec.train.learning_rate = std::stod(v);
        } else if (key == "batch_size") {
            spec.train.batch_size = std::stoi(v);
        } else if (key == "weight_decay") {
            spec.train.weight_decay = std::stod(v);
        } else if (key == "optimizer") {
            if (v == "adam")
                spec.train.optimizer = OptimizerKind::adam;
            else if (v == "sgd")
                spec.train.optimizer = OptimizerKind::sgd;
            else
                throw std::invalid_argument("unknown optimizer '" + v + "'");
        } else if (key == "hidden_dims") {
            spec.hidden_dims.clear();
            for (const auto& tok : split_list(v))
                spec.hidden_dims.push_back(std::stoull(trim(tok)));
        } else if (key == "dropout") {
            spec.dropout = std::stod(v);
        } else if (key == "batchnorm") {
            spec.batchnorm = parse_bool(v);
        } else if (key == "initial_labels") {
            spec.initial_labels = std::stoll(v);
        } else if (key == "probe_count") {
            spec.probe_count = std::stoull(v);
        } else if (key == "output_dir") {
            spec.output_dir = v;
        } else if (key == "workers") {
            spec.workers = std::stoi(v);
        } else {
            throw std::invalid_argument("unknown spec key '" + key + "'");
        }
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad value for '" + key + "': '" + v + "'");
    }
}

ExperimentSpec parse_spec_text(std::istream& in, const std::string& name_for_errors) {
    ExperimentSpec spec;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(name_for_errors + ":" + std::to_string(lineno) +
                                        ": expected 'key = value'");
        try {
            apply_override(spec, trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const std::exception& e) {
            throw std::invalid_argument(name_for_errors + ":" + std::to_string(lineno) + ": " +
                                        e.what());
        }
    }
    return spec;
}

ExperimentSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file: " + path);
    return parse_spec_text(in, path);
}

std::string canonical_spec_text(const ExperimentSpec& spec) {
    std::ostringstream out;
    out << "dataset=";
    switch (spec.dataset.kind) {
        case DatasetKind::moons: out << "moons"; break;
        case DatasetKind::gaussians: out << "gaussians"; break;
        case DatasetKind::csv: out << "csv"; break;
    }
    out << '\n';
    if (spec.dataset.kind == DatasetKind::csv) {
        out << "csv_paths=";
        for (std::size_t i = 0; i < spec.dataset.csv_paths.size(); ++i)
            out << (i ? "," : "") << spec.dataset.csv_paths[i];
        out << '\n';
        out << "label_column=" << spec.dataset.label_column << '\n';
        out << "eval_fraction=" << format_double(spec.dataset.eval_fraction) << '\n';
    } else {
        out << "n_source=" << spec.dataset.n_source << '\n';
        out << "n_per_pool=" << spec.dataset.n_per_pool << '\n';
        out << "n_eval=" << spec.dataset.n_eval << '\n';
        out << "k_intermediate=" << spec.dataset.k_intermediate << '\n';
        out << "total_angle=" << format_double(spec.dataset.total_angle) << '\n';
        if (spec.dataset.kind == DatasetKind::moons)
            out << "noise=" << format_double(spec.dataset.noise) << '\n';
        else
            out << "class_separation=" << format_double(spec.dataset.class_separation) << '\n';
    }
    out << "method=" << to_string(spec.method) << '\n';
    out << "budgets=";
    const auto effb = spec.effective_budgets();
    for (std::size_t i = 0; i < effb.size(); ++i)
        out << (i ? "," : "") << format_double(effb[i]);
    out << '\n';
    out << "costs=";
    const auto eff = spec.effective_costs();
    for (std::size_t i = 0; i < eff.size(); ++i) out << (i ? "," : "") << format_double(eff[i]);
    out << '\n';
    out << "repetitions=" << spec.repetitions << '\n';
    out << "base_seed=" << spec.base_seed << '\n';
    out << "epochs=" << spec.train.epochs << '\n';
    out << "learning_rate=" << format_double(spec.train.learning_rate) << '\n';
    out << "batch_size=" << spec.train.batch_size << '\n';
    out << "weight_decay=" << format_double(spec.train.weight_decay) << '\n';
    out << "optimizer=" << (spec.train.optimizer == OptimizerKind::adam ? "adam" : "sgd") << '\n';
    out << "hidden_dims=";
    for (std::size_t i = 0; i < spec.hidden_dims.size(); ++i)
        out << (i ? "," : "") << spec.hidden_dims[i];
    out << '\n';
    out << "dropout=" << format_double(spec.dropout) << '\n';
    out << "batchnorm=" << (spec.batchnorm ? "true" : "false") << '\n';
    out << "initial_labels=" << spec.initial_labels << '\n';
    out << "probe_count=" << spec.probe_count << '\n';
    return out.str();
}

std::string spec_hash(const ExperimentSpec& spec) {
    const std::string text = canonical_spec_text(spec);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xF];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

std::string resolve_output_dir(const std::string& dir) {
    if (!dir.empty() && dir.front() == '/') return dir;
    const char* root = std::getenv("GDAMF_OUT_ROOT");
    if (root == nullptr || *root == '\0') return dir;
    std::string out(root);
    if (out.back() != '/') out.push_back('/');
    return out + dir;
}

}  // namespace gdamf::harness
