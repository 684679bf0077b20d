#include "fic/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fic/diagnostics.hpp"
#include "fic/error.hpp"
#include "fic/metrics.hpp"
#include "fic/numerics.hpp"
#include "fic/random.hpp"

namespace fic {

using nlohmann::json;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Configuration

std::size_t ExperimentConfig::effective_k() const {
    if (k > 0) return k;
    if (const auto* synth = std::get_if<SynthSpec>(&dataset)) return synth->k;
    return 0;
}

void ExperimentConfig::validate() const {
    if (effective_k() < 1) throw ConfigError("k must be given (and >= 1) for CSV datasets");
    if (runs < 1) throw ConfigError("runs must be at least 1");
    if (ra_grid.empty()) throw ConfigError("ra_grid must not be empty");
    for (double ra : ra_grid) {
        if (!(ra > 0.0 && ra <= 1.0)) throw ConfigError("ra_grid entries must lie in (0, 1]");
    }
    const bool reuse = std::find(algorithms.begin(), algorithms.end(), Provenance::fic_mr) != algorithms.end();
    if (reuse && theta_grid.empty()) throw ConfigError("theta_grid must not be empty when FIC-MR is requested");
    for (double t : theta_grid) {
        if (!std::isfinite(t) || t < 0.0) throw ConfigError("theta_grid entries must be finite and >= 0");
    }
    for (Provenance p : algorithms) {
        if (p == Provenance::kmeans) throw ConfigError("KMEANS is not an experiment algorithm");
    }
    if (!std::isfinite(prior_noise_sd) || prior_noise_sd < 0.0) throw ConfigError("prior_noise_sd must be >= 0");
    SplitSpec{prev_fraction, test_fraction, 1.0, 0}.validate();
    FitOptions probe = kmeans;
    probe.k = effective_k();
    probe.validate();
    if (const auto* csv = std::get_if<CsvSource>(&dataset)) {
        if (csv->d1 < 1) throw ConfigError("dataset.csv.d1 must be at least 1");
        if (!csv->label) throw ConfigError("experiments need a label column for evaluation");
    } else {
        std::get<SynthSpec>(dataset).validate();
    }
}

namespace {

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
        }
    }
}

template <typename T>
T get_as(const json& obj, const char* key, const std::string& where) {
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("missing or mistyped '" + std::string(key) + "' in " + where);
    }
}

template <typename T>
void read_optional(const json& obj, const char* key, T& out, const std::string& where) {
    if (obj.contains(key)) out = get_as<T>(obj, key, where);
}

std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base) {
    if (p.is_absolute() || base.empty()) return p;
    return base / p;
}

InitStrategy init_from_string(const std::string& s) {
    if (s == "greedy-spread") return InitStrategy::greedy_spread;
    if (s == "uniform-random") return InitStrategy::uniform_random;
    throw ConfigError("unknown init strategy '" + s + "'");
}

std::string to_string(InitStrategy s) {
    return s == InitStrategy::greedy_spread ? "greedy-spread" : "uniform-random";
}

SynthSpec parse_synth(const json& obj, const std::string& where) {
    reject_unknown(obj, {"k", "n", "d1", "d2", "separation", "informativeness", "noise_sd", "seed"}, where);
    SynthSpec s;
    read_optional(obj, "k", s.k, where);
    read_optional(obj, "n", s.n, where);
    read_optional(obj, "d1", s.d1, where);
    read_optional(obj, "d2", s.d2, where);
    read_optional(obj, "separation", s.separation, where);
    read_optional(obj, "informativeness", s.new_feature_informativeness, where);
    read_optional(obj, "noise_sd", s.noise_sd, where);
    read_optional(obj, "seed", s.seed, where);
    return s;
}

ordered_json synth_to_json(const SynthSpec& s) {
    return ordered_json{{"k", s.k},
                        {"n", s.n},
                        {"d1", s.d1},
                        {"d2", s.d2},
                        {"separation", s.separation},
                        {"informativeness", s.new_feature_informativeness},
                        {"noise_sd", s.noise_sd},
                        {"seed", s.seed}};
}

ordered_json config_to_json(const ExperimentConfig& c) {
    ordered_json dataset;
    if (const auto* csv = std::get_if<CsvSource>(&c.dataset)) {
        ordered_json src{{"path", csv->path.generic_string()}, {"d1", csv->d1}, {"d2", csv->d2}};
        if (csv->label) src["label"] = *csv->label;
        dataset["csv"] = src;
    } else {
        dataset["synthetic"] = synth_to_json(std::get<SynthSpec>(c.dataset));
    }
    ordered_json algorithms = ordered_json::array();
    for (Provenance p : c.algorithms) algorithms.push_back(std::string(to_string(p)));
    return ordered_json{{"dataset", dataset},
                        {"algorithms", algorithms},
                        {"k", c.effective_k()},
                        {"ra_grid", c.ra_grid},
                        {"theta_grid", c.theta_grid},
                        {"runs", c.runs},
                        {"seed", c.seed},
                        {"normalization", to_string(c.normalization)},
                        {"split", {{"prev_fraction", c.prev_fraction}, {"test_fraction", c.test_fraction}}},
                        {"kmeans",
                         {{"max_iters", c.kmeans.max_iters},
                          {"rel_tol", c.kmeans.rel_tol},
                          {"restarts", c.kmeans.restarts},
                          {"init", to_string(c.kmeans.init)}}},
                        {"prior_noise_sd", c.prior_noise_sd},
                        {"discrepancy_candidates", c.discrepancy_candidates}};
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(doc,
                   {"dataset", "algorithms", "k", "ra_grid", "theta_grid", "runs", "seed", "normalization", "split",
                    "kmeans", "prior_noise_sd", "discrepancy_candidates", "output"},
                   "config");

    ExperimentConfig c;
    if (!doc.contains("dataset")) throw ConfigError("config needs a 'dataset' section");
    const json& ds = doc.at("dataset");
    reject_unknown(ds, {"csv", "synthetic"}, "dataset");
    if (ds.contains("csv") == ds.contains("synthetic")) {
        throw ConfigError("dataset must contain exactly one of 'csv' or 'synthetic'");
    }
    if (ds.contains("csv")) {
        const json& csv = ds.at("csv");
        reject_unknown(csv, {"path", "d1", "d2", "label"}, "dataset.csv");
        CsvSource src;
        src.path = resolve(get_as<std::string>(csv, "path", "dataset.csv"), base_dir);
        src.d1 = get_as<std::size_t>(csv, "d1", "dataset.csv");
        src.d2 = get_as<std::size_t>(csv, "d2", "dataset.csv");
        if (csv.contains("label")) src.label = get_as<std::string>(csv, "label", "dataset.csv");
        c.dataset = src;
    } else {
        c.dataset = parse_synth(ds.at("synthetic"), "dataset.synthetic");
    }

    if (doc.contains("algorithms")) {
        c.algorithms.clear();
        for (const auto& name : get_as<std::vector<std::string>>(doc, "algorithms", "config")) {
            const Provenance p = provenance_from_string(name);
            if (std::find(c.algorithms.begin(), c.algorithms.end(), p) != c.algorithms.end()) {
                throw ConfigError("algorithm '" + name + "' listed twice");
            }
            c.algorithms.push_back(p);
        }
    }
    read_optional(doc, "k", c.k, "config");
    read_optional(doc, "ra_grid", c.ra_grid, "config");
    read_optional(doc, "theta_grid", c.theta_grid, "config");
    read_optional(doc, "runs", c.runs, "config");
    read_optional(doc, "seed", c.seed, "config");
    read_optional(doc, "prior_noise_sd", c.prior_noise_sd, "config");
    read_optional(doc, "discrepancy_candidates", c.discrepancy_candidates, "config");
    if (doc.contains("normalization")) {
        c.normalization = norm_mode_from_string(get_as<std::string>(doc, "normalization", "config"));
    }
    if (doc.contains("split")) {
        const json& s = doc.at("split");
        reject_unknown(s, {"prev_fraction", "test_fraction"}, "split");
        read_optional(s, "prev_fraction", c.prev_fraction, "split");
        read_optional(s, "test_fraction", c.test_fraction, "split");
    }
    if (doc.contains("kmeans")) {
        const json& km = doc.at("kmeans");
        reject_unknown(km, {"max_iters", "rel_tol", "restarts", "init"}, "kmeans");
        read_optional(km, "max_iters", c.kmeans.max_iters, "kmeans");
        read_optional(km, "rel_tol", c.kmeans.rel_tol, "kmeans");
        read_optional(km, "restarts", c.kmeans.restarts, "kmeans");
        if (km.contains("init")) c.kmeans.init = init_from_string(get_as<std::string>(km, "init", "kmeans"));
    }
    if (doc.contains("output")) {
        const json& out = doc.at("output");
        reject_unknown(out, {"structured", "table"}, "output");
        if (out.contains("structured")) {
            c.structured_output = resolve(get_as<std::string>(out, "structured", "output"), base_dir);
        }
        if (out.contains("table")) c.table_output = resolve(get_as<std::string>(out, "table", "output"), base_dir);
    }
    c.validate();
    return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_config(buffer.str(), path.parent_path());
}

// ---------------------------------------------------------------------------
// Fitting helpers

MetricSummary summarize(std::vector<double> values) {
    MetricSummary s;
    s.runs = std::move(values);
    if (s.runs.empty()) return s;
    const double n = static_cast<double>(s.runs.size());
    for (double v : s.runs) s.mean += v;
    s.mean /= n;
    double var = 0.0;
    for (double v : s.runs) var += (v - s.mean) * (v - s.mean);
    s.std = s.runs.size() > 1 ? std::sqrt(var / n) : 0.0;
    return s;
}

const CellReport* MetricsReport::find(Provenance algorithm, double ra) const {
    for (const auto& c : cells) {
        if (c.algorithm == algorithm && c.ra == ra) return &c;
    }
    return nullptr;
}

EvaluationScores evaluate_model(const CentersModel& model, const DataMatrix& test_full, const Labels& truth,
                                std::size_t d1) {
    const Assignment pred =
        model.dim() == test_full.cols() ? predict(test_full, model) : predict(test_full.column_block(0, d1), model);
    return {accuracy(pred, truth), pairwise_fscore(pred, truth), nmi(pred, truth)};
}

FitReport fit_baseline_p1(const StageBundle& bundle, const FitOptions& opts) {
    bundle.validate();
    FitReport r = lloyd_fit(bundle.prev_old, opts);
    r.model = r.model.with_provenance(Provenance::km_p1);
    return r;
}

FitReport fit_baseline_c1(const StageBundle& bundle, const FitOptions& opts) {
    bundle.validate();
    FitReport r = lloyd_fit(bundle.curr_old(), opts);
    r.model = r.model.with_provenance(Provenance::km_c1);
    return r;
}

ExperimentData load_experiment_data(const ExperimentConfig& config) {
    ExperimentData out;
    if (const auto* csv = std::get_if<CsvSource>(&config.dataset)) {
        auto loaded = load_dataset(csv->path, csv->d1, csv->d2, csv->label);
        if (!loaded.labels) throw ConfigError("experiments need a label column for evaluation");
        out.data = std::move(loaded.data);
        out.labels = std::move(*loaded.labels);
        out.d1 = csv->d1;
        out.d2 = csv->d2;
    } else {
        const auto& spec = std::get<SynthSpec>(config.dataset);
        auto [data, labels] = generate_synthetic(spec);
        out.data = std::move(data);
        out.labels = std::move(labels);
        out.d1 = spec.d1;
        out.d2 = spec.d2;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Runner

namespace {

struct CellAccumulator {
    std::optional<std::string> error;
    std::vector<double> acc, fscore, nmi, gamma, adaptation, discrepancy;
    std::size_t discrepancy_count = 0;
    std::vector<std::vector<EvaluationScores>> per_theta;  // model reuse: [theta][run]
};

CentersModel perturb_prior(const CentersModel& u0, double sd, std::uint64_t seed) {
    if (sd == 0.0) return u0;
    Rng rng(seed);
    std::normal_distribution<double> noise(0.0, sd);
    std::vector<double> values = u0.centers().values();
    for (double& v : values) v += noise(rng);
    return CentersModel(DataMatrix(u0.k(), u0.dim(), std::move(values)), u0.provenance(), u0.block_split());
}

void record(CellAccumulator& cell, const EvaluationScores& s) {
    cell.acc.push_back(s.acc);
    cell.fscore.push_back(s.fscore);
    cell.nmi.push_back(s.nmi);
}

// One run of one algorithm on one bundle. `prior` is fitted lazily and shared
// by the baseline on previous data and model reuse.
void run_algorithm(Provenance algorithm, const ExperimentConfig& config, const StageBundle& bundle,
                   const FitOptions& opts, std::uint64_t run_seed, const std::optional<FitReport>& pretrained,
                   CellAccumulator& cell) {
    const DataMatrix& test = *bundle.test_full;
    const Labels& truth = *bundle.labels_test;
    auto need_prior = [&]() -> const FitReport& {
        if (!pretrained) throw InsufficientDataError("pretraining on the previous stage failed");
        return *pretrained;
    };

    switch (algorithm) {
        case Provenance::km_p1: {
            const FitReport& fit = need_prior();
            record(cell, evaluate_model(fit.model, test, truth, bundle.d1));
            cell.gamma.push_back(max_row_norm(bundle.prev_old));
            break;
        }
        case Provenance::km_c1: {
            const FitReport fit = fit_baseline_c1(bundle, opts);
            record(cell, evaluate_model(fit.model, test, truth, bundle.d1));
            cell.gamma.push_back(max_row_norm(bundle.curr_old()));
            break;
        }
        case Provenance::fic_ft: {
            const FitReport fit = fit_ft(bundle, opts);
            record(cell, evaluate_model(fit.model, test, truth, bundle.d1));
            cell.gamma.push_back(max_row_norm(vstack(bundle.prev_old, bundle.curr_old())));
            break;
        }
        case Provenance::fic_dr: {
            const DrResult dr = fit_dr_detailed(bundle, opts);
            record(cell, evaluate_model(dr.fit.model, test, truth, bundle.d1));
            cell.gamma.push_back(max_row_norm(vstack(dr.completed, dr.current)));
            if (config.discrepancy_candidates > 0 && dr.completed.rows() > 0) {
                const auto candidates = discrepancy_candidates(dr.completed, dr.current, opts.k,
                                                               derive_seed(run_seed, "discrepancy"), {dr.fit.model},
                                                               config.discrepancy_candidates);
                const auto est = estimate_discrepancy(dr.completed, WeightVector::uniform(dr.completed.rows()),
                                                      dr.current, candidates);
                cell.discrepancy.push_back(est.value);
                cell.discrepancy_count = est.candidate_count;
            }
            break;
        }
        case Provenance::fic_da: {
            const FitReport fit = fit_da(bundle, opts);
            record(cell, evaluate_model(fit.model, test, truth, bundle.d1));
            cell.gamma.push_back(max_row_norm(bundle.curr_full));
            break;
        }
        case Provenance::fic_mr: {
            const CentersModel prior =
                perturb_prior(need_prior().model, config.prior_noise_sd, derive_seed(run_seed, "prior-noise"));
            cell.per_theta.resize(config.theta_grid.size());
            std::vector<EvaluationScores> scores;
            for (double theta : config.theta_grid) {
                const FitReport fit = fit_mr(bundle, prior, MrOptions{theta, opts});
                scores.push_back(evaluate_model(fit.model, test, truth, bundle.d1));
            }
            for (std::size_t t = 0; t < scores.size(); ++t) cell.per_theta[t].push_back(scores[t]);
            cell.gamma.push_back(max_row_norm(bundle.curr_full));
            cell.adaptation.push_back(adaptation_risk(bundle.curr_old(), prior));
            break;
        }
        case Provenance::kmeans:
            throw ConfigError("KMEANS is not an experiment algorithm");
    }
}

CellReport finalize(Provenance algorithm, double ra, CellAccumulator& acc, const ExperimentConfig& config) {
    CellReport cell;
    cell.algorithm = algorithm;
    cell.ra = ra;
    cell.error = acc.error;
    if (acc.error) return cell;

    if (algorithm == Provenance::fic_mr) {
        std::size_t best = 0;
        double best_mean = -1.0;
        for (std::size_t t = 0; t < acc.per_theta.size(); ++t) {
            double mean = 0.0;
            for (const auto& s : acc.per_theta[t]) mean += s.acc;
            mean /= static_cast<double>(acc.per_theta[t].size());
            cell.theta_scan.push_back({config.theta_grid[t], mean});
            if (mean > best_mean) {
                best_mean = mean;
                best = t;
            }
        }
        cell.selected_theta = config.theta_grid[best];
        for (const auto& s : acc.per_theta[best]) record(acc, s);
        cell.adaptation = summarize(acc.adaptation);
    }
    cell.acc = summarize(acc.acc);
    cell.fscore = summarize(acc.fscore);
    cell.nmi = summarize(acc.nmi);
    cell.gamma = summarize(acc.gamma);
    if (!acc.discrepancy.empty()) {
        cell.discrepancy = summarize(acc.discrepancy);
        cell.discrepancy_candidate_count = acc.discrepancy_count;
    }
    return cell;
}

}  // namespace

MetricsReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    return run_experiment(config, load_experiment_data(config));
}

MetricsReport run_experiment(const ExperimentConfig& config, const ExperimentData& data) {
    config.validate();
    const std::size_t n_alg = config.algorithms.size();
    const std::size_t n_ra = config.ra_grid.size();
    std::vector<CellAccumulator> cells(n_alg * n_ra);
    auto cell_at = [&](std::size_t a, std::size_t r) -> CellAccumulator& { return cells[a * n_ra + r]; };

    for (std::size_t ri = 0; ri < n_ra; ++ri) {
        for (std::size_t run = 0; run < config.runs; ++run) {
            const std::uint64_t run_seed = config.seed + run;

            StageBundle bundle;
            try {
                const SplitSpec split{config.prev_fraction, config.test_fraction, config.ra_grid[ri],
                                      derive_seed(run_seed, "split")};
                bundle = normalize_bundle(split_stages(data.data, data.labels, data.d1, data.d2, split),
                                          config.normalization);
            } catch (const std::exception& e) {
                for (std::size_t a = 0; a < n_alg; ++a) {
                    if (!cell_at(a, ri).error) cell_at(a, ri).error = e.what();
                }
                continue;
            }

            FitOptions opts = config.kmeans;
            opts.k = config.effective_k();
            opts.seed = derive_seed(run_seed, "fit");

            std::optional<FitReport> pretrained;
            const bool needs_prior =
                std::any_of(config.algorithms.begin(), config.algorithms.end(),
                            [](Provenance p) { return p == Provenance::km_p1 || p == Provenance::fic_mr; });
            std::string prior_error;
            if (needs_prior) {
                try {
                    pretrained = fit_baseline_p1(bundle, opts);
                } catch (const std::exception& e) {
                    prior_error = e.what();
                }
            }

            for (std::size_t a = 0; a < n_alg; ++a) {
                CellAccumulator& cell = cell_at(a, ri);
                if (cell.error) continue;
                try {
                    if (!pretrained && !prior_error.empty() &&
                        (config.algorithms[a] == Provenance::km_p1 || config.algorithms[a] == Provenance::fic_mr)) {
                        throw InsufficientDataError(prior_error);
                    }
                    run_algorithm(config.algorithms[a], config, bundle, opts, run_seed, pretrained, cell);
                } catch (const std::exception& e) {
                    cell.error = std::string(to_string(config.algorithms[a])) + ": " + e.what();
                }
            }
        }
    }

    MetricsReport report;
    report.config = config;
    for (std::size_t a = 0; a < n_alg; ++a) {
        for (std::size_t ri = 0; ri < n_ra; ++ri) {
            report.cells.push_back(finalize(config.algorithms[a], config.ra_grid[ri], cell_at(a, ri), config));
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Reports

std::string format_mean_std(double mean, double std) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f(%.3f)", mean, std);
    return buf;
}

namespace {

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

ordered_json summary_json(const MetricSummary& s) {
    return ordered_json{{"mean", s.mean}, {"std", s.std}, {"runs", s.runs}};
}

std::string render_structured(const MetricsReport& report) {
    ordered_json doc;
    doc["format"] = "fic-experiment-report";
    doc["version"] = 1;
    doc["config"] = config_to_json(report.config);
    doc["theta_selection"] = "per (algorithm, RA) cell: theta_grid value with the highest mean test ACC";
    doc["evaluation"] = "test rows; d1-dimensional models see the old-feature block only";
    ordered_json cells = ordered_json::array();
    for (const auto& c : report.cells) {
        ordered_json cell;
        cell["algorithm"] = std::string(to_string(c.algorithm));
        cell["ra"] = c.ra;
        if (c.error) {
            cell["status"] = "failed";
            cell["error"] = *c.error;
            cells.push_back(std::move(cell));
            continue;
        }
        cell["status"] = "ok";
        cell["acc"] = summary_json(c.acc);
        cell["fscore"] = summary_json(c.fscore);
        cell["nmi"] = summary_json(c.nmi);
        if (c.selected_theta) {
            cell["selected_theta"] = *c.selected_theta;
            ordered_json scan = ordered_json::array();
            for (const auto& t : c.theta_scan) scan.push_back({{"theta", t.theta}, {"mean_acc", t.mean_acc}});
            cell["theta_scan"] = std::move(scan);
        }
        ordered_json diag;
        diag["gamma"] = summary_json(c.gamma);
        if (c.adaptation) diag["adaptation_risk"] = summary_json(*c.adaptation);
        if (c.discrepancy) {
            diag["discrepancy"] = summary_json(*c.discrepancy);
            diag["discrepancy_candidates"] = c.discrepancy_candidate_count;
        }
        cell["diagnostics"] = std::move(diag);
        cells.push_back(std::move(cell));
    }
    doc["cells"] = std::move(cells);
    return doc.dump(2) + "\n";
}

std::string render_table(const MetricsReport& report) {
    std::ostringstream out;
    out << "algorithm,ra,metric,mean,std,value\n";
    for (const auto& c : report.cells) {
        const std::pair<const char*, const MetricSummary*> metrics[] = {
            {"ACC", &c.acc}, {"F-score", &c.fscore}, {"NMI", &c.nmi}};
        for (const auto& [name, summary] : metrics) {
            out << to_string(c.algorithm) << ',' << format_number(c.ra) << ',' << name << ',';
            if (c.error) {
                out << ",,NA\n";
                continue;
            }
            char mean[32], std[32];
            std::snprintf(mean, sizeof(mean), "%.3f", summary->mean);
            std::snprintf(std, sizeof(std), "%.3f", summary->std);
            out << mean << ',' << std << ',' << format_mean_std(summary->mean, summary->std) << '\n';
        }
    }
    return out.str();
}

}  // namespace

std::string render_report(const MetricsReport& report, ReportFormat format) {
    return format == ReportFormat::structured ? render_structured(report) : render_table(report);
}

void emit_report(const MetricsReport& report, ReportFormat format, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(DataError::Kind::io_failure, "cannot write report '" + path.string() + "'");
    out << render_report(report, format);
    if (!out) throw DataError(DataError::Kind::io_failure, "write to '" + path.string() + "' failed");
}

}  // namespace fic
