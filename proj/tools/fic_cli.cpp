// Command-line front end: fit, evaluate, reconstruct, experiment, synth, discrepancy.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fic/dataset.hpp"
#include "fic/diagnostics.hpp"
#include "fic/error.hpp"
#include "fic/experiment.hpp"
#include "fic/incremental.hpp"
#include "fic/model_io.hpp"
#include "fic/numerics.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUnexpected = 1, kConfig = 2, kData = 3, kNumeric = 4 };

struct BundleArgs {
    std::string data;
    std::string prev;
    std::string curr;
    std::size_t d1 = 0;
    std::size_t d2 = 0;
    std::string label;
    double ra = 0.1;
    std::uint64_t seed = 0;
};

void add_bundle_options(CLI::App* cmd, BundleArgs& args) {
    cmd->add_option("--data", args.data, "CSV split into previous/test/current stages");
    cmd->add_option("--prev", args.prev, "CSV with the previous stage (d1 feature columns)");
    cmd->add_option("--curr", args.curr, "CSV with the current stage (d1 + d2 feature columns)");
    cmd->add_option("--d1", args.d1, "number of old features")->required();
    cmd->add_option("--d2", args.d2, "number of new features")->required();
    cmd->add_option("--label", args.label, "name of the label column, if any");
    cmd->add_option("--ra", args.ra, "fraction of the current pool used when splitting --data")->capture_default_str();
    cmd->add_option("--seed", args.seed, "seed for splitting and fitting")->capture_default_str();
}

std::optional<std::string> label_of(const BundleArgs& args) {
    if (args.label.empty()) return std::nullopt;
    return args.label;
}

fic::StageBundle load_bundle(const BundleArgs& args) {
    const auto label = label_of(args);
    if (!args.data.empty()) {
        if (!args.prev.empty() || !args.curr.empty()) throw fic::ConfigError("use either --data or --prev/--curr");
        const auto ds = fic::load_dataset(args.data, args.d1, args.d2, label);
        fic::SplitSpec spec;
        spec.ra = args.ra;
        spec.seed = args.seed;
        return fic::split_stages(ds.data, ds.labels, args.d1, args.d2, spec);
    }
    if (args.prev.empty() || args.curr.empty()) throw fic::ConfigError("need --data, or both --prev and --curr");
    const auto prev = fic::load_dataset(args.prev, args.d1, 0, label);
    const auto curr = fic::load_dataset(args.curr, args.d1, args.d2, label);
    fic::StageBundle bundle;
    bundle.d1 = args.d1;
    bundle.d2 = args.d2;
    bundle.prev_old = prev.data;
    bundle.curr_full = curr.data;
    bundle.labels_prev = prev.labels;
    bundle.labels_curr = curr.labels;
    bundle.validate();
    return bundle;
}

nlohmann::ordered_json report_json(const fic::FitReport& r) {
    nlohmann::ordered_json out;
    out["algorithm"] = std::string(fic::to_string(r.model.provenance()));
    out["k"] = r.model.k();
    out["dim"] = r.model.dim();
    out["risk"] = r.risk;
    out["data_risk"] = r.data_risk;
    out["iterations"] = r.iterations;
    out["converged"] = r.converged;
    std::vector<std::vector<double>> centers;
    for (std::size_t s = 0; s < r.model.k(); ++s) {
        const auto c = r.model.center(s);
        centers.emplace_back(c.begin(), c.end());
    }
    out["centers"] = centers;
    return out;
}

int run_fit(const BundleArgs& args, const std::string& algorithm, fic::FitOptions opts, double theta,
            const std::string& prior_path, const std::string& model_out) {
    const fic::Provenance which = fic::provenance_from_string(algorithm);
    const auto bundle = load_bundle(args);
    opts.seed = args.seed;
    fic::FitReport report;
    std::optional<double> adaptation;
    switch (which) {
        case fic::Provenance::km_p1: report = fic::fit_baseline_p1(bundle, opts); break;
        case fic::Provenance::km_c1: report = fic::fit_baseline_c1(bundle, opts); break;
        case fic::Provenance::fic_ft: report = fic::fit_ft(bundle, opts); break;
        case fic::Provenance::fic_dr: report = fic::fit_dr(bundle, opts); break;
        case fic::Provenance::fic_da: report = fic::fit_da(bundle, opts); break;
        case fic::Provenance::fic_mr: {
            const fic::CentersModel prior =
                prior_path.empty() ? fic::fit_baseline_p1(bundle, opts).model : fic::load_model(prior_path);
            report = fic::fit_mr(bundle, prior, fic::MrOptions{theta, opts});
            adaptation = fic::adaptation_risk(bundle.curr_old(), prior);
            break;
        }
        case fic::Provenance::kmeans: throw fic::ConfigError("choose one of KM-P1, KM-C1, FIC-FT, FIC-DR, FIC-DA, FIC-MR");
    }
    auto out = report_json(report);
    if (adaptation) out["adaptation_risk"] = *adaptation;
    if (bundle.test_full && bundle.labels_test) {
        const auto scores = fic::evaluate_model(report.model, *bundle.test_full, *bundle.labels_test, bundle.d1);
        out["test"] = {{"acc", scores.acc}, {"fscore", scores.fscore}, {"nmi", scores.nmi}};
    }
    if (!model_out.empty()) fic::save_model(model_out, report.model);
    std::cout << out.dump(2) << '\n';
    return kOk;
}

int run_evaluate(const std::string& model_path, const std::string& test_path, std::size_t d1, std::size_t d2,
                 const std::string& label) {
    if (label.empty()) throw fic::ConfigError("evaluate needs --label");
    const auto model = fic::load_model(model_path);
    const auto test = fic::load_dataset(test_path, d1, d2, label);
    if (model.dim() != d1 && model.dim() != d1 + d2) {
        throw fic::DimensionError("model dimension matches neither d1 nor d1 + d2");
    }
    const auto scores = fic::evaluate_model(model, test.data, *test.labels, d1);
    nlohmann::ordered_json out{{"acc", scores.acc}, {"fscore", scores.fscore}, {"nmi", scores.nmi}};
    std::cout << out.dump(2) << '\n';
    return kOk;
}

int run_reconstruct(const BundleArgs& args, fic::FitOptions opts, const std::string& out_path) {
    const auto bundle = load_bundle(args);
    opts.seed = args.seed;
    const auto completed = fic::reconstruct_missing(bundle, opts);
    if (out_path.empty()) throw fic::ConfigError("reconstruct needs --out");
    fic::write_csv(out_path, completed, bundle.labels_prev, {}, args.label.empty() ? "label" : args.label);
    return kOk;
}

int run_experiment_cmd(const std::string& config_path, const std::string& structured, const std::string& table) {
    auto config = fic::load_experiment_config(config_path);
    if (!structured.empty()) config.structured_output = structured;
    if (!table.empty()) config.table_output = table;
    const auto report = fic::run_experiment(config);
    if (config.structured_output) fic::emit_report(report, fic::ReportFormat::structured, *config.structured_output);
    if (config.table_output) fic::emit_report(report, fic::ReportFormat::table_csv, *config.table_output);
    if (!config.structured_output && !config.table_output) {
        std::cout << fic::render_report(report, fic::ReportFormat::table_csv);
    }
    return kOk;
}

int run_synth(const fic::SynthSpec& spec, const std::string& out_path) {
    const auto [data, labels] = fic::generate_synthetic(spec);
    fic::write_csv(out_path, data, labels);
    return kOk;
}

int run_discrepancy(const std::string& reconstructed_path, const std::string& current_path,
                    const std::vector<std::string>& model_paths, const std::string& weights_path, std::size_t dim,
                    std::size_t random_candidates, std::size_t k, std::uint64_t seed) {
    const auto reconstructed = fic::load_dataset(reconstructed_path, dim, 0).data;
    const auto current = fic::load_dataset(current_path, dim, 0).data;
    std::vector<fic::CentersModel> models;
    for (const auto& p : model_paths) models.push_back(fic::load_model(p));
    if (random_candidates > 0) {
        if (k == 0) throw fic::ConfigError("--random-candidates needs --k");
        models = fic::discrepancy_candidates(reconstructed, current, k, seed, models, random_candidates);
    }
    fic::WeightVector weights = fic::WeightVector::uniform(reconstructed.rows());
    if (!weights_path.empty()) weights = fic::WeightVector(fic::load_dataset(weights_path, 1, 0).data.values());
    const auto est = fic::estimate_discrepancy(reconstructed, weights, current, models);
    nlohmann::ordered_json out{{"value", est.value},
                               {"candidate_count", est.candidate_count},
                               {"attaining_candidate", est.attaining_candidate}};
    std::cout << out.dump(2) << '\n';
    return kOk;
}

void add_kmeans_options(CLI::App* cmd, fic::FitOptions& opts) {
    cmd->add_option("--k", opts.k, "number of clusters")->required();
    cmd->add_option("--max-iters", opts.max_iters)->capture_default_str();
    cmd->add_option("--rel-tol", opts.rel_tol)->capture_default_str();
    cmd->add_option("--restarts", opts.restarts)->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feature-incremental clustering toolkit"};
    app.require_subcommand(1);

    BundleArgs fit_args;
    fic::FitOptions fit_opts;
    std::string algorithm;
    double theta = 1.0;
    std::string prior_path;
    std::string model_out;
    auto* fit = app.add_subcommand("fit", "fit one algorithm on one stage bundle and print the report");
    add_bundle_options(fit, fit_args);
    add_kmeans_options(fit, fit_opts);
    fit->add_option("--algorithm", algorithm, "KM-P1, KM-C1, FIC-FT, FIC-DR, FIC-DA or FIC-MR")->required();
    fit->add_option("--theta", theta, "prior strength for FIC-MR")->capture_default_str();
    fit->add_option("--prior", prior_path, "pretrained d1-dimensional model for FIC-MR");
    fit->add_option("--model-out", model_out, "write the fitted model here");

    std::string eval_model, eval_test, eval_label;
    std::size_t eval_d1 = 0, eval_d2 = 0;
    auto* evaluate = app.add_subcommand("evaluate", "score a saved model on labelled test rows");
    evaluate->add_option("--model", eval_model)->required();
    evaluate->add_option("--test", eval_test)->required();
    evaluate->add_option("--d1", eval_d1)->required();
    evaluate->add_option("--d2", eval_d2)->required();
    evaluate->add_option("--label", eval_label)->required();

    BundleArgs rec_args;
    fic::FitOptions rec_opts;
    std::string rec_out;
    auto* reconstruct = app.add_subcommand("reconstruct", "complete the previous stage's new features as CSV");
    add_bundle_options(reconstruct, rec_args);
    add_kmeans_options(reconstruct, rec_opts);
    reconstruct->add_option("--out", rec_out)->required();

    std::string config_path, structured_out, table_out;
    auto* experiment = app.add_subcommand("experiment", "run a configured experiment and write reports");
    experiment->add_option("--config", config_path)->required();
    experiment->add_option("--structured", structured_out, "override the structured report path");
    experiment->add_option("--table", table_out, "override the table report path");

    fic::SynthSpec synth_spec;
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "write a synthetic feature-incremental dataset");
    synth->add_option("--k", synth_spec.k)->capture_default_str();
    synth->add_option("--n", synth_spec.n)->capture_default_str();
    synth->add_option("--d1", synth_spec.d1)->capture_default_str();
    synth->add_option("--d2", synth_spec.d2)->capture_default_str();
    synth->add_option("--separation", synth_spec.separation)->capture_default_str();
    synth->add_option("--informativeness", synth_spec.new_feature_informativeness)->capture_default_str();
    synth->add_option("--noise-sd", synth_spec.noise_sd)->capture_default_str();
    synth->add_option("--seed", synth_spec.seed)->capture_default_str();
    synth->add_option("--out", synth_out)->required();

    std::string disc_p, disc_c, disc_w;
    std::vector<std::string> disc_models;
    std::size_t disc_dim = 0, disc_random = 0, disc_k = 0;
    std::uint64_t disc_seed = 0;
    auto* discrepancy = app.add_subcommand("discrepancy", "estimate the weighted empirical discrepancy");
    discrepancy->add_option("--reconstructed", disc_p, "CSV of the (reconstructed) previous sample")->required();
    discrepancy->add_option("--current", disc_c, "CSV of the current sample")->required();
    discrepancy->add_option("--dim", disc_dim, "feature columns in both files")->required();
    discrepancy->add_option("--model", disc_models, "candidate model files");
    discrepancy->add_option("--weights", disc_w, "single-column CSV of row weights");
    discrepancy->add_option("--random-candidates", disc_random, "extra k-means candidates per sample");
    discrepancy->add_option("--k", disc_k);
    discrepancy->add_option("--seed", disc_seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*fit) return run_fit(fit_args, algorithm, fit_opts, theta, prior_path, model_out);
        if (*evaluate) return run_evaluate(eval_model, eval_test, eval_d1, eval_d2, eval_label);
        if (*reconstruct) return run_reconstruct(rec_args, rec_opts, rec_out);
        if (*experiment) return run_experiment_cmd(config_path, structured_out, table_out);
        if (*synth) return run_synth(synth_spec, synth_out);
        if (*discrepancy) {
            return run_discrepancy(disc_p, disc_c, disc_models, disc_w, disc_dim, disc_random, disc_k, disc_seed);
        }
    } catch (const fic::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.family()) {
            case fic::ErrorFamily::config: return kConfig;
            case fic::ErrorFamily::data: return kData;
            case fic::ErrorFamily::numeric: return kNumeric;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUnexpected;
    }
    return kUnexpected;
}
