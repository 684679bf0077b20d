#ifndef FIC_EXPERIMENT_HPP
#define FIC_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fic/dataset.hpp"
#include "fic/incremental.hpp"
#include "fic/kmeans.hpp"
#include "fic/matrix.hpp"

namespace fic {

struct CsvSource {
    std::filesystem::path path;
    std::size_t d1 = 0;
    std::size_t d2 = 0;
    std::optional<std::string> label;
};

struct ExperimentConfig {
    std::variant<CsvSource, SynthSpec> dataset = SynthSpec{};
    std::vector<Provenance> algorithms = {Provenance::km_p1,  Provenance::km_c1,  Provenance::fic_ft,
                                          Provenance::fic_dr, Provenance::fic_da, Provenance::fic_mr};
    std::vector<double> ra_grid = {0.1, 0.2, 0.3, 0.4};
    std::vector<double> theta_grid = {1.0, 10.0, 100.0, 1000.0};
    std::size_t runs = 10;
    std::size_t k = 0;  // 0: take k from the synthetic spec
    std::uint64_t seed = 0;
    NormMode normalization = NormMode::none;
    double prev_fraction = 0.5;
    double test_fraction = 0.2;
    FitOptions kmeans;  // k and seed are overwritten per run
    // Gaussian perturbation added to the pretrained centers before model reuse.
    double prior_noise_sd = 0.0;
    // Extra k-means candidates per sample for the reconstruction discrepancy; 0 disables the diagnostic.
    std::size_t discrepancy_candidates = 32;
    std::optional<std::filesystem::path> structured_output;
    std::optional<std::filesystem::path> table_output;

    std::size_t effective_k() const;
    void validate() const;
};

// Parses the JSON config. Relative paths resolve against `base_dir`. Unknown keys are rejected.
ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct MetricSummary {
    double mean = 0.0;
    double std = 0.0;  // population standard deviation; 0 for a single run
    std::vector<double> runs;
};

MetricSummary summarize(std::vector<double> values);

struct ThetaScore {
    double theta = 0.0;
    double mean_acc = 0.0;
};

struct CellReport {
    Provenance algorithm = Provenance::kmeans;
    double ra = 0.0;
    std::optional<std::string> error;  // set when any run of this cell failed
    MetricSummary acc;
    MetricSummary fscore;
    MetricSummary nmi;
    std::optional<double> selected_theta;  // model reuse only
    std::vector<ThetaScore> theta_scan;
    MetricSummary gamma;                      // radius of the training rows
    std::optional<MetricSummary> adaptation;  // model reuse only
    std::optional<MetricSummary> discrepancy; // reconstruction only
    std::size_t discrepancy_candidate_count = 0;
};

struct MetricsReport {
    ExperimentConfig config;
    std::vector<CellReport> cells;  // algorithm-major, then RA in grid order

    const CellReport* find(Provenance algorithm, double ra) const;
};

struct EvaluationScores {
    double acc = 0.0;
    double fscore = 0.0;
    double nmi = 0.0;
};

// Scores a model on test rows. Models of dimension d1 see only the test
// matrix's old-feature block; full-dimension models see every column.
EvaluationScores evaluate_model(const CentersModel& model, const DataMatrix& test_full, const Labels& truth,
                                std::size_t d1);

// k-means on the previous stage's old features.
FitReport fit_baseline_p1(const StageBundle& bundle, const FitOptions& opts);

// k-means on the current stage's old-feature block.
FitReport fit_baseline_c1(const StageBundle& bundle, const FitOptions& opts);

// Loads or generates the configured dataset: data, labels, d1, d2.
struct ExperimentData {
    DataMatrix data;
    Labels labels;
    std::size_t d1 = 0;
    std::size_t d2 = 0;
};
ExperimentData load_experiment_data(const ExperimentConfig& config);

MetricsReport run_experiment(const ExperimentConfig& config);
MetricsReport run_experiment(const ExperimentConfig& config, const ExperimentData& data);

enum class ReportFormat { table_csv, structured };

// "0.772(0.055)"
std::string format_mean_std(double mean, double std);

std::string render_report(const MetricsReport& report, ReportFormat format);
void emit_report(const MetricsReport& report, ReportFormat format, const std::filesystem::path& path);

}  // namespace fic

#endif  // FIC_EXPERIMENT_HPP
