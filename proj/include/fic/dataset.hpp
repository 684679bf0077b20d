#ifndef FIC_DATASET_HPP
#define FIC_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fic/incremental.hpp"
#include "fic/matrix.hpp"

namespace fic {

struct LoadedDataset {
    DataMatrix data;  // d1 old columns followed by d2 new columns
    std::optional<Labels> labels;
    std::vector<std::string> feature_names;
};

// Reads a comma-separated file with a header row. Every column except the
// optional label column is a feature, kept in file order.
LoadedDataset load_dataset(const std::filesystem::path& path, std::size_t d1, std::size_t d2,
                           const std::optional<std::string>& label_column = std::nullopt);

// Writes a header row and full-precision values. Column names default to x0, x1, ...
void write_csv(const std::filesystem::path& path, const DataMatrix& data, const std::optional<Labels>& labels = {},
               std::vector<std::string> feature_names = {}, const std::string& label_name = "label");

struct SplitSpec {
    double prev_fraction = 0.5;
    double test_fraction = 0.2;
    double ra = 0.1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SplitSizes {
    std::size_t prev = 0;
    std::size_t test = 0;
    std::size_t pool = 0;
    std::size_t curr = 0;
};

// Partition sizes for n rows: floor(prev_fraction * n), floor(test_fraction * n),
// and floor(ra * pool) but at least one row of the remaining pool.
SplitSizes split_sizes(std::size_t n, const SplitSpec& spec);

// Seeded shuffle, then previous (old columns only) / test / current-pool slices;
// the current stage keeps the first split_sizes().curr rows of the pool.
StageBundle split_stages(const DataMatrix& data, const std::optional<Labels>& labels, std::size_t d1, std::size_t d2,
                         const SplitSpec& spec);

enum class NormMode { none, minmax, zscore };

NormMode norm_mode_from_string(const std::string& name);
std::string to_string(NormMode mode);

// Per-column affine map x -> (x - offset) / scale. Degenerate columns get
// offset 0 and scale 1 and pass through unchanged.
struct NormParams {
    NormMode mode = NormMode::none;
    std::vector<double> offset;
    std::vector<double> scale;
};

NormParams fit_normalization(const DataMatrix& data, NormMode mode);
DataMatrix apply_normalization(const DataMatrix& data, const NormParams& params);

// Fits on `data` unless `fitted` is given, then applies.
std::pair<DataMatrix, NormParams> normalize(const DataMatrix& data, NormMode mode,
                                            const std::optional<NormParams>& fitted = std::nullopt);

// Normalizes a bundle with parameters fitted on training rows only: the old
// columns on previous + current rows, the new columns on current rows. The
// test matrix receives the same transform.
StageBundle normalize_bundle(const StageBundle& bundle, NormMode mode);

struct SynthSpec {
    std::size_t k = 4;
    std::size_t n = 2000;
    std::size_t d1 = 5;
    std::size_t d2 = 5;
    double separation = 5.0;
    double new_feature_informativeness = 1.0;
    double noise_sd = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

// Gaussian clusters, balanced sizes, rows shuffled. Cluster means in the old
// block sit `separation` apart on scaled coordinate axes (extra clusters beyond
// the block dimension get seeded random directions at the same radius). In the
// new block each mean blends a cluster-specific vertex with the shared centroid
// of those vertices by `new_feature_informativeness`.
std::pair<DataMatrix, Labels> generate_synthetic(const SynthSpec& spec);

}  // namespace fic

#endif  // FIC_DATASET_HPP
