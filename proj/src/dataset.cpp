#include "fic/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "fic/error.hpp"
#include "fic/random.hpp"

namespace fic {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string_view rest(line);
    while (true) {
        const auto comma = rest.find(',');
        out.push_back(trim(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

std::string location(const std::filesystem::path& path, std::size_t line_no) {
    return path.string() + ":" + std::to_string(line_no);
}

double parse_real(const std::string& field, const std::filesystem::path& path, std::size_t line_no) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = field.data() + field.size();
    if (!field.empty() && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (field.empty() || ec != std::errc() || ptr != end) {
        throw DataError(DataError::Kind::parse_failure,
                        location(path, line_no) + ": cannot parse '" + field + "' as a real number");
    }
    if (!std::isfinite(value)) {
        throw DataError(DataError::Kind::non_finite_value,
                        location(path, line_no) + ": non-finite value '" + field + "'");
    }
    return value;
}

long long parse_label(const std::string& field, const std::filesystem::path& path, std::size_t line_no) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        throw DataError(DataError::Kind::parse_failure,
                        location(path, line_no) + ": cannot parse label '" + field + "' as an integer");
    }
    return value;
}

std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

LoadedDataset load_dataset(const std::filesystem::path& path, std::size_t d1, std::size_t d2,
                           const std::optional<std::string>& label_column) {
    std::ifstream in(path);
    if (!in) throw DataError(DataError::Kind::missing_file, "cannot open dataset '" + path.string() + "'");

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            header = split_fields(line);
            break;
        }
    }
    if (header.empty()) throw DataError(DataError::Kind::parse_failure, path.string() + ": missing header row");
    if (!header.front().empty() && header.front().rfind("\xEF\xBB\xBF", 0) == 0) header.front().erase(0, 3);

    std::optional<std::size_t> label_index;
    if (label_column) {
        const auto it = std::find(header.begin(), header.end(), *label_column);
        if (it == header.end()) {
            throw DataError(DataError::Kind::column_count_mismatch,
                            path.string() + ": no column named '" + *label_column + "'");
        }
        label_index = static_cast<std::size_t>(it - header.begin());
    }

    LoadedDataset out;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c != label_index) out.feature_names.push_back(header[c]);
    }
    const std::size_t features = out.feature_names.size();
    if (features != d1 + d2) {
        throw DataError(DataError::Kind::column_count_mismatch,
                        path.string() + ": " + std::to_string(features) + " feature columns, expected d1 + d2 = " +
                            std::to_string(d1 + d2));
    }

    std::vector<double> values;
    Labels labels;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw DataError(DataError::Kind::column_count_mismatch,
                            location(path, line_no) + ": " + std::to_string(fields.size()) + " fields, header has " +
                                std::to_string(header.size()));
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (c == label_index) {
                labels.push_back(parse_label(fields[c], path, line_no));
            } else {
                values.push_back(parse_real(fields[c], path, line_no));
            }
        }
        ++rows;
    }
    out.data = DataMatrix(rows, features, std::move(values));
    if (label_index) out.labels = std::move(labels);
    return out;
}

void write_csv(const std::filesystem::path& path, const DataMatrix& data, const std::optional<Labels>& labels,
               std::vector<std::string> feature_names, const std::string& label_name) {
    if (labels && labels->size() != data.rows()) throw DimensionError("write_csv: label count mismatch");
    if (feature_names.empty()) {
        for (std::size_t c = 0; c < data.cols(); ++c) feature_names.push_back("x" + std::to_string(c));
    }
    if (feature_names.size() != data.cols()) throw DimensionError("write_csv: header length mismatch");

    std::ofstream out(path);
    if (!out) throw DataError(DataError::Kind::io_failure, "cannot write '" + path.string() + "'");
    for (std::size_t c = 0; c < feature_names.size(); ++c) out << (c ? "," : "") << feature_names[c];
    if (labels) out << (feature_names.empty() ? "" : ",") << label_name;
    out << '\n';
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t c = 0; c < data.cols(); ++c) out << (c ? "," : "") << format_real(data(r, c));
        if (labels) out << (data.cols() ? "," : "") << (*labels)[r];
        out << '\n';
    }
    if (!out) throw DataError(DataError::Kind::io_failure, "write to '" + path.string() + "' failed");
}

void SplitSpec::validate() const {
    auto fraction_ok = [](double f) { return std::isfinite(f) && f >= 0.0 && f < 1.0; };
    if (!fraction_ok(prev_fraction) || !fraction_ok(test_fraction) || prev_fraction + test_fraction >= 1.0) {
        throw ConfigError("split fractions must be in [0, 1) with prev_fraction + test_fraction < 1");
    }
    if (!(ra > 0.0 && ra <= 1.0)) throw ConfigError("ra must lie in (0, 1]");
}

SplitSizes split_sizes(std::size_t n, const SplitSpec& spec) {
    spec.validate();
    // The epsilon keeps products such as 0.29 * 100 = 28.999... from flooring one short.
    constexpr double eps = 1e-9;
    auto floor_of = [](double fraction, std::size_t count) {
        return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(count) + eps));
    };
    SplitSizes s;
    s.prev = floor_of(spec.prev_fraction, n);
    s.test = floor_of(spec.test_fraction, n);
    s.pool = n - std::min(n, s.prev + s.test);
    s.curr = std::min(s.pool, std::max<std::size_t>(1, floor_of(spec.ra, s.pool)));
    return s;
}

StageBundle split_stages(const DataMatrix& data, const std::optional<Labels>& labels, std::size_t d1, std::size_t d2,
                         const SplitSpec& spec) {
    if (data.cols() != d1 + d2) {
        throw DimensionError("dataset has " + std::to_string(data.cols()) + " columns, expected d1 + d2 = " +
                             std::to_string(d1 + d2));
    }
    if (labels && labels->size() != data.rows()) throw DimensionError("label count does not match row count");
    const SplitSizes sizes = split_sizes(data.rows(), spec);
    if (sizes.prev == 0 || sizes.test == 0 || sizes.pool == 0) {
        throw InsufficientDataError(std::to_string(data.rows()) + " rows leave an empty stage partition");
    }

    std::vector<std::size_t> order(data.rows());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(spec.seed, "split"));
    std::shuffle(order.begin(), order.end(), rng);

    const auto begin = order.begin();
    const std::vector<std::size_t> prev_idx(begin, begin + static_cast<std::ptrdiff_t>(sizes.prev));
    const std::vector<std::size_t> test_idx(begin + static_cast<std::ptrdiff_t>(sizes.prev),
                                            begin + static_cast<std::ptrdiff_t>(sizes.prev + sizes.test));
    const auto pool_begin = begin + static_cast<std::ptrdiff_t>(sizes.prev + sizes.test);
    const std::vector<std::size_t> curr_idx(pool_begin, pool_begin + static_cast<std::ptrdiff_t>(sizes.curr));

    auto pick_labels = [&](const std::vector<std::size_t>& idx) -> std::optional<Labels> {
        if (!labels) return std::nullopt;
        Labels out;
        out.reserve(idx.size());
        for (std::size_t i : idx) out.push_back((*labels)[i]);
        return out;
    };

    StageBundle bundle;
    bundle.d1 = d1;
    bundle.d2 = d2;
    bundle.prev_old = data.select_rows(prev_idx).column_block(0, d1);
    bundle.curr_full = data.select_rows(curr_idx);
    bundle.test_full = data.select_rows(test_idx);
    bundle.labels_prev = pick_labels(prev_idx);
    bundle.labels_curr = pick_labels(curr_idx);
    bundle.labels_test = pick_labels(test_idx);
    return bundle;
}

NormMode norm_mode_from_string(const std::string& name) {
    if (name == "none") return NormMode::none;
    if (name == "minmax") return NormMode::minmax;
    if (name == "zscore") return NormMode::zscore;
    throw ConfigError("unknown normalization mode '" + name + "'");
}

std::string to_string(NormMode mode) {
    switch (mode) {
        case NormMode::none: return "none";
        case NormMode::minmax: return "minmax";
        case NormMode::zscore: return "zscore";
    }
    return "none";
}

NormParams fit_normalization(const DataMatrix& data, NormMode mode) {
    NormParams p;
    p.mode = mode;
    p.offset.assign(data.cols(), 0.0);
    p.scale.assign(data.cols(), 1.0);
    if (mode == NormMode::none || data.rows() == 0) return p;

    const double n = static_cast<double>(data.rows());
    for (std::size_t c = 0; c < data.cols(); ++c) {
        double offset = 0.0;
        double scale = 0.0;
        if (mode == NormMode::minmax) {
            double lo = data(0, c), hi = data(0, c);
            for (std::size_t r = 1; r < data.rows(); ++r) {
                lo = std::min(lo, data(r, c));
                hi = std::max(hi, data(r, c));
            }
            offset = lo;
            scale = hi - lo;
        } else {
            double mean = 0.0;
            for (std::size_t r = 0; r < data.rows(); ++r) mean += data(r, c);
            mean /= n;
            double var = 0.0;
            for (std::size_t r = 0; r < data.rows(); ++r) var += (data(r, c) - mean) * (data(r, c) - mean);
            offset = mean;
            scale = std::sqrt(var / n);  // population sd
        }
        if (scale > 0.0) {
            p.offset[c] = offset;
            p.scale[c] = scale;
        }
    }
    return p;
}

DataMatrix apply_normalization(const DataMatrix& data, const NormParams& params) {
    if (params.mode == NormMode::none) return data;
    if (params.offset.size() != data.cols()) throw DimensionError("normalization parameters have the wrong width");
    std::vector<double> out(data.values());
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t c = 0; c < data.cols(); ++c) {
            double& v = out[r * data.cols() + c];
            v = (v - params.offset[c]) / params.scale[c];
        }
    }
    return DataMatrix(data.rows(), data.cols(), std::move(out));
}

std::pair<DataMatrix, NormParams> normalize(const DataMatrix& data, NormMode mode,
                                            const std::optional<NormParams>& fitted) {
    NormParams params = fitted ? *fitted : fit_normalization(data, mode);
    return {apply_normalization(data, params), std::move(params)};
}

StageBundle normalize_bundle(const StageBundle& bundle, NormMode mode) {
    if (mode == NormMode::none) return bundle;
    bundle.validate();
    const NormParams old_params = fit_normalization(vstack(bundle.prev_old, bundle.curr_old()), mode);
    const NormParams new_params = fit_normalization(bundle.curr_new(), mode);

    NormParams full = old_params;
    full.offset.insert(full.offset.end(), new_params.offset.begin(), new_params.offset.end());
    full.scale.insert(full.scale.end(), new_params.scale.begin(), new_params.scale.end());

    StageBundle out = bundle;
    out.prev_old = apply_normalization(bundle.prev_old, old_params);
    out.curr_full = apply_normalization(bundle.curr_full, full);
    if (bundle.test_full) out.test_full = apply_normalization(*bundle.test_full, full);
    return out;
}

void SynthSpec::validate() const {
    if (k < 1 || n < 1 || d1 < 1 || d2 < 1) throw ConfigError("synthetic counts must all be at least 1");
    if (!(noise_sd > 0.0) || !std::isfinite(noise_sd)) throw ConfigError("noise_sd must be positive");
    if (!std::isfinite(separation) || separation < 0.0) throw ConfigError("separation must be finite and >= 0");
    if (!(new_feature_informativeness >= 0.0 && new_feature_informativeness <= 1.0)) {
        throw ConfigError("new_feature_informativeness must lie in [0, 1]");
    }
    if (n < k) throw InsufficientDataError("synthetic data needs n >= k");
}

namespace {

// k points at distance `separation` from each other when k <= dims.
std::vector<double> cluster_vertices(std::size_t k, std::size_t dims, double separation, Rng& rng) {
    const double radius = separation / std::sqrt(2.0);
    std::vector<double> out(k * dims, 0.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t c = 0; c < k; ++c) {
        double* v = out.data() + c * dims;
        if (c < dims) {
            v[c] = radius;
            continue;
        }
        double norm = 0.0;
        while (norm == 0.0) {
            for (std::size_t j = 0; j < dims; ++j) {
                v[j] = gauss(rng);
                norm += v[j] * v[j];
            }
        }
        norm = std::sqrt(norm);
        for (std::size_t j = 0; j < dims; ++j) v[j] *= radius / norm;
    }
    return out;
}

}  // namespace

std::pair<DataMatrix, Labels> generate_synthetic(const SynthSpec& spec) {
    spec.validate();
    const std::size_t dim = spec.d1 + spec.d2;
    Rng rng(derive_seed(spec.seed, "synthetic"));

    const auto old_means = cluster_vertices(spec.k, spec.d1, spec.separation, rng);
    const auto distinct = cluster_vertices(spec.k, spec.d2, spec.separation, rng);
    std::vector<double> shared(spec.d2, 0.0);
    for (std::size_t c = 0; c < spec.k; ++c) {
        for (std::size_t j = 0; j < spec.d2; ++j) shared[j] += distinct[c * spec.d2 + j];
    }
    for (double& v : shared) v /= static_cast<double>(spec.k);

    const double a = spec.new_feature_informativeness;
    std::vector<double> means(spec.k * dim);
    for (std::size_t c = 0; c < spec.k; ++c) {
        for (std::size_t j = 0; j < spec.d1; ++j) means[c * dim + j] = old_means[c * spec.d1 + j];
        for (std::size_t j = 0; j < spec.d2; ++j) {
            means[c * dim + spec.d1 + j] = a * distinct[c * spec.d2 + j] + (1.0 - a) * shared[j];
        }
    }

    std::normal_distribution<double> noise(0.0, spec.noise_sd);
    std::vector<double> rows(spec.n * dim);
    Labels cluster(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const std::size_t c = i % spec.k;
        cluster[i] = static_cast<long long>(c);
        for (std::size_t j = 0; j < dim; ++j) rows[i * dim + j] = means[c * dim + j] + noise(rng);
    }

    std::vector<std::size_t> order(spec.n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<double> shuffled;
    shuffled.reserve(rows.size());
    Labels labels;
    labels.reserve(spec.n);
    for (std::size_t idx : order) {
        shuffled.insert(shuffled.end(), rows.begin() + static_cast<std::ptrdiff_t>(idx * dim),
                        rows.begin() + static_cast<std::ptrdiff_t>((idx + 1) * dim));
        labels.push_back(cluster[idx]);
    }
    return {DataMatrix(spec.n, dim, std::move(shuffled)), std::move(labels)};
}

}  // namespace fic
