#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include "fic/dataset.hpp"
#include "fic/error.hpp"
#include "fic/kmeans.hpp"
#include "fic/metrics.hpp"
#include "oracles.hpp"

using namespace fic;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() /
                ("fic_dataset_" + std::to_string(std::random_device{}()) + "_" + std::to_string(counter_++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path file(const std::string& name, const std::string& content) const {
        const auto p = path_ / name;
        std::ofstream(p) << content;
        return p;
    }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
    static inline int counter_ = 0;
};

DataMatrix indexed_rows(std::size_t n, std::size_t cols) {
    std::vector<double> v;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < cols; ++j) v.push_back(static_cast<double>(i) + 0.1 * static_cast<double>(j));
    return DataMatrix(n, cols, std::move(v));
}

DataError::Kind load_error_kind(const fs::path& p, std::size_t d1, std::size_t d2,
                                const std::optional<std::string>& label = std::nullopt) {
    try {
        load_dataset(p, d1, d2, label);
    } catch (const DataError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected a DataError";
    return DataError::Kind::io_failure;
}

}  // namespace

TEST(LoadDataset, SmallFileWithLabel) {
    TempDir dir;
    auto ds = load_dataset(dir.file("a.csv", "a,b,y\n0,1,0\n2,3,1"), 1, 1, "y");
    EXPECT_EQ(ds.data, DataMatrix::from_rows({{0, 1}, {2, 3}}));
    EXPECT_EQ(*ds.labels, (Labels{0, 1}));
    EXPECT_EQ(ds.feature_names, (std::vector<std::string>{"a", "b"}));
}

TEST(LoadDataset, LabelColumnAnywhereAndCrlf) {
    TempDir dir;
    auto ds = load_dataset(dir.file("a.csv", "y,a,b\r\n4,0.5,-1e3\r\n2,1,2\r\n"), 1, 1, "y");
    EXPECT_EQ(ds.data, DataMatrix::from_rows({{0.5, -1000}, {1, 2}}));
    EXPECT_EQ(*ds.labels, (Labels{4, 2}));
}

TEST(LoadDataset, ErrorVariants) {
    TempDir dir;
    EXPECT_EQ(load_error_kind(dir.path() / "missing.csv", 1, 1), DataError::Kind::missing_file);
    EXPECT_EQ(load_error_kind(dir.file("nan.csv", "a,b\n0,NaN\n"), 1, 1), DataError::Kind::non_finite_value);
    EXPECT_EQ(load_error_kind(dir.file("inf.csv", "a,b\n0,inf\n"), 1, 1), DataError::Kind::non_finite_value);
    EXPECT_EQ(load_error_kind(dir.file("bad.csv", "a,b\n0,abc\n"), 1, 1), DataError::Kind::parse_failure);
    EXPECT_EQ(load_error_kind(dir.file("cols.csv", "a,b,c\n0,1,2\n"), 1, 1), DataError::Kind::column_count_mismatch);
    EXPECT_EQ(load_error_kind(dir.file("ragged.csv", "a,b\n0,1\n2\n"), 1, 1), DataError::Kind::column_count_mismatch);
    EXPECT_EQ(load_error_kind(dir.file("nolabel.csv", "a,b\n0,1\n"), 1, 0, "y"),
              DataError::Kind::column_count_mismatch);
    EXPECT_EQ(load_error_kind(dir.file("badlabel.csv", "a,y\n0,1.5\n"), 1, 0, "y"), DataError::Kind::parse_failure);
    EXPECT_EQ(load_error_kind(dir.file("empty.csv", ""), 1, 0), DataError::Kind::parse_failure);
}

TEST(LoadDataset, DermatologyShapedFile) {
    TempDir dir;
    std::mt19937_64 rng(366);
    std::uniform_int_distribution<int> val(0, 3), cls(1, 6);
    std::string text;
    for (int j = 0; j < 33; ++j) text += "f" + std::to_string(j) + ",";
    text += "class\n";
    std::set<long long> classes;
    for (int i = 0; i < 366; ++i) {
        for (int j = 0; j < 33; ++j) text += std::to_string(val(rng)) + ",";
        const int c = i < 6 ? i + 1 : cls(rng);
        classes.insert(c);
        text += std::to_string(c) + "\n";
    }
    auto ds = load_dataset(dir.file("derm.csv", text), 11, 22, "class");
    EXPECT_EQ(ds.data.rows(), 366u);
    EXPECT_EQ(ds.data.cols(), 33u);
    EXPECT_EQ(classes.size(), 6u);
    EXPECT_EQ(std::set<long long>(ds.labels->begin(), ds.labels->end()), classes);
}

TEST(WriteCsv, RoundTripsExactly) {
    TempDir dir;
    std::mt19937_64 rng(3);
    auto d = oracle::random_matrix(rng, 10, 3, -1e6, 1e6);
    Labels labels{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    const auto p = dir.path() / "out.csv";
    write_csv(p, d, labels);
    auto back = load_dataset(p, 2, 1, "label");
    EXPECT_EQ(back.data, d);
    EXPECT_EQ(*back.labels, labels);
}

TEST(SplitSizes, DefaultsAtHundredRows) {
    SplitSpec spec;
    const auto s = split_sizes(100, spec);
    EXPECT_EQ(s.prev, 50u);
    EXPECT_EQ(s.test, 20u);
    EXPECT_EQ(s.pool, 30u);
    EXPECT_EQ(s.curr, 3u);

    spec.ra = 1.0;
    EXPECT_EQ(split_sizes(100, spec).curr, 30u);
    spec.ra = 0.01;
    EXPECT_EQ(split_sizes(100, spec).curr, 1u);
    // Products that land a hair under an integer are still floored to that integer.
    spec.ra = 0.29;
    EXPECT_EQ(split_sizes(200, spec).curr, 17u);
    spec.ra = 0.3;
    EXPECT_EQ(split_sizes(1000, spec).curr, 90u);
}

TEST(SplitSpec, Validate) {
    SplitSpec s;
    s.ra = 0.0;
    EXPECT_THROW(s.validate(), ConfigError);
    s = {};
    s.ra = 1.5;
    EXPECT_THROW(s.validate(), ConfigError);
    s = {};
    s.prev_fraction = 0.8;
    s.test_fraction = 0.2;
    EXPECT_THROW(s.validate(), ConfigError);
}

TEST(SplitStages, ShapesAndDisjointness) {
    auto d = indexed_rows(100, 4);
    Labels labels(100);
    for (std::size_t i = 0; i < 100; ++i) labels[i] = static_cast<long long>(i);
    SplitSpec spec;
    spec.seed = 12;
    spec.ra = 1.0;
    auto b = split_stages(d, labels, 1, 3, spec);
    EXPECT_EQ(b.prev_old.rows(), 50u);
    EXPECT_EQ(b.prev_old.cols(), 1u);
    EXPECT_EQ(b.test_full->rows(), 20u);
    EXPECT_EQ(b.test_full->cols(), 4u);
    EXPECT_EQ(b.curr_full.rows(), 30u);
    EXPECT_EQ(b.curr_full.cols(), 4u);

    std::multiset<long long> seen;
    auto collect = [&](const DataMatrix& m, const Labels& l) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const auto id = static_cast<long long>(m(i, 0));
            EXPECT_EQ(id, l[i]);  // labels travel with their rows
            if (m.cols() > 1) {
                EXPECT_DOUBLE_EQ(m(i, 3), static_cast<double>(id) + 0.3);
            }
            seen.insert(id);
        }
    };
    collect(b.prev_old, *b.labels_prev);
    collect(*b.test_full, *b.labels_test);
    collect(b.curr_full, *b.labels_curr);
    EXPECT_EQ(seen.size(), 100u);
    EXPECT_EQ(std::set<long long>(seen.begin(), seen.end()).size(), 100u);
}

TEST(SplitStages, RaSubsetAndDeterminism) {
    auto d = indexed_rows(100, 2);
    SplitSpec spec;
    spec.seed = 4;
    auto a = split_stages(d, std::nullopt, 1, 1, spec);
    auto b = split_stages(d, std::nullopt, 1, 1, spec);
    EXPECT_EQ(a.prev_old, b.prev_old);
    EXPECT_EQ(a.curr_full, b.curr_full);
    EXPECT_EQ(*a.test_full, *b.test_full);
    EXPECT_EQ(a.curr_full.rows(), 3u);
    EXPECT_FALSE(a.labels_curr.has_value());

    spec.ra = 1.0;
    auto full = split_stages(d, std::nullopt, 1, 1, spec);
    // The RA subset is the head of the same shuffled pool.
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(full.curr_full(i, 0), a.curr_full(i, 0));

    spec.seed = 5;
    EXPECT_NE(split_stages(d, std::nullopt, 1, 1, spec).prev_old, a.prev_old);
}

TEST(SplitStages, Errors) {
    EXPECT_THROW(split_stages(indexed_rows(3, 2), std::nullopt, 1, 1, SplitSpec{}), InsufficientDataError);
    EXPECT_THROW(split_stages(indexed_rows(100, 2), std::nullopt, 1, 2, SplitSpec{}), DimensionError);
    EXPECT_THROW(split_stages(indexed_rows(100, 2), Labels{1}, 1, 1, SplitSpec{}), DimensionError);
}

TEST(Normalize, Examples) {
    auto d = DataMatrix::from_rows({{0, 1}, {5, 3}, {10, 2}});
    auto [same, p0] = normalize(d, NormMode::none);
    EXPECT_EQ(same, d);

    auto [mm, p1] = normalize(d, NormMode::minmax);
    EXPECT_EQ(mm(0, 0), 0.0);
    EXPECT_EQ(mm(1, 0), 0.5);
    EXPECT_EQ(mm(2, 0), 1.0);

    auto [z, p2] = normalize(DataMatrix::from_rows({{1}, {3}}), NormMode::zscore);
    EXPECT_EQ(z(0, 0), -1.0);
    EXPECT_EQ(z(1, 0), 1.0);
}

TEST(Normalize, DegenerateColumnPassesThrough) {
    auto d = DataMatrix::from_rows({{7, 1}, {7, 2}});
    for (auto mode : {NormMode::minmax, NormMode::zscore}) {
        auto [out, params] = normalize(d, mode);
        EXPECT_EQ(out(0, 0), 7.0);
        EXPECT_EQ(out(1, 0), 7.0);
    }
}

TEST(Normalize, FittedParamsApplyElsewhere) {
    auto train = DataMatrix::from_rows({{0}, {10}});
    auto [t, params] = normalize(train, NormMode::minmax);
    auto [applied, same] = normalize(DataMatrix::from_rows({{5}, {20}}), NormMode::minmax, params);
    EXPECT_EQ(applied(0, 0), 0.5);
    EXPECT_EQ(applied(1, 0), 2.0);
    EXPECT_THROW(apply_normalization(DataMatrix::from_rows({{1, 2}}), params), DimensionError);
}

TEST(Normalize, MinmaxRangeOnFittingMatrix) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 20; ++t) {
        auto d = oracle::random_matrix(rng, 25, 4, -50, 50);
        auto [out, params] = normalize(d, NormMode::minmax);
        for (double v : out.values()) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
}

TEST(Normalize, ModeNames) {
    EXPECT_EQ(norm_mode_from_string("zscore"), NormMode::zscore);
    EXPECT_EQ(to_string(NormMode::minmax), "minmax");
    EXPECT_THROW(norm_mode_from_string("robust"), ConfigError);
}

TEST(NormalizeBundle, FitsOnTrainingRowsOnly) {
    StageBundle b;
    b.d1 = 1;
    b.d2 = 1;
    b.prev_old = DataMatrix::from_rows({{0}, {4}});
    b.curr_full = DataMatrix::from_rows({{2, 10}, {8, 20}});
    b.test_full = DataMatrix::from_rows({{16, 30}});
    auto n = normalize_bundle(b, NormMode::minmax);
    EXPECT_EQ(n.prev_old, DataMatrix::from_rows({{0}, {0.5}}));
    EXPECT_EQ(n.curr_full, DataMatrix::from_rows({{0.25, 0}, {1, 1}}));
    EXPECT_EQ(*n.test_full, DataMatrix::from_rows({{2, 2}}));
}

TEST(Synthetic, ShapesLabelsAndDeterminism) {
    SynthSpec s;
    s.k = 3;
    s.n = 90;
    s.seed = 5;
    auto [d, l] = generate_synthetic(s);
    EXPECT_EQ(d.rows(), 90u);
    EXPECT_EQ(d.cols(), 10u);
    std::map<long long, int> counts;
    for (auto c : l) ++counts[c];
    EXPECT_EQ(counts.size(), 3u);
    for (auto& [c, n] : counts) EXPECT_EQ(n, 30);
    auto [d2, l2] = generate_synthetic(s);
    EXPECT_EQ(d, d2);
    EXPECT_EQ(l, l2);

    s.n = 2;
    EXPECT_THROW(generate_synthetic(s), InsufficientDataError);
    s = {};
    s.noise_sd = 0.0;
    EXPECT_THROW(s.validate(), ConfigError);
    s = {};
    s.new_feature_informativeness = 1.5;
    EXPECT_THROW(s.validate(), ConfigError);
}

TEST(Synthetic, UninformativeNewBlockHasSharedMeans) {
    SynthSpec s;
    s.k = 3;
    s.n = 30000;
    s.new_feature_informativeness = 0.0;
    s.noise_sd = 0.5;
    auto [d, l] = generate_synthetic(s);
    std::vector<std::vector<double>> sums(3, std::vector<double>(s.d2, 0.0));
    std::vector<int> counts(3, 0);
    for (std::size_t i = 0; i < d.rows(); ++i) {
        const auto c = static_cast<std::size_t>(l[i]);
        ++counts[c];
        for (std::size_t j = 0; j < s.d2; ++j) sums[c][j] += d(i, s.d1 + j);
    }
    for (std::size_t j = 0; j < s.d2; ++j) {
        const double m0 = sums[0][j] / counts[0];
        for (std::size_t c = 1; c < 3; ++c) EXPECT_NEAR(sums[c][j] / counts[c], m0, 0.05);
    }
}

TEST(Synthetic, TinyNoiseOldBlockIsPerfectlyClusterable) {
    SynthSpec s;
    s.k = 4;
    s.n = 200;
    s.noise_sd = 1e-6;
    s.seed = 2;
    auto [d, l] = generate_synthetic(s);
    FitOptions o;
    o.k = 4;
    auto fit = lloyd_fit(d.column_block(0, s.d1), o);
    EXPECT_EQ(accuracy(fit.assignment, l), 1.0);
}

TEST(Synthetic, WellSeparatedFullFeatureAccuracy) {
    SynthSpec s;
    s.k = 2;
    s.n = 200;
    s.d1 = 2;
    s.d2 = 2;
    s.separation = 6;
    s.seed = 7;
    auto [d, l] = generate_synthetic(s);
    FitOptions o;
    o.k = 2;
    EXPECT_GT(accuracy(lloyd_fit(d, o).assignment, l), 0.95);
}

TEST(Synthetic, NewFeaturesRaiseAccuracy) {
    double full = 0.0, old_only = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SynthSpec s;
        s.k = 4;
        s.n = 400;
        s.separation = 3.0;
        s.seed = seed;
        auto [d, l] = generate_synthetic(s);
        FitOptions o;
        o.k = 4;
        o.seed = seed;
        full += accuracy(lloyd_fit(d, o).assignment, l);
        old_only += accuracy(lloyd_fit(d.column_block(0, s.d1), o).assignment, l);
    }
    EXPECT_GT(full, old_only);
}
