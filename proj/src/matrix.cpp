#include "fic/matrix.hpp"

#include <cmath>
#include <string>

#include "fic/error.hpp"

namespace fic {

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows_ * cols_ != values_.size()) {
        throw DimensionError("matrix shape " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                             " does not match " + std::to_string(values_.size()) + " values");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw NonFiniteError("non-finite value at row " + std::to_string(i / cols_) + ", column " +
                                 std::to_string(i % cols_));
        }
    }
}

DataMatrix DataMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<std::vector<double>> copy;
    copy.reserve(rows.size());
    for (const auto& r : rows) copy.emplace_back(r);
    return from_rows(copy);
}

DataMatrix DataMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    const std::size_t cols = rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) throw DimensionError("ragged rows in matrix literal");
        values.insert(values.end(), r.begin(), r.end());
    }
    return DataMatrix(rows.size(), cols, std::move(values));
}

DataMatrix DataMatrix::empty(std::size_t cols) { return DataMatrix(0, cols, {}); }

DataMatrix DataMatrix::column_block(std::size_t first, std::size_t count) const {
    if (first + count > cols_) {
        throw DimensionError("column block [" + std::to_string(first) + ", " + std::to_string(first + count) +
                             ") exceeds " + std::to_string(cols_) + " columns");
    }
    std::vector<double> out;
    out.reserve(rows_ * count);
    for (std::size_t r = 0; r < rows_; ++r) {
        const double* src = values_.data() + r * cols_ + first;
        out.insert(out.end(), src, src + count);
    }
    return DataMatrix(rows_, count, std::move(out));
}

DataMatrix DataMatrix::select_rows(std::span<const std::size_t> indices) const {
    std::vector<double> out;
    out.reserve(indices.size() * cols_);
    for (std::size_t idx : indices) {
        if (idx >= rows_) throw DimensionError("row index " + std::to_string(idx) + " out of range");
        const double* src = values_.data() + idx * cols_;
        out.insert(out.end(), src, src + cols_);
    }
    return DataMatrix(indices.size(), cols_, std::move(out));
}

DataMatrix vstack(const DataMatrix& top, const DataMatrix& bottom) {
    if (top.rows() == 0 && top.cols() == 0) return bottom;
    if (bottom.rows() == 0 && bottom.cols() == 0) return top;
    if (top.cols() != bottom.cols()) {
        throw DimensionError("vstack: column counts " + std::to_string(top.cols()) + " and " +
                             std::to_string(bottom.cols()) + " differ");
    }
    std::vector<double> out;
    out.reserve(top.values().size() + bottom.values().size());
    out.insert(out.end(), top.values().begin(), top.values().end());
    out.insert(out.end(), bottom.values().begin(), bottom.values().end());
    return DataMatrix(top.rows() + bottom.rows(), top.cols(), std::move(out));
}

DataMatrix hstack(const DataMatrix& left, const DataMatrix& right) {
    if (left.rows() != right.rows()) {
        throw DimensionError("hstack: row counts " + std::to_string(left.rows()) + " and " +
                             std::to_string(right.rows()) + " differ");
    }
    const std::size_t cols = left.cols() + right.cols();
    std::vector<double> out;
    out.reserve(left.rows() * cols);
    for (std::size_t r = 0; r < left.rows(); ++r) {
        auto a = left.row(r);
        auto b = right.row(r);
        out.insert(out.end(), a.begin(), a.end());
        out.insert(out.end(), b.begin(), b.end());
    }
    return DataMatrix(left.rows(), cols, std::move(out));
}

namespace {

struct ProvenanceName {
    Provenance value;
    std::string_view name;
};

constexpr ProvenanceName kProvenanceNames[] = {
    {Provenance::kmeans, "KMEANS"}, {Provenance::km_p1, "KM-P1"},   {Provenance::km_c1, "KM-C1"},
    {Provenance::fic_ft, "FIC-FT"}, {Provenance::fic_dr, "FIC-DR"}, {Provenance::fic_da, "FIC-DA"},
    {Provenance::fic_mr, "FIC-MR"},
};

}  // namespace

std::string_view to_string(Provenance p) {
    for (const auto& entry : kProvenanceNames) {
        if (entry.value == p) return entry.name;
    }
    return "UNKNOWN";
}

Provenance provenance_from_string(std::string_view name) {
    for (const auto& entry : kProvenanceNames) {
        if (entry.name == name) return entry.value;
    }
    throw ConfigError("unknown algorithm identifier '" + std::string(name) + "'");
}

CentersModel::CentersModel(DataMatrix centers, Provenance provenance, std::optional<BlockSplit> split)
    : centers_(std::move(centers)), provenance_(provenance), split_(split) {
    if (centers_.rows() == 0) throw EmptyInputError("a centers model needs at least one center");
    if (split_) {
        if (split_->d1 < 1) throw DimensionError("block split requires d1 >= 1");
        if (split_->d1 + split_->d2 != centers_.cols()) {
            throw DimensionError("block split " + std::to_string(split_->d1) + "+" + std::to_string(split_->d2) +
                                 " does not match center dimension " + std::to_string(centers_.cols()));
        }
    }
}

CentersModel CentersModel::with_provenance(Provenance p) const { return CentersModel(centers_, p, split_); }

CentersModel CentersModel::with_split(std::optional<BlockSplit> split) const {
    return CentersModel(centers_, provenance_, split);
}

}  // namespace fic
