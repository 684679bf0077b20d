#ifndef FIC_MATRIX_HPP
#define FIC_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fic {

// Dense row-major matrix of finite reals. Immutable once built.
class DataMatrix {
public:
    DataMatrix() = default;

    // Throws DimensionError if rows*cols != values.size(), NonFiniteError on NaN/inf.
    DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    // Convenience for literals and tests: every inner list is one row.
    static DataMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static DataMatrix from_rows(const std::vector<std::vector<double>>& rows);

    // Empty matrix with a known column count (n = 0).
    static DataMatrix empty(std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0; }

    double operator()(std::size_t r, std::size_t c) const noexcept { return values_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const noexcept {
        return {values_.data() + r * cols_, cols_};
    }

    const std::vector<double>& values() const noexcept { return values_; }

    // Columns [first, first + count) of every row.
    DataMatrix column_block(std::size_t first, std::size_t count) const;

    // Rows listed in `indices`, in that order (duplicates allowed).
    DataMatrix select_rows(std::span<const std::size_t> indices) const;

    friend bool operator==(const DataMatrix&, const DataMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

// Row-wise concatenation; column counts must agree unless one side has no rows.
DataMatrix vstack(const DataMatrix& top, const DataMatrix& bottom);

// Column-wise concatenation; row counts must agree.
DataMatrix hstack(const DataMatrix& left, const DataMatrix& right);

// Old/new feature partition of a center or sample vector.
struct BlockSplit {
    std::size_t d1 = 0;
    std::size_t d2 = 0;

    friend bool operator==(const BlockSplit&, const BlockSplit&) = default;
};

// Which procedure produced a set of centers.
enum class Provenance { kmeans, km_p1, km_c1, fic_ft, fic_dr, fic_da, fic_mr };

std::string_view to_string(Provenance p);
Provenance provenance_from_string(std::string_view name);

// k cluster centers stored as a k x dim matrix.
class CentersModel {
public:
    CentersModel() = default;

    // Throws EmptyInputError when k == 0, DimensionError on an inconsistent block split.
    CentersModel(DataMatrix centers, Provenance provenance,
                 std::optional<BlockSplit> split = std::nullopt);

    std::size_t k() const noexcept { return centers_.rows(); }
    std::size_t dim() const noexcept { return centers_.cols(); }
    std::span<const double> center(std::size_t s) const noexcept { return centers_.row(s); }
    const DataMatrix& centers() const noexcept { return centers_; }
    Provenance provenance() const noexcept { return provenance_; }
    const std::optional<BlockSplit>& block_split() const noexcept { return split_; }

    // Same centers, relabelled provenance / block split.
    CentersModel with_provenance(Provenance p) const;
    CentersModel with_split(std::optional<BlockSplit> split) const;

    friend bool operator==(const CentersModel&, const CentersModel&) = default;

private:
    DataMatrix centers_;
    Provenance provenance_ = Provenance::kmeans;
    std::optional<BlockSplit> split_;
};

// Ground-truth class ids, evaluation only. Ids are nonnegative but need not be contiguous.
using Labels = std::vector<long long>;

// One cluster index per data row.
struct Assignment {
    std::vector<std::size_t> labels;

    std::size_t size() const noexcept { return labels.size(); }
    friend bool operator==(const Assignment&, const Assignment&) = default;
};

}  // namespace fic

#endif  // FIC_MATRIX_HPP
