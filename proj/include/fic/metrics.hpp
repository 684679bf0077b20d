#ifndef FIC_METRICS_HPP
#define FIC_METRICS_HPP

#include <cstddef>
#include <vector>

#include "fic/matrix.hpp"

namespace fic {

// Dense cost matrix for the assignment problem, row-major.
struct CostMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double operator()(std::size_t r, std::size_t c) const noexcept { return values[r * cols + c]; }
};

struct Matching {
    // Column matched to each row; -1 when a row is only matched to padding
    // (more rows than columns).
    std::vector<long> row_to_col;
    double cost = 0.0;
};

// Exact minimum-cost one-to-one matching (Hungarian method with potentials).
// Rectangular inputs are padded with zero-cost dummy rows or columns.
Matching optimal_matching(const CostMatrix& cost);

// Clustering accuracy under the best one-to-one map from clusters to classes.
double accuracy(const Assignment& pred, const Labels& truth);

// Pair-counting F-measure; 0 when no pair is co-clustered in both partitions.
double pairwise_fscore(const Assignment& pred, const Labels& truth);

// Mutual information normalized by the geometric mean of the two entropies.
double nmi(const Assignment& pred, const Labels& truth);

}  // namespace fic

#endif  // FIC_METRICS_HPP
