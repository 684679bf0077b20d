#ifndef FIC_KMEANS_HPP
#define FIC_KMEANS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fic/matrix.hpp"

namespace fic {

enum class InitStrategy {
    greedy_spread,   // random first row, then repeatedly the row farthest from its nearest chosen center
    uniform_random,  // k distinct rows sampled uniformly
};

struct FitOptions {
    std::size_t k = 2;
    std::size_t max_iters = 300;
    double rel_tol = 1e-6;
    std::size_t restarts = 10;
    std::uint64_t seed = 0;
    InitStrategy init = InitStrategy::greedy_spread;

    // Throws ConfigError when any field is out of range.
    void validate() const;
};

struct FitReport {
    CentersModel model;
    Assignment assignment;  // nearest-center labels of the training rows under `model`
    double risk = 0.0;      // value of the objective the optimizer minimized
    double data_risk = 0.0; // plain k-means criterion on the training rows (== risk for unregularized fits)
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> risk_trace;  // objective after every assignment step, starting at the initial centers
};

CentersModel init_centers(const DataMatrix& data, const FitOptions& opts);

// Lloyd iterations from every restart; returns the lowest-risk run (ties: lowest restart index).
FitReport lloyd_fit(const DataMatrix& data, const FitOptions& opts);

// A single Lloyd descent from caller-supplied centers. `opts.k` must equal initial.k().
FitReport lloyd_from(const DataMatrix& data, const CentersModel& initial, const FitOptions& opts);

Assignment predict(const DataMatrix& data, const CentersModel& model);

namespace detail {

// Labels every row with its nearest center and returns the summed squared distance.
double assign_rows(const DataMatrix& data, const std::vector<double>& centers, std::size_t k,
                   std::vector<std::size_t>& labels);

// Per-cluster coordinate sums and member counts.
void accumulate_clusters(const DataMatrix& data, const std::vector<std::size_t>& labels, std::size_t k,
                         std::vector<double>& sums, std::vector<std::size_t>& counts);

// Rows ordered by decreasing squared distance to their assigned center (ties: lower row first).
std::vector<std::size_t> rows_by_distance_to_assigned(const DataMatrix& data, const std::vector<double>& centers,
                                                      const std::vector<std::size_t>& labels);

// Empty-cluster repair: each empty cluster's center jumps to the next row in
// distance order. Returns the rows used, in the order of `empty_clusters`.
std::vector<std::size_t> reseed_empty_clusters(const DataMatrix& data, std::vector<double>& centers,
                                               const std::vector<std::size_t>& labels,
                                               const std::vector<std::size_t>& empty_clusters);

bool relative_change_below(double before, double after, double rel_tol);

}  // namespace detail

}  // namespace fic

#endif  // FIC_KMEANS_HPP
