#ifndef FIC_INCREMENTAL_HPP
#define FIC_INCREMENTAL_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fic/kmeans.hpp"
#include "fic/matrix.hpp"

namespace fic {

// Two-stage data layout. The previous stage only observed the first d1
// features; current and test rows carry all d1 + d2.
struct StageBundle {
    std::size_t d1 = 0;
    std::size_t d2 = 0;
    DataMatrix prev_old;                  // n1 x d1
    DataMatrix curr_full;                 // n2 x (d1 + d2)
    std::optional<DataMatrix> test_full;  // nt x (d1 + d2)
    std::optional<Labels> labels_prev;
    std::optional<Labels> labels_curr;
    std::optional<Labels> labels_test;

    std::size_t n1() const noexcept { return prev_old.rows(); }
    std::size_t n2() const noexcept { return curr_full.rows(); }

    DataMatrix curr_old() const { return curr_full.column_block(0, d1); }
    DataMatrix curr_new() const { return curr_full.column_block(d1, d2); }

    // Throws DimensionError when shapes disagree with (d1, d2) or label lengths mismatch.
    void validate() const;
};

struct MrOptions {
    double theta = 1.0;
    FitOptions base;
};

// k-means on the old features of both stages stacked together.
FitReport fit_ft(const StageBundle& bundle, const FitOptions& opts);

// Completes the previous stage's unobserved new-feature block by block-constrained k-means.
DataMatrix reconstruct_missing(const StageBundle& bundle, const FitOptions& opts);

// Same as reconstruct_missing but also returns the objective after every assignment step.
struct Reconstruction {
    DataMatrix completed;
    std::vector<double> objective_trace;
    std::size_t iterations = 0;
};
Reconstruction reconstruct_missing_traced(const StageBundle& bundle, const FitOptions& opts);

// Reconstruct, then a fresh k-means on [completed previous; current].
FitReport fit_dr(const StageBundle& bundle, const FitOptions& opts);

struct DrResult {
    FitReport fit;
    DataMatrix completed;  // previous stage after reconstruction (n1 x (d1 + d2), or n1 x d1 when d2 = 0)
    DataMatrix current;    // the current-stage rows the final fit used
};
DrResult fit_dr_detailed(const StageBundle& bundle, const FitOptions& opts);

// k-means on the current stage only.
FitReport fit_da(const StageBundle& bundle, const FitOptions& opts);

// Model reuse: k-means on the current stage with the old-feature part of every
// center pulled towards the pretrained centers u0 with strength theta.
//
// Returned `risk` is the regularized objective (data term + theta * ||U_old - u0||^2 / n2);
// `data_risk` is the plain k-means criterion on curr_full.
FitReport fit_mr(const StageBundle& bundle, const CentersModel& u0, const MrOptions& opts);

// Single descent from explicit full-dimension starting centers.
FitReport fit_mr_from(const StageBundle& bundle, const CentersModel& u0, const CentersModel& initial,
                      const MrOptions& opts);

// Default starting centers of fit_mr for a given seed: old blocks at u0, new
// blocks by greedy-spread seeding over the current stage's new features.
CentersModel mr_initial_centers(const StageBundle& bundle, const CentersModel& u0, std::uint64_t seed);

// Closed-form minimizer of sum ||x - u||^2 + theta ||u - u0||^2 over u.
std::vector<double> update_old_block(std::span<const std::vector<double>> points_old, std::span<const double> u0_s,
                                     double theta);

// Arithmetic mean of the points.
std::vector<double> update_new_block(std::span<const std::vector<double>> points_new);

}  // namespace fic

#endif  // FIC_INCREMENTAL_HPP
