#ifndef FIC_DIAGNOSTICS_HPP
#define FIC_DIAGNOSTICS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fic/matrix.hpp"

namespace fic {

// Nonnegative per-row weights, normalized to sum to one on construction.
// Equal weights are remembered so that uniform weighting reproduces the
// unweighted risk bit for bit.
class WeightVector {
public:
    // Throws ConfigError on negative or non-finite entries or a zero sum.
    explicit WeightVector(std::vector<double> weights);

    static WeightVector uniform(std::size_t n);

    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t i) const noexcept { return weights_[i]; }
    const std::vector<double>& values() const noexcept { return weights_; }
    bool is_uniform() const noexcept { return uniform_; }

private:
    std::vector<double> weights_;
    bool uniform_ = false;
};

struct DiscrepancyEstimate {
    double value = 0.0;  // lower bound on the supremum: max over evaluated candidates
    std::size_t candidate_count = 0;
    std::size_t attaining_candidate = 0;
};

// sum_i w_i * min_s ||x_i - u_s||^2
double weighted_risk(const DataMatrix& data, const WeightVector& weights, const CentersModel& model);

// max over candidates of |weighted risk on the reconstructed sample - risk on the current sample|.
// Ties go to the lowest candidate index.
DiscrepancyEstimate estimate_discrepancy(const DataMatrix& reconstructed, const WeightVector& weights,
                                         const DataMatrix& current, const std::vector<CentersModel>& candidates);

// Risk of the pretrained centers on the current stage's old-feature block.
double adaptation_risk(const DataMatrix& curr_old_block, const CentersModel& u0);

// Default candidate family for the discrepancy estimate: the supplied fitted
// models plus `per_dataset` single-restart k-means fits (uniform-random
// initialization) on each of the two samples.
std::vector<CentersModel> discrepancy_candidates(const DataMatrix& reconstructed, const DataMatrix& current,
                                                 std::size_t k, std::uint64_t seed,
                                                 const std::vector<CentersModel>& fitted,
                                                 std::size_t per_dataset = 32);

}  // namespace fic

#endif  // FIC_DIAGNOSTICS_HPP
