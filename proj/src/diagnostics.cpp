#include "fic/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fic/error.hpp"
#include "fic/kmeans.hpp"
#include "fic/numerics.hpp"
#include "fic/random.hpp"

namespace fic {

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
    double sum = 0.0;
    for (double w : weights_) {
        if (!std::isfinite(w) || w < 0.0) throw ConfigError("weights must be finite and nonnegative");
        sum += w;
    }
    if (!(sum > 0.0)) throw ConfigError("weights must have a positive sum");
    uniform_ = std::all_of(weights_.begin(), weights_.end(), [&](double w) { return w == weights_.front(); });
    for (double& w : weights_) w /= sum;
}

WeightVector WeightVector::uniform(std::size_t n) { return WeightVector(std::vector<double>(n, 1.0)); }

double weighted_risk(const DataMatrix& data, const WeightVector& weights, const CentersModel& model) {
    if (weights.size() != data.rows()) {
        throw DimensionError("weight vector has " + std::to_string(weights.size()) + " entries for " +
                             std::to_string(data.rows()) + " rows");
    }
    if (data.cols() != model.dim()) {
        throw DimensionError("weighted_risk: data has " + std::to_string(data.cols()) + " columns, model has " +
                             std::to_string(model.dim()));
    }
    if (weights.is_uniform()) return empirical_risk(data, model);
    const double* centers = model.centers().values().data();
    double total = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        total +=
            weights[i] * detail::nearest_unchecked(data.row(i).data(), centers, model.k(), model.dim()).squared_distance;
    }
    return total;
}

DiscrepancyEstimate estimate_discrepancy(const DataMatrix& reconstructed, const WeightVector& weights,
                                         const DataMatrix& current, const std::vector<CentersModel>& candidates) {
    if (candidates.empty()) throw ConfigError("discrepancy estimate needs at least one candidate model");
    if (reconstructed.cols() != current.cols()) {
        throw DimensionError("the two samples have different dimensions");
    }
    DiscrepancyEstimate best;
    best.candidate_count = candidates.size();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const double gap =
            std::abs(weighted_risk(reconstructed, weights, candidates[c]) - empirical_risk(current, candidates[c]));
        if (c == 0 || gap > best.value) {
            best.value = gap;
            best.attaining_candidate = c;
        }
    }
    return best;
}

double adaptation_risk(const DataMatrix& curr_old_block, const CentersModel& u0) {
    return empirical_risk(curr_old_block, u0);
}

std::vector<CentersModel> discrepancy_candidates(const DataMatrix& reconstructed, const DataMatrix& current,
                                                 std::size_t k, std::uint64_t seed,
                                                 const std::vector<CentersModel>& fitted, std::size_t per_dataset) {
    std::vector<CentersModel> out = fitted;
    FitOptions opts;
    opts.k = k;
    opts.restarts = 1;
    opts.init = InitStrategy::uniform_random;
    const DataMatrix* samples[] = {&reconstructed, &current};
    for (std::size_t which = 0; which < 2; ++which) {
        const DataMatrix& sample = *samples[which];
        for (std::size_t r = 0; r < per_dataset; ++r) {
            opts.seed = derive_seed(derive_seed(seed, which), r);
            try {
                out.push_back(lloyd_fit(sample, opts).model);
            } catch (const InsufficientDataError&) {
                break;  // too few distinct rows in this sample; the other sample still contributes
            }
        }
    }
    return out;
}

}  // namespace fic
