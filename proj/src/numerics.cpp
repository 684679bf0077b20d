#include "fic/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fic/error.hpp"

namespace fic {

double squared_distance(std::span<const double> x, std::span<const double> u) {
    if (x.size() != u.size()) {
        throw DimensionError("squared_distance: lengths " + std::to_string(x.size()) + " and " +
                             std::to_string(u.size()) + " differ");
    }
    return detail::squared_distance_unchecked(x.data(), u.data(), x.size());
}

NearestCenter nearest_center(std::span<const double> x, const CentersModel& model) {
    if (x.size() != model.dim()) {
        throw DimensionError("nearest_center: point has " + std::to_string(x.size()) + " coordinates, model has " +
                             std::to_string(model.dim()));
    }
    return detail::nearest_unchecked(x.data(), model.centers().values().data(), model.k(), model.dim());
}

double empirical_risk(const DataMatrix& data, const CentersModel& model) {
    if (data.rows() == 0) throw EmptyInputError("empirical_risk of an empty matrix");
    if (data.cols() != model.dim()) {
        throw DimensionError("empirical_risk: data has " + std::to_string(data.cols()) + " columns, model has " +
                             std::to_string(model.dim()));
    }
    const double* centers = model.centers().values().data();
    double total = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        total += detail::nearest_unchecked(data.row(i).data(), centers, model.k(), model.dim()).squared_distance;
    }
    return total / static_cast<double>(data.rows());
}

double max_row_norm(const DataMatrix& data) {
    if (data.rows() == 0) throw EmptyInputError("max_row_norm of an empty matrix");
    double best = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const auto r = data.row(i);
        double sq = 0.0;
        for (double v : r) sq += v * v;
        best = std::max(best, sq);
    }
    return std::sqrt(best);
}

}  // namespace fic
