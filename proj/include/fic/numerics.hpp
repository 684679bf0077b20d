#ifndef FIC_NUMERICS_HPP
#define FIC_NUMERICS_HPP

#include <cstddef>
#include <span>

#include "fic/matrix.hpp"

namespace fic {

struct NearestCenter {
    std::size_t index = 0;
    double squared_distance = 0.0;
};

// Sum of squared coordinate differences. Throws DimensionError on length mismatch.
double squared_distance(std::span<const double> x, std::span<const double> u);

// Closest center to x; ties resolve to the lowest index.
NearestCenter nearest_center(std::span<const double> x, const CentersModel& model);

// Mean over rows of the squared distance to the nearest center (the k-means criterion).
double empirical_risk(const DataMatrix& data, const CentersModel& model);

// Largest Euclidean row norm. Reported as the data radius next to fits.
double max_row_norm(const DataMatrix& data);

namespace detail {

// Unchecked kernels shared by the optimizers. Callers guarantee equal lengths.
inline double squared_distance_unchecked(const double* x, const double* u, std::size_t n) noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double diff = x[i] - u[i];
        acc += diff * diff;
    }
    return acc;
}

inline NearestCenter nearest_unchecked(const double* x, const double* centers, std::size_t k,
                                       std::size_t dim) noexcept {
    NearestCenter best{0, squared_distance_unchecked(x, centers, dim)};
    for (std::size_t s = 1; s < k; ++s) {
        const double d = squared_distance_unchecked(x, centers + s * dim, dim);
        if (d < best.squared_distance) best = {s, d};
    }
    return best;
}

}  // namespace detail

}  // namespace fic

#endif  // FIC_NUMERICS_HPP
