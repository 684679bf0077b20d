#include "fic/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fic/error.hpp"
#include "fic/numerics.hpp"
#include "fic/random.hpp"

namespace fic {

void FitOptions::validate() const {
    if (k < 1) throw ConfigError("k must be at least 1");
    if (max_iters < 1) throw ConfigError("max_iters must be at least 1");
    if (!(rel_tol >= 0.0) || !std::isfinite(rel_tol)) throw ConfigError("rel_tol must be finite and >= 0");
    if (restarts < 1) throw ConfigError("restarts must be at least 1");
}

namespace detail {

double assign_rows(const DataMatrix& data, const std::vector<double>& centers, std::size_t k,
                   std::vector<std::size_t>& labels) {
    labels.resize(data.rows());
    double total = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const auto best = nearest_unchecked(data.row(i).data(), centers.data(), k, data.cols());
        labels[i] = best.index;
        total += best.squared_distance;
    }
    return total;
}

void accumulate_clusters(const DataMatrix& data, const std::vector<std::size_t>& labels, std::size_t k,
                         std::vector<double>& sums, std::vector<std::size_t>& counts) {
    const std::size_t dim = data.cols();
    sums.assign(k * dim, 0.0);
    counts.assign(k, 0);
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const auto r = data.row(i);
        double* dst = sums.data() + labels[i] * dim;
        for (std::size_t j = 0; j < dim; ++j) dst[j] += r[j];
        ++counts[labels[i]];
    }
}

std::vector<std::size_t> rows_by_distance_to_assigned(const DataMatrix& data, const std::vector<double>& centers,
                                                      const std::vector<std::size_t>& labels) {
    const std::size_t dim = data.cols();
    std::vector<double> dist(data.rows());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        dist[i] = squared_distance_unchecked(data.row(i).data(), centers.data() + labels[i] * dim, dim);
    }
    std::vector<std::size_t> order(data.rows());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
    return order;
}

std::vector<std::size_t> reseed_empty_clusters(const DataMatrix& data, std::vector<double>& centers,
                                               const std::vector<std::size_t>& labels,
                                               const std::vector<std::size_t>& empty_clusters) {
    if (empty_clusters.empty()) return {};
    const std::size_t dim = data.cols();
    const auto order = rows_by_distance_to_assigned(data, centers, labels);
    std::vector<std::size_t> used;
    used.reserve(empty_clusters.size());
    for (std::size_t j = 0; j < empty_clusters.size() && j < order.size(); ++j) {
        const auto r = data.row(order[j]);
        std::copy(r.begin(), r.end(), centers.begin() + static_cast<std::ptrdiff_t>(empty_clusters[j] * dim));
        used.push_back(order[j]);
    }
    return used;
}

bool relative_change_below(double before, double after, double rel_tol) {
    return std::abs(before - after) / std::max(before, 1e-12) < rel_tol;
}

}  // namespace detail

namespace {

void check_fit_preconditions(const DataMatrix& data, const FitOptions& opts) {
    opts.validate();
    if (data.rows() < opts.k) {
        throw InsufficientDataError("need at least k = " + std::to_string(opts.k) + " rows, got " +
                                    std::to_string(data.rows()));
    }
}

std::vector<double> greedy_spread(const DataMatrix& data, std::size_t k, Rng& rng) {
    const std::size_t n = data.rows();
    const std::size_t dim = data.cols();
    std::vector<double> centers;
    centers.reserve(k * dim);

    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::size_t chosen = pick(rng);
    std::vector<double> nearest(n, 0.0);
    for (std::size_t s = 0; s < k; ++s) {
        const auto r = data.row(chosen);
        centers.insert(centers.end(), r.begin(), r.end());
        if (s + 1 == k) break;

        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = detail::squared_distance_unchecked(data.row(i).data(), r.data(), dim);
            nearest[i] = (s == 0) ? d : std::min(nearest[i], d);
            if (nearest[i] > best) {
                best = nearest[i];
                chosen = i;
            }
        }
        if (best <= 0.0) {
            throw InsufficientDataError("fewer than k = " + std::to_string(k) + " distinct rows");
        }
    }
    return centers;
}

std::vector<double> uniform_distinct(const DataMatrix& data, std::size_t k, Rng& rng) {
    const std::size_t n = data.rows();
    const std::size_t dim = data.cols();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<std::size_t> picked;
    for (std::size_t idx : order) {
        const auto r = data.row(idx);
        const bool duplicate = std::any_of(picked.begin(), picked.end(), [&](std::size_t p) {
            return std::equal(r.begin(), r.end(), data.row(p).begin());
        });
        if (!duplicate) picked.push_back(idx);
        if (picked.size() == k) break;
    }
    if (picked.size() < k) {
        throw InsufficientDataError("fewer than k = " + std::to_string(k) + " distinct rows");
    }
    std::vector<double> centers;
    centers.reserve(k * dim);
    for (std::size_t idx : picked) {
        const auto r = data.row(idx);
        centers.insert(centers.end(), r.begin(), r.end());
    }
    return centers;
}

std::vector<double> init_center_values(const DataMatrix& data, const FitOptions& opts, std::uint64_t seed) {
    Rng rng(seed);
    return opts.init == InitStrategy::greedy_spread ? greedy_spread(data, opts.k, rng)
                                                    : uniform_distinct(data, opts.k, rng);
}

FitReport descend(const DataMatrix& data, std::vector<double> centers, const FitOptions& opts) {
    const std::size_t n = data.rows();
    const std::size_t k = opts.k;
    const std::size_t dim = data.cols();
    const double inv_n = 1.0 / static_cast<double>(n);

    FitReport report;
    std::vector<std::size_t> labels;
    double risk = detail::assign_rows(data, centers, k, labels) * inv_n;
    report.risk_trace.push_back(risk);

    std::vector<double> sums;
    std::vector<std::size_t> counts;
    std::vector<std::size_t> next_labels;
    for (std::size_t it = 1; it <= opts.max_iters; ++it) {
        detail::accumulate_clusters(data, labels, k, sums, counts);
        std::vector<std::size_t> empty;
        for (std::size_t s = 0; s < k; ++s) {
            if (counts[s] == 0) {
                empty.push_back(s);
                continue;
            }
            const double c = static_cast<double>(counts[s]);
            for (std::size_t j = 0; j < dim; ++j) centers[s * dim + j] = sums[s * dim + j] / c;
        }
        detail::reseed_empty_clusters(data, centers, labels, empty);

        const double next_risk = detail::assign_rows(data, centers, k, next_labels) * inv_n;
        report.risk_trace.push_back(next_risk);
        report.iterations = it;

        const bool unchanged = next_labels == labels;
        const bool small_step = detail::relative_change_below(risk, next_risk, opts.rel_tol);
        labels.swap(next_labels);
        risk = next_risk;
        if (unchanged || small_step) {
            report.converged = true;
            break;
        }
    }

    report.model = CentersModel(DataMatrix(k, dim, std::move(centers)), Provenance::kmeans);
    report.assignment = Assignment{std::move(labels)};
    report.risk = risk;
    report.data_risk = risk;
    return report;
}

}  // namespace

CentersModel init_centers(const DataMatrix& data, const FitOptions& opts) {
    check_fit_preconditions(data, opts);
    return CentersModel(DataMatrix(opts.k, data.cols(), init_center_values(data, opts, opts.seed)),
                        Provenance::kmeans);
}

FitReport lloyd_fit(const DataMatrix& data, const FitOptions& opts) {
    check_fit_preconditions(data, opts);
    FitReport best;
    bool have_best = false;
    for (std::size_t r = 0; r < opts.restarts; ++r) {
        auto centers = init_center_values(data, opts, derive_seed(opts.seed, r));
        FitReport run = descend(data, std::move(centers), opts);
        if (!have_best || run.risk < best.risk) {
            best = std::move(run);
            have_best = true;
        }
    }
    return best;
}

FitReport lloyd_from(const DataMatrix& data, const CentersModel& initial, const FitOptions& opts) {
    check_fit_preconditions(data, opts);
    if (initial.k() != opts.k) {
        throw ConfigError("initial model has " + std::to_string(initial.k()) + " centers, options request k = " +
                          std::to_string(opts.k));
    }
    if (initial.dim() != data.cols()) {
        throw DimensionError("initial centers have dimension " + std::to_string(initial.dim()) + ", data has " +
                             std::to_string(data.cols()));
    }
    return descend(data, initial.centers().values(), opts);
}

Assignment predict(const DataMatrix& data, const CentersModel& model) {
    if (data.cols() != model.dim()) {
        throw DimensionError("predict: data has " + std::to_string(data.cols()) + " columns, model has " +
                             std::to_string(model.dim()));
    }
    Assignment out;
    out.labels.resize(data.rows());
    const double* centers = model.centers().values().data();
    for (std::size_t i = 0; i < data.rows(); ++i) {
        out.labels[i] = detail::nearest_unchecked(data.row(i).data(), centers, model.k(), model.dim()).index;
    }
    return out;
}

}  // namespace fic
