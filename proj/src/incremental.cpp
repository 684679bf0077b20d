#include "fic/incremental.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fic/error.hpp"
#include "fic/numerics.hpp"
#include "fic/random.hpp"

namespace fic {

void StageBundle::validate() const {
    if (d1 < 1) throw DimensionError("the old feature block needs d1 >= 1");
    const std::size_t full = d1 + d2;
    if (prev_old.cols() != d1 && !(prev_old.rows() == 0 && prev_old.cols() == 0)) {
        throw DimensionError("previous-stage matrix has " + std::to_string(prev_old.cols()) + " columns, expected d1 = " +
                             std::to_string(d1));
    }
    if (curr_full.cols() != full && !(curr_full.rows() == 0 && curr_full.cols() == 0)) {
        throw DimensionError("current-stage matrix has " + std::to_string(curr_full.cols()) +
                             " columns, expected d1 + d2 = " + std::to_string(full));
    }
    if (test_full && test_full->cols() != full) {
        throw DimensionError("test matrix has " + std::to_string(test_full->cols()) + " columns, expected " +
                             std::to_string(full));
    }
    auto check_labels = [](const std::optional<Labels>& labels, std::size_t rows, const char* what) {
        if (labels && labels->size() != rows) {
            throw DimensionError(std::string(what) + " labels have " + std::to_string(labels->size()) +
                                 " entries for " + std::to_string(rows) + " rows");
        }
    };
    check_labels(labels_prev, prev_old.rows(), "previous-stage");
    check_labels(labels_curr, curr_full.rows(), "current-stage");
    check_labels(labels_test, test_full ? test_full->rows() : 0, "test");
}

namespace {

DataMatrix as_old_block(const StageBundle& bundle) {
    if (bundle.curr_full.rows() == 0) return DataMatrix::empty(bundle.d1);
    return bundle.curr_old();
}

DataMatrix previous_rows(const StageBundle& bundle) {
    if (bundle.prev_old.rows() == 0) return DataMatrix::empty(bundle.d1);
    return bundle.prev_old;
}

FitReport relabel(FitReport report, Provenance p, std::optional<BlockSplit> split) {
    report.model = CentersModel(report.model.centers(), p, split);
    return report;
}

std::optional<BlockSplit> full_split(const StageBundle& bundle) { return BlockSplit{bundle.d1, bundle.d2}; }

}  // namespace

FitReport fit_ft(const StageBundle& bundle, const FitOptions& opts) {
    bundle.validate();
    const DataMatrix stacked = vstack(previous_rows(bundle), as_old_block(bundle));
    return relabel(lloyd_fit(stacked, opts), Provenance::fic_ft, std::nullopt);
}

Reconstruction reconstruct_missing_traced(const StageBundle& bundle, const FitOptions& opts) {
    bundle.validate();
    opts.validate();
    const std::size_t d1 = bundle.d1;
    const std::size_t d2 = bundle.d2;
    const std::size_t dim = d1 + d2;
    const std::size_t n1 = bundle.n1();
    const std::size_t n2 = bundle.n2();

    if (d2 == 0) return {bundle.prev_old, {}, 0};
    if (n2 < opts.k) {
        throw InsufficientDataError("reconstruction needs at least k = " + std::to_string(opts.k) +
                                    " current-stage rows, got " + std::to_string(n2));
    }
    if (n1 == 0) return {DataMatrix::empty(dim), {}, 0};

    // Missing entries start at the current stage's new-feature column means.
    std::vector<double> fill(d2, 0.0);
    for (std::size_t i = 0; i < n2; ++i) {
        const auto r = bundle.curr_full.row(i);
        for (std::size_t j = 0; j < d2; ++j) fill[j] += r[d1 + j];
    }
    for (double& v : fill) v /= static_cast<double>(n2);

    const std::size_t total_rows = n1 + n2;
    std::vector<double> all;
    all.reserve(total_rows * dim);
    for (std::size_t i = 0; i < n1; ++i) {
        const auto r = bundle.prev_old.row(i);
        all.insert(all.end(), r.begin(), r.end());
        all.insert(all.end(), fill.begin(), fill.end());
    }
    all.insert(all.end(), bundle.curr_full.values().begin(), bundle.curr_full.values().end());

    std::vector<double> centers = init_centers(bundle.curr_full, opts).centers().values();
    const std::size_t k = opts.k;
    const double inv_n = 1.0 / static_cast<double>(total_rows);

    Reconstruction out;
    std::vector<std::size_t> labels;
    std::vector<double> sums;
    std::vector<std::size_t> counts;
    double previous = 0.0;
    for (std::size_t it = 0;; ++it) {
        DataMatrix current(total_rows, dim, all);
        const double objective = detail::assign_rows(current, centers, k, labels) * inv_n;
        out.objective_trace.push_back(objective);
        if (it > 0 && detail::relative_change_below(previous, objective, opts.rel_tol)) break;
        if (it == opts.max_iters) break;
        previous = objective;
        out.iterations = it + 1;

        detail::accumulate_clusters(current, labels, k, sums, counts);
        std::vector<std::size_t> empty;
        for (std::size_t s = 0; s < k; ++s) {
            if (counts[s] == 0) {
                empty.push_back(s);
                continue;
            }
            const double c = static_cast<double>(counts[s]);
            for (std::size_t j = 0; j < dim; ++j) centers[s * dim + j] = sums[s * dim + j] / c;
        }
        const auto reseeded = detail::reseed_empty_clusters(current, centers, labels, empty);
        for (std::size_t j = 0; j < reseeded.size(); ++j) labels[reseeded[j]] = empty[j];

        // Only the previous rows' new block moves; it snaps onto the assigned center.
        for (std::size_t i = 0; i < n1; ++i) {
            const double* src = centers.data() + labels[i] * dim + d1;
            std::copy(src, src + d2, all.begin() + static_cast<std::ptrdiff_t>(i * dim + d1));
        }
    }

    all.resize(n1 * dim);
    // Old block copied back verbatim so it stays bit-identical to the input.
    for (std::size_t i = 0; i < n1; ++i) {
        const auto r = bundle.prev_old.row(i);
        std::copy(r.begin(), r.end(), all.begin() + static_cast<std::ptrdiff_t>(i * dim));
    }
    out.completed = DataMatrix(n1, dim, std::move(all));
    return out;
}

DataMatrix reconstruct_missing(const StageBundle& bundle, const FitOptions& opts) {
    return reconstruct_missing_traced(bundle, opts).completed;
}

DrResult fit_dr_detailed(const StageBundle& bundle, const FitOptions& opts) {
    bundle.validate();
    const auto split = bundle.d2 > 0 ? full_split(bundle) : std::nullopt;
    DrResult out;
    out.current = bundle.d2 > 0 ? bundle.curr_full : as_old_block(bundle);
    out.completed = reconstruct_missing(bundle, opts);
    out.fit = relabel(lloyd_fit(vstack(out.completed, out.current), opts), Provenance::fic_dr, split);
    return out;
}

FitReport fit_dr(const StageBundle& bundle, const FitOptions& opts) { return fit_dr_detailed(bundle, opts).fit; }

FitReport fit_da(const StageBundle& bundle, const FitOptions& opts) {
    bundle.validate();
    return relabel(lloyd_fit(bundle.curr_full, opts), Provenance::fic_da, full_split(bundle));
}

std::vector<double> update_old_block(std::span<const std::vector<double>> points_old, std::span<const double> u0_s,
                                     double theta) {
    if (!(theta >= 0.0) || !std::isfinite(theta)) throw ConfigError("theta must be finite and >= 0");
    if (points_old.empty() && theta == 0.0) {
        throw DegenerateClusterError("old-block update of an empty cluster with theta = 0 is undefined");
    }
    std::vector<double> sum(u0_s.size(), 0.0);
    for (const auto& p : points_old) {
        if (p.size() != u0_s.size()) throw DimensionError("update_old_block: point and prior lengths differ");
        for (std::size_t j = 0; j < p.size(); ++j) sum[j] += p[j];
    }
    const double denom = static_cast<double>(points_old.size()) + theta;
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = (sum[j] + theta * u0_s[j]) / denom;
    return sum;
}

std::vector<double> update_new_block(std::span<const std::vector<double>> points_new) {
    if (points_new.empty()) throw DegenerateClusterError("new-block update of an empty cluster");
    std::vector<double> sum(points_new.front().size(), 0.0);
    for (const auto& p : points_new) {
        if (p.size() != sum.size()) throw DimensionError("update_new_block: ragged points");
        for (std::size_t j = 0; j < p.size(); ++j) sum[j] += p[j];
    }
    const double c = static_cast<double>(points_new.size());
    for (double& v : sum) v /= c;
    return sum;
}

namespace {

void check_mr_inputs(const StageBundle& bundle, const CentersModel& u0, const MrOptions& opts) {
    bundle.validate();
    opts.base.validate();
    if (!(opts.theta >= 0.0) || !std::isfinite(opts.theta)) throw ConfigError("theta must be finite and >= 0");
    if (u0.k() != opts.base.k) {
        throw ConfigError("pretrained model has " + std::to_string(u0.k()) + " centers, options request k = " +
                          std::to_string(opts.base.k));
    }
    if (u0.dim() != bundle.d1) {
        throw DimensionError("pretrained model has dimension " + std::to_string(u0.dim()) + ", expected d1 = " +
                             std::to_string(bundle.d1));
    }
    if (bundle.n2() < 1) throw InsufficientDataError("model reuse needs at least one current-stage row");
}

// Sum of squared deviations of every center's old block from its prior.
double prior_penalty(const std::vector<double>& centers, const CentersModel& u0, std::size_t dim) {
    const std::size_t d1 = u0.dim();
    double acc = 0.0;
    for (std::size_t s = 0; s < u0.k(); ++s) {
        acc += detail::squared_distance_unchecked(centers.data() + s * dim, u0.center(s).data(), d1);
    }
    return acc;
}

FitReport mr_descend(const StageBundle& bundle, const CentersModel& u0, std::vector<double> centers,
                     const MrOptions& opts) {
    const DataMatrix& data = bundle.curr_full;
    const std::size_t n = data.rows();
    const std::size_t k = opts.base.k;
    const std::size_t d1 = bundle.d1;
    const std::size_t dim = data.cols();
    const double theta = opts.theta;
    const double inv_n = 1.0 / static_cast<double>(n);

    // Objective = (sum of squared distances + theta * prior penalty) / n2.
    auto objective = [&](double total, const std::vector<double>& c) {
        return (total + theta * prior_penalty(c, u0, dim)) * inv_n;
    };

    FitReport report;
    std::vector<std::size_t> labels;
    double total = detail::assign_rows(data, centers, k, labels);
    double value = objective(total, centers);
    report.risk_trace.push_back(value);

    std::vector<double> sums;
    std::vector<std::size_t> counts;
    std::vector<std::size_t> next_labels;
    for (std::size_t it = 1; it <= opts.base.max_iters; ++it) {
        detail::accumulate_clusters(data, labels, k, sums, counts);
        std::vector<std::size_t> empty;
        for (std::size_t s = 0; s < k; ++s) {
            double* u = centers.data() + s * dim;
            const auto prior = u0.center(s);
            if (counts[s] == 0) {
                empty.push_back(s);
                // With a positive theta the penalty alone fixes the old block at the prior.
                if (theta > 0.0) std::copy(prior.begin(), prior.end(), u);
                continue;
            }
            const double c = static_cast<double>(counts[s]);
            const double* sum = sums.data() + s * dim;
            for (std::size_t j = 0; j < d1; ++j) u[j] = (sum[j] + theta * prior[j]) / (c + theta);
            for (std::size_t j = d1; j < dim; ++j) u[j] = sum[j] / c;
        }

        if (!empty.empty()) {
            // Reseed as the plain engine does, but only when moving the row into
            // the empty cluster does not cost more in penalty than it saves in distance.
            const auto order = detail::rows_by_distance_to_assigned(data, centers, labels);
            for (std::size_t j = 0; j < empty.size() && j < order.size(); ++j) {
                const std::size_t s = empty[j];
                const auto row = data.row(order[j]);
                double* u = centers.data() + s * dim;
                if (theta > 0.0) {
                    const double gain = detail::squared_distance_unchecked(
                        row.data(), centers.data() + labels[order[j]] * dim, dim);
                    const double cost =
                        theta * detail::squared_distance_unchecked(row.data(), u0.center(s).data(), d1);
                    if (cost > gain) continue;
                }
                std::copy(row.begin(), row.end(), u);
            }
        }

        const double next_total = detail::assign_rows(data, centers, k, next_labels);
        const double next_value = objective(next_total, centers);
        report.risk_trace.push_back(next_value);
        report.iterations = it;

        const bool unchanged = next_labels == labels;
        const bool small_step = detail::relative_change_below(value, next_value, opts.base.rel_tol);
        labels.swap(next_labels);
        total = next_total;
        value = next_value;
        if (unchanged || small_step) {
            report.converged = true;
            break;
        }
    }

    report.model = CentersModel(DataMatrix(k, dim, std::move(centers)), Provenance::fic_mr,
                                BlockSplit{d1, bundle.d2});
    report.assignment = Assignment{std::move(labels)};
    report.risk = value;
    report.data_risk = total * inv_n;
    return report;
}

// Greedy-spread seeding that tolerates repeated rows: once every distinct row
// is taken the remaining centers repeat the last pick.
std::vector<double> spread_rows(const DataMatrix& data, std::size_t k, std::uint64_t seed) {
    const std::size_t n = data.rows();
    const std::size_t dim = data.cols();
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::size_t chosen = pick(rng);
    std::vector<double> out;
    out.reserve(k * dim);
    std::vector<double> nearest(n, 0.0);
    for (std::size_t s = 0; s < k; ++s) {
        const auto r = data.row(chosen);
        out.insert(out.end(), r.begin(), r.end());
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
    }
    return out;
}

}  // namespace

CentersModel mr_initial_centers(const StageBundle& bundle, const CentersModel& u0, std::uint64_t seed) {
    const std::size_t k = u0.k();
    const std::size_t d1 = bundle.d1;
    const std::size_t d2 = bundle.d2;
    const std::size_t dim = d1 + d2;
    std::vector<double> centers(k * dim, 0.0);
    std::vector<double> fresh;
    if (d2 > 0) fresh = spread_rows(bundle.curr_new(), k, seed);
    for (std::size_t s = 0; s < k; ++s) {
        const auto prior = u0.center(s);
        std::copy(prior.begin(), prior.end(), centers.begin() + static_cast<std::ptrdiff_t>(s * dim));
        if (d2 > 0) {
            std::copy(fresh.begin() + static_cast<std::ptrdiff_t>(s * d2),
                      fresh.begin() + static_cast<std::ptrdiff_t>((s + 1) * d2),
                      centers.begin() + static_cast<std::ptrdiff_t>(s * dim + d1));
        }
    }
    return CentersModel(DataMatrix(k, dim, std::move(centers)), Provenance::fic_mr, BlockSplit{d1, d2});
}

FitReport fit_mr_from(const StageBundle& bundle, const CentersModel& u0, const CentersModel& initial,
                      const MrOptions& opts) {
    check_mr_inputs(bundle, u0, opts);
    if (initial.k() != opts.base.k || initial.dim() != bundle.d1 + bundle.d2) {
        throw DimensionError("initial centers must be k x (d1 + d2)");
    }
    return mr_descend(bundle, u0, initial.centers().values(), opts);
}

FitReport fit_mr(const StageBundle& bundle, const CentersModel& u0, const MrOptions& opts) {
    check_mr_inputs(bundle, u0, opts);
    // Without new features every restart starts from the same centers.
    const std::size_t restarts = bundle.d2 == 0 ? 1 : opts.base.restarts;
    FitReport best;
    bool have_best = false;
    for (std::size_t r = 0; r < restarts; ++r) {
        auto init = mr_initial_centers(bundle, u0, derive_seed(opts.base.seed, r));
        FitReport run = mr_descend(bundle, u0, init.centers().values(), opts);
        if (!have_best || run.risk < best.risk) {
            best = std::move(run);
            have_best = true;
        }
    }
    return best;
}

}  // namespace fic
