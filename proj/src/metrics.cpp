#include "fic/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "fic/error.hpp"

namespace fic {

Matching optimal_matching(const CostMatrix& cost) {
    if (cost.rows == 0 || cost.cols == 0) throw EmptyInputError("optimal_matching of an empty matrix");
    if (cost.values.size() != cost.rows * cost.cols) throw DimensionError("cost matrix shape mismatch");
    for (double v : cost.values) {
        if (!std::isfinite(v)) throw NonFiniteError("optimal_matching: non-finite cost");
    }

    // Square padding; dummy entries cost nothing.
    const std::size_t n = std::max(cost.rows, cost.cols);
    auto at = [&](std::size_t r, std::size_t c) { return (r < cost.rows && c < cost.cols) ? cost(r, c) : 0.0; };

    // 1-based potentials formulation; p[j] is the row matched to column j.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = at(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    Matching out;
    out.row_to_col.assign(cost.rows, -1);
    for (std::size_t j = 1; j <= n; ++j) {
        const std::size_t r = p[j] - 1;
        const std::size_t c = j - 1;
        if (r < cost.rows && c < cost.cols) {
            out.row_to_col[r] = static_cast<long>(c);
            out.cost += cost(r, c);
        }
    }
    return out;
}

namespace {

struct Contingency {
    std::size_t n = 0;
    std::size_t pred_count = 0;   // distinct predicted clusters
    std::size_t truth_count = 0;  // distinct classes
    std::vector<double> table;    // pred_count x truth_count
    std::vector<double> pred_sizes;
    std::vector<double> truth_sizes;

    double operator()(std::size_t p, std::size_t t) const { return table[p * truth_count + t]; }
};

Contingency contingency(const Assignment& pred, const Labels& truth) {
    if (pred.size() != truth.size()) {
        throw DimensionError("prediction has " + std::to_string(pred.size()) + " labels, truth has " +
                             std::to_string(truth.size()));
    }
    if (truth.empty()) throw EmptyInputError("cannot score an empty partition");

    std::map<std::size_t, std::size_t> pred_ids;
    std::map<long long, std::size_t> truth_ids;
    for (std::size_t p : pred.labels) pred_ids.emplace(p, 0);
    for (long long t : truth) {
        if (t < 0) throw ConfigError("class ids must be nonnegative");
        truth_ids.emplace(t, 0);
    }
    std::size_t next = 0;
    for (auto& [id, idx] : pred_ids) idx = next++;
    next = 0;
    for (auto& [id, idx] : truth_ids) idx = next++;

    Contingency c;
    c.n = truth.size();
    c.pred_count = pred_ids.size();
    c.truth_count = truth_ids.size();
    c.table.assign(c.pred_count * c.truth_count, 0.0);
    c.pred_sizes.assign(c.pred_count, 0.0);
    c.truth_sizes.assign(c.truth_count, 0.0);
    for (std::size_t i = 0; i < c.n; ++i) {
        const std::size_t p = pred_ids[pred.labels[i]];
        const std::size_t t = truth_ids[truth[i]];
        c.table[p * c.truth_count + t] += 1.0;
        c.pred_sizes[p] += 1.0;
        c.truth_sizes[t] += 1.0;
    }
    return c;
}

double pairs(double m) { return m * (m - 1.0) / 2.0; }

double entropy(const std::vector<double>& sizes, double n) {
    double h = 0.0;
    for (double s : sizes) {
        if (s > 0.0) {
            const double q = s / n;
            h -= q * std::log(q);
        }
    }
    return h;
}

}  // namespace

double accuracy(const Assignment& pred, const Labels& truth) {
    const Contingency c = contingency(pred, truth);
    CostMatrix cost{c.pred_count, c.truth_count, {}};
    cost.values.resize(c.table.size());
    std::transform(c.table.begin(), c.table.end(), cost.values.begin(), [](double v) { return -v; });
    const Matching m = optimal_matching(cost);
    return -m.cost / static_cast<double>(c.n);
}

double pairwise_fscore(const Assignment& pred, const Labels& truth) {
    if (pred.size() == truth.size() && truth.size() < 2) {
        throw InsufficientDataError("pairwise F-score needs at least two rows");
    }
    const Contingency c = contingency(pred, truth);
    double tp = 0.0;
    for (double v : c.table) tp += pairs(v);
    if (tp == 0.0) return 0.0;
    double pred_pairs = 0.0;
    for (double s : c.pred_sizes) pred_pairs += pairs(s);
    double truth_pairs = 0.0;
    for (double s : c.truth_sizes) truth_pairs += pairs(s);
    const double precision = tp / pred_pairs;
    const double recall = tp / truth_pairs;
    return 2.0 * precision * recall / (precision + recall);
}

double nmi(const Assignment& pred, const Labels& truth) {
    const Contingency c = contingency(pred, truth);
    const double n = static_cast<double>(c.n);
    const double h_pred = entropy(c.pred_sizes, n);
    const double h_truth = entropy(c.truth_sizes, n);
    if (c.pred_count == 1 && c.truth_count == 1) return 1.0;
    if (c.pred_count == 1 || c.truth_count == 1) return 0.0;

    double mi = 0.0;
    for (std::size_t p = 0; p < c.pred_count; ++p) {
        for (std::size_t t = 0; t < c.truth_count; ++t) {
            const double joint = c(p, t);
            if (joint == 0.0) continue;
            mi += (joint / n) * std::log(joint * n / (c.pred_sizes[p] * c.truth_sizes[t]));
        }
    }
    return std::clamp(mi / std::sqrt(h_pred * h_truth), 0.0, 1.0);
}

}  // namespace fic
