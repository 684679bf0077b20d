#ifndef FIC_TESTS_ORACLES_HPP
#define FIC_TESTS_ORACLES_HPP

// Brute-force reference computations. Deliberately independent of the
// library's optimized paths: no shared kernels, no matching solver.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "fic/matrix.hpp"

namespace oracle {

using Points = std::vector<std::vector<double>>;

inline Points rows_of(const fic::DataMatrix& m) {
    Points out;
    for (std::size_t i = 0; i < m.rows(); ++i) out.emplace_back(m.row(i).begin(), m.row(i).end());
    return out;
}

// Sum of squared deviations from the mean, summed over every cluster of `labels`.
inline double partition_cost(const Points& pts, const std::vector<int>& labels, int k) {
    const std::size_t dim = pts.front().size();
    double total = 0.0;
    for (int s = 0; s < k; ++s) {
        std::vector<double> mean(dim, 0.0);
        int count = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (labels[i] != s) continue;
            ++count;
            for (std::size_t j = 0; j < dim; ++j) mean[j] += pts[i][j];
        }
        if (count == 0) continue;
        for (double& v : mean) v /= count;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (labels[i] != s) continue;
            for (std::size_t j = 0; j < dim; ++j) total += (pts[i][j] - mean[j]) * (pts[i][j] - mean[j]);
        }
    }
    return total;
}

// Globally optimal k-means risk by enumerating every labelling (k^n).
inline double optimal_kmeans_risk(const Points& pts, int k) {
    const std::size_t n = pts.size();
    std::vector<int> labels(n, 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        best = std::min(best, partition_cost(pts, labels, k));
        std::size_t i = 0;
        while (i < n && ++labels[i] == k) labels[i++] = 0;
        if (i == n) break;
    }
    return best / static_cast<double>(n);
}

// Minimum of sum cost[i][perm[i]] over all permutations of a square matrix.
inline double brute_force_assignment(const std::vector<std::vector<double>>& cost) {
    const std::size_t n = cost.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += cost[i][perm[i]];
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Best accuracy over every injective map from predicted ids to class ids
// (predicted ids beyond the class count map to nothing).
inline double brute_force_accuracy(const std::vector<std::size_t>& pred, const std::vector<long long>& truth) {
    std::vector<std::size_t> pids(pred.begin(), pred.end());
    std::sort(pids.begin(), pids.end());
    pids.erase(std::unique(pids.begin(), pids.end()), pids.end());
    std::vector<long long> tids(truth.begin(), truth.end());
    std::sort(tids.begin(), tids.end());
    tids.erase(std::unique(tids.begin(), tids.end()), tids.end());

    // Pad the class list with "no class" slots so every cluster gets a target.
    std::vector<long long> targets = tids;
    while (targets.size() < pids.size()) targets.push_back(-1);
    std::vector<std::size_t> perm(targets.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::size_t best = 0;
    do {
        std::map<std::size_t, long long> mapping;
        for (std::size_t i = 0; i < pids.size(); ++i) mapping[pids[i]] = targets[perm[i]];
        std::size_t hits = 0;
        for (std::size_t i = 0; i < pred.size(); ++i) hits += mapping[pred[i]] == truth[i];
        best = std::max(best, hits);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best) / static_cast<double>(pred.size());
}

// Pair-counting F-measure by enumerating every unordered pair.
inline double pair_enumeration_fscore(const std::vector<std::size_t>& pred, const std::vector<long long>& truth) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        for (std::size_t j = i + 1; j < pred.size(); ++j) {
            const bool same_pred = pred[i] == pred[j];
            const bool same_truth = truth[i] == truth[j];
            if (same_pred && same_truth) ++tp;
            else if (same_pred) ++fp;
            else if (same_truth) ++fn;
        }
    }
    if (tp == 0) return 0.0;
    const double p = tp / (tp + fp);
    const double r = tp / (tp + fn);
    return 2 * p * r / (p + r);
}

// Central-difference gradient of f at x.
inline std::vector<double> numeric_gradient(const std::function<double(const std::vector<double>&)>& f,
                                            std::vector<double> x, double h = 1e-5) {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double orig = x[i];
        x[i] = orig + h;
        const double up = f(x);
        x[i] = orig - h;
        const double down = f(x);
        x[i] = orig;
        g[i] = (up - down) / (2 * h);
    }
    return g;
}

inline double norm(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

inline fic::DataMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double lo = 0.0,
                                     double hi = 10.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(rows * cols);
    for (double& x : v) x = u(rng);
    return fic::DataMatrix(rows, cols, std::move(v));
}

}  // namespace oracle

#endif  // FIC_TESTS_ORACLES_HPP
