#include <ordo/forest.hpp>

#include <ordo/errors.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace ordo {

double RegressionForest::Tree::predict(const std::vector<double>& point) const {
    int at = 0;
    for (;;) {
        const Node& node = nodes[static_cast<std::size_t>(at)];
        if (node.feature < 0) { return node.value; }
        at = point[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
    }
}

RegressionForest RegressionForest::fit(const std::vector<std::vector<double>>& x,
                                       const std::vector<double>& y, const ForestOptions& options,
                                       std::uint64_t seed) {
    if (x.empty() || x.size() != y.size()) {
        throw PreconditionError("forest needs a non-empty, aligned sample set");
    }

    struct Builder {
        const std::vector<std::vector<double>>& x;
        const std::vector<double>&              y;
        int                                     min_leaf;
        std::vector<int>                        rows;

        struct Split {
            int    feature = -1;
            double threshold = 0;
            double score = 0; // summed child sum-of-squared-errors; lower is better
        };

        [[nodiscard]] double y_at(int k) const { return y[static_cast<std::size_t>(rows[static_cast<std::size_t>(k)])]; }

        Split best_split(int first, int last) const {
            const int        n = last - first;
            std::vector<int> order(rows.begin() + first, rows.begin() + last);
            Split            best;
            bool             found = false;
            for (std::size_t f = 0; f < x[0].size(); ++f) {
                std::sort(order.begin(), order.end(), [&](int a, int b) {
                    return x[static_cast<std::size_t>(a)][f] < x[static_cast<std::size_t>(b)][f];
                });
                double sum = 0, sumsq = 0;
                for (const int r : order) {
                    const double yy = y[static_cast<std::size_t>(r)];
                    sum += yy;
                    sumsq += yy * yy;
                }
                double lsum = 0, lsumsq = 0;
                for (int k = 0; k < n - 1; ++k) {
                    const double yy = y[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
                    lsum += yy;
                    lsumsq += yy * yy;
                    const double xv   = x[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])][f];
                    const double next = x[static_cast<std::size_t>(order[static_cast<std::size_t>(k + 1)])][f];
                    if (xv == next) { continue; }
                    const int nl = k + 1, nr = n - nl;
                    if (nl < min_leaf || nr < min_leaf) { continue; }
                    const double rsum  = sum - lsum;
                    const double rsqsm = sumsq - lsumsq;
                    const double cost  = (lsumsq - lsum * lsum / nl) + (rsqsm - rsum * rsum / nr);
                    if (!found || cost < best.score) {
                        best  = {static_cast<int>(f), (xv + next) / 2.0, cost};
                        found = true;
                    }
                }
            }
            return best;
        }

        int build(int first, int last, std::vector<Node>& nodes) {
            const int self = static_cast<int>(nodes.size());
            nodes.push_back({});
            const int n    = last - first;
            double    mean = 0;
            for (int k = first; k < last; ++k) { mean += y_at(k); }
            mean /= static_cast<double>(n);
            bool pure = true;
            for (int k = first; k < last && pure; ++k) { pure = y_at(k) == y_at(first); }

            Split split;
            if (n >= 2 * min_leaf && !pure) { split = best_split(first, last); }
            if (split.feature < 0) {
                nodes[static_cast<std::size_t>(self)].value = mean;
                return self;
            }
            const auto mid = static_cast<int>(
                std::partition(rows.begin() + first, rows.begin() + last,
                               [&](int r) {
                                   return x[static_cast<std::size_t>(r)][static_cast<std::size_t>(split.feature)] <=
                                          split.threshold;
                               }) -
                rows.begin());
            nodes[static_cast<std::size_t>(self)].feature   = split.feature;
            nodes[static_cast<std::size_t>(self)].threshold = split.threshold;
            const int left                                  = build(first, mid, nodes);
            const int right                                 = build(mid, last, nodes);
            nodes[static_cast<std::size_t>(self)].left      = left;
            nodes[static_cast<std::size_t>(self)].right     = right;
            return self;
        }
    };

    RegressionForest forest;
    const auto       n    = static_cast<int>(x.size());
    const int        draw = std::max(1, static_cast<int>(std::llround(options.bootstrap_rate * n)));
    for (int t = 0; t < options.trees; ++t) {
        std::mt19937_64                    rng(seed + static_cast<std::uint64_t>(t) * 0x9e3779b97f4a7c15ull);
        std::uniform_int_distribution<int> pick(0, n - 1);
        Builder                            builder{x, y, options.min_leaf, {}};
        builder.rows.reserve(static_cast<std::size_t>(draw));
        for (int k = 0; k < draw; ++k) { builder.rows.push_back(pick(rng)); }
        Tree tree;
        builder.build(0, draw, tree.nodes);
        forest.trees_.push_back(std::move(tree));
    }
    return forest;
}

std::pair<double, double> RegressionForest::predict(const std::vector<double>& point) const {
    double sum = 0, sumsq = 0;
    for (const auto& tree : trees_) {
        const double v = tree.predict(point);
        sum += v;
        sumsq += v * v;
    }
    const auto   n    = static_cast<double>(trees_.size());
    const double mean = sum / n;
    const double var  = std::max(0.0, sumsq / n - mean * mean);
    return {mean, std::sqrt(var)};
}

} // namespace ordo
