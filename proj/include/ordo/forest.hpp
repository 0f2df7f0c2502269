#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ordo {

struct ForestOptions {
    int    trees          = 32;
    double bootstrap_rate = 1.0;
    int    min_leaf       = 2;
};

// Bagged regression trees with variance-reduction splits on a flat feature
// vector. predict() returns the mean of the per-tree outputs and their
// population standard deviation as the spread.
class RegressionForest {
public:
    static RegressionForest fit(const std::vector<std::vector<double>>& x, const std::vector<double>& y,
                                const ForestOptions& options, std::uint64_t seed);

    [[nodiscard]] std::pair<double, double> predict(const std::vector<double>& point) const;

private:
    struct Node {
        int    feature = -1; // -1 marks a leaf
        double threshold = 0;
        int    left = -1, right = -1;
        double value = 0;
    };
    struct Tree {
        std::vector<Node> nodes;
        [[nodiscard]] double predict(const std::vector<double>& point) const;
    };

    std::vector<Tree> trees_;
};

} // namespace ordo
