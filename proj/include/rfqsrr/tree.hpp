#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rfqsrr/dataset.hpp"

namespace rfq {

struct TreeParams {
    std::size_t mtry = 0;           // candidate features per split; 0 = max(1, p/3)
    std::size_t min_node_size = 5;  // smallest node that still attempts a split
    std::size_t max_depth = 0;      // 0 = no cap
    std::uint64_t seed = 0;
};

std::size_t resolve_mtry(std::size_t mtry, std::size_t p);

struct TreeNode {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double prediction = 0.0;  // mean response of the training rows routed here
    std::uint32_t count = 0;

    bool is_leaf() const { return feature < 0; }
};

// Binary CART regression tree. The node array always forms a proper binary
// tree rooted at index 0; the constructor rejects anything else.
class RegressionTree {
public:
    RegressionTree() = default;
    RegressionTree(std::vector<TreeNode> nodes, std::int32_t root);

    const std::vector<TreeNode>& nodes() const { return nodes_; }
    std::int32_t root() const { return root_; }
    std::size_t leaf_count() const;

    // Largest feature index referenced by any split, or -1 for a single leaf.
    std::int32_t max_feature() const { return max_feature_; }

    double predict(std::span<const double> x) const;
    double predict_row(const Dataset& d, std::size_t row) const;
    // Routes a row with one feature's value replaced; used for permutation
    // importance without materialising a modified dataset.
    double predict_row_substituted(const Dataset& d, std::size_t row, std::size_t feature,
                                   double value) const;

    // Sorted, duplicate-free indices of features used by split nodes.
    std::vector<std::size_t> used_features() const;

    bool operator==(const RegressionTree& other) const;

private:
    std::vector<TreeNode> nodes_;
    std::int32_t root_ = -1;
    std::int32_t max_feature_ = -1;
};

struct SplitCandidate {
    std::size_t feature = 0;
    double threshold = 0.0;
    double score = 0.0;  // decrease in sum of squared deviations, >= 0
};

// Best (feature, threshold) over the given candidates, thresholds taken at
// midpoints between consecutive distinct feature values within the rows.
// Ties break toward the lowest feature index, then the lowest threshold.
// Returns nothing when no candidate improves on the parent node.
std::optional<SplitCandidate> best_split(const Dataset& d, std::span<const std::size_t> rows,
                                         std::span<const std::size_t> candidate_features);

// Grows a tree on the given rows (duplicates allowed, e.g. a bootstrap bag).
// Each node draws its feature subset from an RNG stream keyed on
// (params.seed, node path), so the result is a pure function of the inputs.
RegressionTree fit_tree(const Dataset& d, std::span<const std::size_t> rows,
                        const TreeParams& params);

double predict_tree(const RegressionTree& t, std::span<const double> x);

}  // namespace rfq
