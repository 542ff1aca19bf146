#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rfq {

// Numeric descriptor matrix plus a response vector. Values are stored
// column-major so that per-feature scans (the hot path when growing trees)
// touch contiguous memory. All entries are finite and descriptor names are
// unique; both are enforced at construction.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<std::string> compound_ids,
            std::vector<std::string> descriptor_names,
            std::vector<double> column_major_x,
            std::vector<double> response);

    std::size_t n_rows() const { return response_.size(); }
    std::size_t n_cols() const { return descriptor_names_.size(); }

    double x(std::size_t row, std::size_t col) const { return x_[col * n_rows() + row]; }
    std::span<const double> column(std::size_t col) const {
        return {x_.data() + col * n_rows(), n_rows()};
    }
    void copy_row(std::size_t row, std::span<double> out) const;

    double y(std::size_t row) const { return response_[row]; }
    const std::vector<double>& response() const { return response_; }
    const std::vector<std::string>& compound_ids() const { return compound_ids_; }
    const std::vector<std::string>& descriptor_names() const { return descriptor_names_; }

    // FNV-1a over the descriptor names; part of the model fingerprint.
    std::uint64_t names_hash() const;

    double response_variance() const;  // population variance of y

    Dataset subset_rows(std::span<const std::size_t> rows) const;
    Dataset restrict_columns(std::span<const std::size_t> cols) const;

    bool equals(const Dataset& other) const;

    // CSV layout: header mandatory, column 1 = compound id, column 2 =
    // response, columns 3.. = descriptors. UTF-8, '.' decimal point.
    static Dataset load_csv(const std::string& path, std::size_t min_rows = 1);
    void write_csv(const std::string& path) const;

private:
    std::vector<std::string> compound_ids_;
    std::vector<std::string> descriptor_names_;
    std::vector<double> x_;  // column-major, n_rows * n_cols
    std::vector<double> response_;
};

// 2:1 random partition of a dataset's rows. Row index sets are disjoint and
// cover the source; |train| = round-half-up of 2n/3.
struct SplitPair {
    Dataset train;
    Dataset test;
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
    std::uint64_t seed = 0;
};

SplitPair split_2to1(const Dataset& d, std::uint64_t seed);

// One bootstrap draw: n row indices sampled with replacement, plus the
// sorted set of rows that were never drawn.
struct BagSample {
    std::vector<std::size_t> indices;
    std::vector<std::size_t> oob_indices;
};

BagSample bootstrap(std::size_t n_rows, std::uint64_t seed);
BagSample bootstrap(const Dataset& d, std::uint64_t seed);

}  // namespace rfq
