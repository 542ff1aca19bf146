#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rfqsrr/dataset.hpp"

namespace rfq {

// Shape of a generated dataset with planted relevant features. Stands in for
// retention data that cannot be redistributed.
struct SyntheticSpec {
    std::size_t n = 200;
    std::size_t p = 100;
    std::size_t k_linear = 5;
    std::size_t k_nonlinear = 0;
    double noise_sd = 0.5;
    double correlation_rho = 0.0;  // correlation of decoy copies with their source
    std::uint64_t seed = 0;
};

struct GenerativeTerm {
    enum class Kind { Linear, Product, Sine };
    Kind kind = Kind::Linear;
    std::size_t feature_a = 0;  // final column index
    std::size_t feature_b = 0;  // product terms only
    double coefficient = 1.0;
    double frequency = 0.0;  // sine terms only
};

struct SyntheticMeta {
    std::vector<GenerativeTerm> terms;
    std::vector<std::size_t> relevant;  // final column indices, sorted
    // (copy column, source column) pairs; copies correlate with their source
    // at correlation_rho but never enter the response.
    std::vector<std::pair<std::size_t, std::size_t>> correlated_copies;
    double analytic_variance = 0.0;  // Var(y) implied by the generator
};

struct SyntheticDataset {
    Dataset data;
    SyntheticMeta meta;
};

// Response = sum of unit-coefficient linear terms, alternating-sign pair
// products and bounded sine transforms over the planted columns, plus
// Gaussian noise. Ground truth is embedded in the descriptor names
// ("REL_"/"IRR_" prefixes) and echoed in the metadata.
SyntheticDataset generate_synthetic(const SyntheticSpec& spec);

void write_meta_json(const SyntheticMeta& meta, const SyntheticSpec& spec,
                     const std::string& path);

}  // namespace rfq
