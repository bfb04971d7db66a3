#pragma once

#include <cstdint>
#include <vector>

#include "pcvir/linalg.hpp"
#include "pcvir/table.hpp"

namespace pcvir {

// Latent-factor generator: correlated feature blocks driven by shared latent
// variables, and labels drawn from a logistic model on the same latents.
struct GeneratorSpec {
    std::size_t n_groups = 6;
    std::size_t n_rows = 600;  // per group
    Matrix loading_pattern;    // n_features x n_latent
    std::vector<double> effects;  // per latent, log-odds scale
    double noise_sd = 0.7;
    std::uint64_t seed = 1;
};

// Loading pattern where consecutive feature blocks each load on one latent
// with weight 1. Features beyond the blocks (if any) load on nothing and
// stay pure noise.
Matrix block_loading_pattern(std::size_t n_features, const std::vector<std::size_t>& block_sizes);

struct GeneratedTruth {
    std::vector<double> weight;  // loading_pattern * effects, per feature
    std::vector<int> sign;       // -1, 0, +1 of the weight
};

struct GeneratedData {
    FeatureTable table;
    GeneratedTruth truth;
};

GeneratedData generate(const GeneratorSpec& spec);

// The configuration the CLI simulates when no spec file is given: six groups
// of 600 rows, twenty features in three correlated blocks, one strong, one
// moderate and one null latent effect.
GeneratorSpec default_generator_spec();

}  // namespace pcvir
