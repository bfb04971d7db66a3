#include "pcvir/synthdata.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pcvir/rng.hpp"

namespace pcvir {

Matrix block_loading_pattern(std::size_t n_features, const std::vector<std::size_t>& block_sizes) {
    std::size_t total = 0;
    for (std::size_t b : block_sizes) total += b;
    if (total > n_features)
        throw std::invalid_argument("block sizes exceed the feature count");
    Matrix pattern(n_features, block_sizes.size());
    std::size_t row = 0;
    for (std::size_t l = 0; l < block_sizes.size(); ++l)
        for (std::size_t i = 0; i < block_sizes[l]; ++i) pattern(row++, l) = 1.0;
    return pattern;
}

GeneratedData generate(const GeneratorSpec& spec) {
    const std::size_t p = spec.loading_pattern.rows();
    const std::size_t l = spec.loading_pattern.cols();
    if (p == 0 || l == 0)
        throw std::invalid_argument("generate: loading pattern is empty");
    if (l > p)
        throw std::invalid_argument("generate: more latents than features");
    if (spec.effects.size() != l)
        throw std::invalid_argument("generate: effects count does not match latent count");
    if (!(spec.noise_sd > 0.0))
        throw std::invalid_argument("generate: noise_sd must be positive");
    if (spec.n_groups == 0 || spec.n_rows == 0)
        throw std::invalid_argument("generate: need at least one group and one row");
    bool all_zero = true;
    for (std::size_t j = 0; j < p && all_zero; ++j)
        for (std::size_t k = 0; k < l && all_zero; ++k)
            if (spec.loading_pattern(j, k) != 0.0) all_zero = false;
    if (all_zero) throw std::invalid_argument("generate: loading pattern is all zero");

    GeneratedData out;
    FeatureTable& t = out.table;

    int width = 1;
    for (std::size_t v = p; v >= 10; v /= 10) ++width;
    t.feature_names.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        std::string num = std::to_string(j + 1);
        t.feature_names[j] = "f" + std::string(width - num.size(), '0') + num;
    }
    t.coding = {"0", "1"};
    t.label_column = "label";
    t.group_column = "group";

    const std::size_t n_total = spec.n_groups * spec.n_rows;
    t.features = Matrix(n_total, p);
    t.labels.reserve(n_total);
    t.groups.reserve(n_total);

    std::size_t row = 0;
    for (std::size_t g = 0; g < spec.n_groups; ++g) {
        Rng rng = Rng::stream(spec.seed, g);
        std::string gid = "g" + std::to_string(g + 1);
        for (std::size_t i = 0; i < spec.n_rows; ++i, ++row) {
            std::vector<double> latent = rng.normals(l);
            for (std::size_t j = 0; j < p; ++j) {
                double v = spec.noise_sd * rng.normal();
                for (std::size_t k = 0; k < l; ++k)
                    v += spec.loading_pattern(j, k) * latent[k];
                t.features(row, j) = v;
            }
            double eta = 0.0;
            for (std::size_t k = 0; k < l; ++k) eta += spec.effects[k] * latent[k];
            double prob = 1.0 / (1.0 + std::exp(-eta));
            t.labels.push_back(rng.uniform01() < prob ? 1 : 0);
            t.groups.push_back(gid);
        }
    }

    out.truth.weight.resize(p);
    out.truth.sign.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        double w = 0.0;
        for (std::size_t k = 0; k < l; ++k) w += spec.loading_pattern(j, k) * spec.effects[k];
        out.truth.weight[j] = w;
        out.truth.sign[j] = std::abs(w) < 1e-12 ? 0 : (w > 0.0 ? 1 : -1);
    }
    return out;
}

GeneratorSpec default_generator_spec() {
    GeneratorSpec spec;
    spec.n_groups = 6;
    spec.n_rows = 600;
    spec.loading_pattern = block_loading_pattern(20, {7, 7, 6});
    spec.effects = {2.0, 1.0, 0.0};
    spec.noise_sd = 0.7;
    spec.seed = 1;
    return spec;
}

}  // namespace pcvir
