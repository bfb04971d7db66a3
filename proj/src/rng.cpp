#include "pcvir/rng.hpp"

#include "pcvir/distributions.hpp"

namespace pcvir {

double Rng::normal() { return normal_quantile(uniform01()); }

std::vector<double> Rng::normals(std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = normal();
    return out;
}

}  // namespace pcvir
