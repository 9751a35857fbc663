#pragma once

#include "czd/grid.hpp"

namespace czd {

/// Built-in corpus fields sampled at cell centers. Names:
///   constant          f = 5                       (any dimension)
///   affine            f = 3 x_0 + 1               (any dimension)
///   hat1d             f = max(0, 1 - 8 |x - 1/2|) (1D)
///   gauss-bump        f = exp(-|x - 1/2|^2 / (2 sigma^2)), sigma = 0.12 (any dimension)
///   two-spikes-2d     two Gaussian spikes at (0.3,0.3) and (0.7,0.7), sigma = 0.08 (2D)
///   checker-smooth-2d f = sin(4 pi x) sin(4 pi y) (2D)
ScalarField generate(const std::string& name, const GridSpec& spec);

/// Names in a fixed order; dims[i] = 0 means any dimension.
std::vector<std::string> generator_names();
int generator_native_dim(const std::string& name);

}  // namespace czd
