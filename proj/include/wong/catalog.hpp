#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wong/spectral_grid.hpp"

namespace wong {

struct TestFunction {
  std::string name;
  Field field;
};

/// Names of the smooth, rapidly decaying catalog functions. Each one is a 1-D
/// profile; on 2-D grids the tensor product of the profile with itself is used.
/// On grids with T >= 40 every entry keeps at most 1e-12 of its sup norm
/// outside [-T/4, T/4]^n.
const std::vector<std::string>& catalog_names();

/// Throws std::invalid_argument for an unknown name.
Field catalog_function(std::string_view name, const Grid& grid);

/// Named entries in the given order followed by `random_count` random
/// band-limited fields named "random_<seed>" for seeds first_seed, first_seed+1, ...
std::vector<TestFunction> build_catalog(const Grid& grid, const std::vector<std::string>& names,
                                        int random_count, std::uint64_t first_seed,
                                        double decay);

/// max |f| outside [-T/4, T/4]^n divided by max |f|.
double tail_ratio(const Field& f);

}  // namespace wong
