#include "depcov/seeding.hpp"

namespace depcov {

Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

}  // namespace depcov
