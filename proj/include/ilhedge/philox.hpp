#pragma once

#include <array>
#include <cstdint>

namespace ilhedge {

// Philox-4x32-10 keyed counter block function (Salmon et al., SC'11).
// A pure function of (counter, key): no state, trivially parallel.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

struct NormalPair {
    double z0;
    double z1;
};

// Two standard normals as a pure function of (seed, path, step): one Philox
// block keyed by the seed and countered by (step, path) yields two 53-bit
// uniforms, mapped through Box-Muller. Identical inputs give bit-identical
// outputs on any thread.
NormalPair normal_pair(std::uint64_t seed, std::uint64_t path, std::uint64_t step);

} // namespace ilhedge
