/**
 * @file random.hpp
 * @brief Platform-stable pseudo-random streams for noise generation
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++ standard.
 * Distributions are implemented here rather than with <random> distributions, whose
 * algorithms are implementation-defined:
 *   uniform  (x >> 11) * 2^-53                                 in [0, 1)
 *   normal   Marsaglia polar method, second variate cached
 *   poisson  Knuth product method, exp(-500) chunks for large means
 */

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qhardy {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);
/// FNV-1a hash of a string, passed through mix64.
std::uint64_t hash_string(std::string_view s);
/// Order-sensitive combination of seeds.
std::uint64_t combine_seeds(std::uint64_t a, std::uint64_t b);

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    double uniform();
    double normal();
    /// Throws std::invalid_argument for negative or non-finite mean.
    std::uint64_t poisson(double mean);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qhardy
