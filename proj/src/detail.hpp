#pragma once

// Helpers shared by the littlewood sources.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "littlewood/cf.hpp"

namespace littlewood::detail {

/// (a0, a_1 a_2 ...) of any real source.
std::pair<BigInt, WordStream> quotient_source(const RealSource& alpha);

std::string approx_string(double x);

/// Certified x <= bound.
bool at_most(const CertifiedValue& x, const BigRational& bound);

/// [first, last] cut into at most `parts` contiguous ranges.
std::vector<std::pair<std::uint64_t, std::uint64_t>> split_range(std::uint64_t first, std::uint64_t last,
                                                                 unsigned parts);

}  // namespace littlewood::detail
