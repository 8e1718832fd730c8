#pragma once

#include "ragbench/retrieval/ranking.hpp"

#include <span>

namespace ragbench::retrieval {

inline constexpr double kDefaultRrfK = 60.0;

/// Reciprocal rank fusion: score(s) = sum over rankings containing s of
/// 1 / (rrf_k + rank). Contributions are summed in ascending rank order, so
/// the result does not depend on the order of `rankings`. Output is sorted by
/// fused score (ties by ascending id) and truncated to `k`.
///
/// Throws UserError if `rankings` is empty or rrf_k <= 0.
Ranking rrf_fuse(std::span<const Ranking> rankings, double rrf_k, std::size_t k);

} // namespace ragbench::retrieval
