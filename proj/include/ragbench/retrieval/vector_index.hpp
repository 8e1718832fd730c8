#pragma once

#include "ragbench/kernels/distance.hpp"
#include "ragbench/retrieval/ranking.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ragbench::retrieval {

enum class Metric { inner_product, l2 };

std::string_view metric_name(Metric metric) noexcept; // "ip" | "l2"
Metric parse_metric(std::string_view name);           // throws UserError

/// Exact (flat) dense index: one float row per snippet, searched exhaustively.
class VectorIndex {
public:
    VectorIndex(std::string provider_id, Metric metric, std::size_t dim);

    /// Throws UserError if vector.size() != dim().
    void add(std::string snippet_id, std::span<const float> vector);

    const std::string& provider_id() const noexcept { return provider_id_; }
    Metric metric() const noexcept { return metric_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return ids_.size(); }
    std::span<const std::string> snippet_ids() const noexcept { return ids_; }
    std::span<const float> data() const noexcept { return data_; }
    std::span<const float> row(std::size_t ordinal) const { return {data_.data() + ordinal * dim_, dim_}; }

    /// "dense:<provider>:<metric>"
    std::string retriever_id() const;

    /// Top-k by inner product (descending) or Euclidean distance (ascending),
    /// ties by ascending snippet id. Throws UserError on a dimension mismatch.
    Ranking search(std::span<const float> query, std::size_t k,
                   const kernels::DistanceKernels& kernels = kernels::active_kernels()) const;

private:
    std::string provider_id_;
    Metric metric_;
    std::size_t dim_;
    std::vector<std::string> ids_;
    std::vector<float> data_;
};

/// Vector cache on disk: `<stem>.f32` holds little-endian float32 rows,
/// `<stem>.json` holds {dim, count, provider_id, metric, snippet_ids}.
void save_vector_cache(const VectorIndex& index, const std::filesystem::path& stem);
VectorIndex load_vector_cache(const std::filesystem::path& stem);

/// File stem used by the CLI for a provider/metric pair inside an index dir.
std::filesystem::path vector_cache_stem(const std::filesystem::path& dir, std::string_view provider_id, Metric metric);

} // namespace ragbench::retrieval
