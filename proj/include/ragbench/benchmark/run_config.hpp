#pragma once

#include "ragbench/generation/backend.hpp"
#include "ragbench/generation/context.hpp"
#include "ragbench/generation/prompt_template.hpp"
#include "ragbench/retrieval/retriever.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

namespace ragbench::bench {

inline constexpr std::size_t kDefaultK = 32;

/// One experiment coordinate: corpus, retriever, k, template, backend and
/// generation settings.
struct RunConfig {
    std::string corpus_name;
    std::filesystem::path index_dir; // store + indexes written by `ragbench index`
    retrieval::RetrieverSpec retriever;
    std::size_t k = kDefaultK;
    /// Unset: medrag when k > 0, cot when k == 0.
    std::optional<generation::TemplateId> template_id;
    std::string backend = "oracle_mock";
    generation::GenerationParams generation;
    generation::ContextOrder context_order;
    std::uint64_t seed = 0;
    nlohmann::json providers = nlohmann::json::object(); // embedding provider configs
    nlohmann::json backends = nlohmann::json::object();  // http_chat backend configs

    generation::TemplateId effective_template() const;

    /// k == 0 needs a cot template, k > 0 a medrag template. Throws UserError.
    void validate() const;

    /// Relative index_dir values are resolved against `base_dir`.
    static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
    static RunConfig load(const std::filesystem::path& file);

    /// Every field, with the effective template spelled out.
    nlohmann::ordered_json to_json() const;

    /// SHA-256 of to_json().dump().
    std::string hash() const;
};

} // namespace ragbench::bench
