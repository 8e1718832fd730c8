#include "ragbench/benchmark/run_config.hpp"

#include "ragbench/digest.hpp"
#include "ragbench/error.hpp"

namespace ragbench::bench {

generation::TemplateId RunConfig::effective_template() const {
    if (template_id) return *template_id;
    return k > 0 ? generation::TemplateId::medrag : generation::TemplateId::cot;
}

void RunConfig::validate() const {
    const auto t = effective_template();
    if (k == 0 && generation::uses_context(t)) {
        throw UserError("k = 0 runs without retrieval and needs a cot template, got " +
                        std::string(generation::template_name(t)));
    }
    if (k > 0 && !generation::uses_context(t)) {
        throw UserError("k > 0 needs a medrag template, got " + std::string(generation::template_name(t)));
    }
    retriever.validate();
    generation.validate();
    if (backend.empty()) throw UserError("no backend configured");
}

RunConfig RunConfig::from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw UserError("run config must be a JSON object");
    RunConfig c;
    try {
        c.corpus_name = j.value("corpus", std::string{});
        if (j.contains("index_dir")) {
            std::filesystem::path p = j.at("index_dir").get<std::string>();
            c.index_dir = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
        }
        if (j.contains("retriever")) c.retriever = retrieval::RetrieverSpec::from_json(j.at("retriever"));
        if (j.contains("k")) {
            const auto k = j.at("k").get<long long>();
            if (k < 0) throw UserError("k must be >= 0");
            c.k = static_cast<std::size_t>(k);
        }
        if (j.contains("template")) c.template_id = generation::parse_template_id(j.at("template").get<std::string>());
        c.backend = j.value("backend", c.backend);
        if (j.contains("generation")) {
            const auto& g = j.at("generation");
            c.generation.temperature = g.value("temperature", c.generation.temperature);
            c.generation.max_tokens = g.value("max_tokens", c.generation.max_tokens);
            c.generation.context_token_budget = g.value("context_token_budget", c.generation.context_token_budget);
        }
        c.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("context_order")) {
            c.context_order = generation::ContextOrder::parse(j.at("context_order").get<std::string>(), c.seed);
        }
        if (j.contains("providers")) c.providers = j.at("providers");
        if (j.contains("backends")) c.backends = j.at("backends");
    } catch (const nlohmann::json::exception& e) {
        throw UserError(std::string("run config: ") + e.what());
    }
    return c;
}

RunConfig RunConfig::load(const std::filesystem::path& file) {
    const auto j = nlohmann::json::parse(read_file(file), nullptr, false);
    if (j.is_discarded()) throw UserError(file.string() + ": not valid JSON");
    try {
        return from_json(j, file.parent_path());
    } catch (const UserError& e) {
        throw UserError(file.string() + ": " + e.what());
    }
}

nlohmann::ordered_json RunConfig::to_json() const {
    nlohmann::ordered_json j;
    j["corpus"] = corpus_name;
    j["index_dir"] = index_dir.generic_string();
    j["retriever"] = retriever.to_json();
    j["retriever_id"] = retriever.id();
    j["k"] = k;
    j["template"] = generation::template_name(effective_template());
    j["backend"] = backend;
    j["generation"] = {{"temperature", generation.temperature},
                       {"max_tokens", generation.max_tokens},
                       {"context_token_budget", generation.context_token_budget}};
    j["context_order"] = context_order.name();
    j["seed"] = seed;
    j["providers"] = nlohmann::ordered_json::parse(providers.dump());
    j["backends"] = nlohmann::ordered_json::parse(backends.dump());
    return j;
}

std::string RunConfig::hash() const { return sha256_hex(to_json().dump()); }

} // namespace ragbench::bench
