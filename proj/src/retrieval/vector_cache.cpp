#include "ragbench/binary_io.hpp"
#include "ragbench/digest.hpp"
#include "ragbench/error.hpp"
#include "ragbench/retrieval/vector_index.hpp"

#include <json.hpp>

namespace ragbench::retrieval {
namespace {

std::filesystem::path with_suffix(const std::filesystem::path& stem, const char* suffix) {
    return std::filesystem::path(stem.string() + suffix);
}

} // namespace

std::filesystem::path vector_cache_stem(const std::filesystem::path& dir, std::string_view provider_id, Metric metric) {
    return dir / ("vectors." + std::string(provider_id) + "." + std::string(metric_name(metric)));
}

void save_vector_cache(const VectorIndex& index, const std::filesystem::path& stem) {
    std::string bytes;
    bytes.reserve(index.data().size() * sizeof(float));
    for (float v : index.data()) binio::put_f32(bytes, v);
    write_file(with_suffix(stem, ".f32"), bytes);

    nlohmann::ordered_json meta{{"dim", index.dim()},
                                {"count", index.size()},
                                {"provider_id", index.provider_id()},
                                {"metric", metric_name(index.metric())},
                                {"snippet_ids", index.snippet_ids()}};
    write_file(with_suffix(stem, ".json"), meta.dump(2) + "\n");
}

VectorIndex load_vector_cache(const std::filesystem::path& stem) {
    const auto meta_path = with_suffix(stem, ".json");
    const auto data_path = with_suffix(stem, ".f32");
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(read_file(meta_path));
    } catch (const nlohmann::json::exception& e) {
        throw UserError("malformed vector cache sidecar " + meta_path.string() + ": " + e.what());
    }
    const auto dim = meta.at("dim").get<std::size_t>();
    const auto count = meta.at("count").get<std::size_t>();
    const auto ids = meta.at("snippet_ids").get<std::vector<std::string>>();
    if (ids.size() != count) throw UserError("vector cache " + meta_path.string() + ": snippet_ids/count mismatch");

    const std::string bytes = read_file(data_path);
    if (bytes.size() != dim * count * sizeof(float)) {
        throw UserError("vector cache " + data_path.string() + " has " + std::to_string(bytes.size()) +
                        " bytes, expected " + std::to_string(dim * count * sizeof(float)));
    }
    VectorIndex index(meta.at("provider_id").get<std::string>(), parse_metric(meta.at("metric").get<std::string>()),
                      dim);
    binio::Reader in(bytes, data_path.string());
    std::vector<float> row(dim);
    for (std::size_t r = 0; r < count; ++r) {
        for (auto& v : row) v = in.f32();
        index.add(ids[r], row);
    }
    return index;
}

} // namespace ragbench::retrieval
