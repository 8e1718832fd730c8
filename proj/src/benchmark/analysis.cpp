#include "ragbench/benchmark/analysis.hpp"

#include "ragbench/error.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace ragbench::bench {
namespace {

void check_ks(std::span<const std::size_t> ks) {
    if (ks.empty()) throw UserError("ks must not be empty");
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (ks[i] == 0) throw UserError("ks must be >= 1");
        if (i && ks[i] <= ks[i - 1]) throw UserError("ks must be strictly ascending");
    }
}

std::string fmt(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

nlohmann::ordered_json nullable(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

} // namespace

std::vector<SweepPoint> scaling_sweep(const Task& task, const EvalContext& ctx, std::span<const std::size_t> ks) {
    check_ks(ks);
    RunConfig cfg = *ctx.config;
    cfg.k = ks.back();
    EvalContext local = ctx;
    local.config = &cfg;
    check_ready(local);

    const bool per_k = cfg.retriever.kind == retrieval::RetrieverSpec::Kind::fusion;
    const std::size_t n = task.items.size();
    const std::size_t width = ctx.backend->max_in_flight();

    std::vector<retrieval::Ranking> shared(n);
    if (!per_k) {
        parallel_for(n, width, [&](std::size_t i) { shared[i] = retrieve_for_item(task.items[i], local, ks.back()); });
    }

    std::vector<SweepPoint> out;
    for (const std::size_t k : ks) {
        std::vector<EvalRecord> records(n);
        parallel_for(n, width, [&](std::size_t i) {
            const auto ranking = per_k ? retrieve_for_item(task.items[i], local, k) : shared[i];
            records[i] = evaluate_with_ranking(task.items[i], ranking, k, local);
            records[i].task_id = task.task_id;
            records[i].k = k;
        });
        out.push_back({k, score_task(task.task_id, std::move(records))});
    }
    return out;
}

std::vector<ScalingRow> scaling_curve(std::span<const EvalRecord> records, std::span<const std::size_t> ks) {
    std::map<std::size_t, std::vector<const EvalRecord*>> by_k;
    for (const auto& r : records) {
        if (!r.k) throw UserError("scaling mode needs records with a \"k\" field (item " + r.item_id + ")");
        by_k[*r.k].push_back(&r);
    }
    std::vector<std::size_t> order;
    if (ks.empty()) {
        for (const auto& [k, v] : by_k) order.push_back(k);
    } else {
        order.assign(ks.begin(), ks.end());
    }
    std::vector<ScalingRow> out;
    for (const auto k : order) {
        auto it = by_k.find(k);
        if (it == by_k.end()) throw UserError("no records for k = " + std::to_string(k));
        ScalingRow row{k, it->second.size(), 0, 0.0, 0.0, std::nullopt};
        std::size_t with_gold = 0, recalled = 0;
        for (const auto* r : it->second) {
            row.n_correct += r->correct ? 1 : 0;
            if (r->gold_snippet_ids) {
                ++with_gold;
                const auto& g = *r->gold_snippet_ids;
                recalled += std::any_of(r->retrieved_ids.begin(), r->retrieved_ids.end(), [&](const auto& id) {
                    return std::find(g.begin(), g.end(), id) != g.end();
                });
            }
        }
        row.accuracy = accuracy_percent(row.n_correct, row.n);
        row.std = std_percent(row.n_correct, row.n);
        if (with_gold == row.n) row.gold_recall = accuracy_percent(recalled, with_gold);
        out.push_back(row);
    }
    return out;
}

std::vector<PositionBin> position_analysis(std::span<const EvalRecord> records, std::span<const std::size_t> edges) {
    if (edges.empty()) throw UserError("position analysis needs bin edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i] == 0) throw UserError("bin edges must be >= 1");
        if (i && edges[i] <= edges[i - 1]) throw UserError("bin edges must be strictly ascending");
    }
    std::vector<PositionBin> bins;
    std::size_t lo = 1;
    for (const auto e : edges) {
        bins.push_back({std::to_string(lo) + "-" + std::to_string(e), lo, e, 0, 0, std::nullopt});
        lo = e + 1;
    }
    bins.push_back({">" + std::to_string(edges.back()), lo, 0, 0, 0, std::nullopt});
    bins.push_back({"absent", 0, 0, 0, 0, std::nullopt});
    const std::size_t overflow = edges.size();
    const std::size_t absent = edges.size() + 1;

    for (const auto& r : records) {
        if (!r.gold_snippet_ids) {
            throw UserError("position mode needs \"gold_snippet_ids\" on every record (missing for item " + r.item_id +
                            ")");
        }
        std::size_t b = absent;
        if (!r.gold_positions.empty()) {
            const auto first = *std::min_element(r.gold_positions.begin(), r.gold_positions.end());
            b = std::lower_bound(edges.begin(), edges.end(), first) - edges.begin();
            if (b == edges.size()) b = overflow;
        }
        ++bins[b].n;
        bins[b].n_correct += r.correct ? 1 : 0;
    }
    for (auto& bin : bins) {
        if (bin.n) bin.accuracy = accuracy_percent(bin.n_correct, bin.n);
    }
    return bins;
}

std::vector<SourceShare> source_proportion(std::span<const EvalRecord> records, const corpus::Manifest& manifest) {
    std::map<std::string, SourceShare> by_source;
    std::size_t corpus_total = 0;
    for (const auto& [source, count] : manifest) {
        by_source[source].corpus_count = count;
        corpus_total += count;
    }
    std::size_t retrieved_total = 0;
    for (const auto& r : records) {
        for (const auto& id : r.retrieved_ids) {
            ++by_source[corpus::source_of_snippet_id(id)].retrieved_count;
            ++retrieved_total;
        }
    }
    if (corpus_total == 0) throw UserError("manifest is empty");
    if (retrieved_total == 0) throw UserError("records contain no retrieved snippets");

    std::vector<SourceShare> out;
    for (auto& [source, s] : by_source) {
        s.source = source;
        s.corpus_share = static_cast<double>(s.corpus_count) / static_cast<double>(corpus_total);
        s.retrieved_share = static_cast<double>(s.retrieved_count) / static_cast<double>(retrieved_total);
        out.push_back(s);
    }
    return out;
}

nlohmann::ordered_json to_json(std::span<const ScalingRow> rows, std::optional<double> baseline) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["k"] = r.k;
        j["n"] = r.n;
        j["n_correct"] = r.n_correct;
        j["accuracy"] = round2(r.accuracy);
        j["std"] = round2(r.std);
        j["gold_recall"] = r.gold_recall ? nlohmann::ordered_json(round2(*r.gold_recall)) : nullptr;
        j["cot_baseline"] = nullable(baseline);
        arr.push_back(std::move(j));
    }
    return {{"mode", "scaling"}, {"rows", arr}};
}

nlohmann::ordered_json to_json(std::span<const PositionBin> bins) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& b : bins) {
        nlohmann::ordered_json j;
        j["bin"] = b.label;
        j["n"] = b.n;
        j["n_correct"] = b.n_correct;
        j["accuracy"] = b.accuracy ? nlohmann::ordered_json(round2(*b.accuracy)) : nullptr;
        arr.push_back(std::move(j));
    }
    return {{"mode", "position"}, {"bins", arr}};
}

nlohmann::ordered_json to_json(std::span<const SourceShare> shares) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& s : shares) {
        nlohmann::ordered_json j;
        j["source"] = s.source;
        j["corpus_count"] = s.corpus_count;
        j["corpus_share"] = s.corpus_share;
        j["retrieved_count"] = s.retrieved_count;
        j["retrieved_share"] = s.retrieved_share;
        arr.push_back(std::move(j));
    }
    return {{"mode", "proportion"}, {"sources", arr}};
}

std::string to_csv(std::span<const ScalingRow> rows, std::optional<double> baseline) {
    std::string out = "k,n,n_correct,accuracy,std,gold_recall,cot_baseline\n";
    for (const auto& r : rows) {
        out += std::to_string(r.k) + "," + std::to_string(r.n) + "," + std::to_string(r.n_correct) + "," +
               fmt(r.accuracy, 2) + "," + fmt(r.std, 2) + "," + (r.gold_recall ? fmt(*r.gold_recall, 2) : "") + "," +
               (baseline ? fmt(*baseline, 2) : "") + "\n";
    }
    return out;
}

std::string to_csv(std::span<const PositionBin> bins) {
    std::string out = "bin,n,n_correct,accuracy\n";
    for (const auto& b : bins) {
        out += b.label + "," + std::to_string(b.n) + "," + std::to_string(b.n_correct) + "," +
               (b.accuracy ? fmt(*b.accuracy, 2) : "") + "\n";
    }
    return out;
}

std::string to_csv(std::span<const SourceShare> shares) {
    std::string out = "source,corpus_count,corpus_share,retrieved_count,retrieved_share\n";
    for (const auto& s : shares) {
        out += s.source + "," + std::to_string(s.corpus_count) + "," + fmt(s.corpus_share, 6) + "," +
               std::to_string(s.retrieved_count) + "," + fmt(s.retrieved_share, 6) + "\n";
    }
    return out;
}

} // namespace ragbench::bench
