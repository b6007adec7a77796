#include "cbir/evaluation.hpp"

#include "cbir/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace cbir {

double precision(int relevant_retrieved, int retrieved)
{
    if (retrieved <= 0)
        throw Error(ErrorCode::invalid_argument, "precision is undefined when nothing is retrieved");
    if (relevant_retrieved < 0 || relevant_retrieved > retrieved)
        throw Error(ErrorCode::invalid_argument, "relevant_retrieved must be in [0, retrieved]");
    return static_cast<double>(relevant_retrieved) / retrieved;
}

double recall(int relevant_retrieved, int relevant_in_db)
{
    if (relevant_in_db <= 0)
        throw Error(ErrorCode::invalid_argument, "recall is undefined without relevant images in the database");
    if (relevant_retrieved < 0 || relevant_retrieved > relevant_in_db)
        throw Error(ErrorCode::invalid_argument, "relevant_retrieved must be in [0, relevant_in_db]");
    return static_cast<double>(relevant_retrieved) / relevant_in_db;
}

EvalRow make_row(std::string category, int relevant_retrieved, int retrieved, int relevant_in_db)
{
    return {std::move(category), relevant_retrieved, retrieved, relevant_in_db,
            precision(relevant_retrieved, retrieved), recall(relevant_retrieved, relevant_in_db)};
}

std::string_view to_string(EvalMode mode)
{
    return mode == EvalMode::shaded ? "shaded" : "unshaded";
}

std::string_view to_string(QueryMode mode)
{
    return mode == QueryMode::per_category_first ? "per_category_first" : "all_queries_averaged";
}

double EvalResult::mean_precision() const
{
    if (rows.empty())
        return 0.0;
    return std::accumulate(rows.begin(), rows.end(), 0.0, [](double s, const EvalRow& r) { return s + r.precision; }) /
           static_cast<double>(rows.size());
}

double EvalResult::mean_recall() const
{
    if (rows.empty())
        return 0.0;
    return std::accumulate(rows.begin(), rows.end(), 0.0, [](double s, const EvalRow& r) { return s + r.recall; }) /
           static_cast<double>(rows.size());
}

EvalResult run_experiment(const Index& ix, int k, QueryMode query_mode)
{
    if (k < 1)
        throw Error(ErrorCode::invalid_argument, "k must be >= 1, got " + std::to_string(k));
    if (ix.entries.size() < 2)
        throw Error(ErrorCode::invalid_argument, "evaluation needs at least two indexed images");

    // Entries are path-sorted, so each category's list is too.
    std::map<std::string, std::vector<const IndexEntry*>> by_category;
    for (const auto& e : ix.entries)
        by_category[e.category].push_back(&e);

    EvalResult result;
    result.k = k;
    result.mode = ix.phong ? EvalMode::shaded : EvalMode::unshaded;
    for (const auto& [category, members] : by_category) {
        const std::size_t used = query_mode == QueryMode::per_category_first ? 1 : members.size();
        int relevant_retrieved = 0;
        int retrieved = 0;
        int relevant_in_db = 0;
        for (std::size_t q = 0; q < used; ++q) {
            const auto& query = *members[q];
            const auto hits = rank(query.features, ix, k, query.path);
            relevant_retrieved += static_cast<int>(
                std::count_if(hits.begin(), hits.end(), [&](const RankedResult& r) { return r.category == category; }));
            retrieved += static_cast<int>(hits.size());
            relevant_in_db += static_cast<int>(members.size());
        }
        result.rows.push_back(make_row(category, relevant_retrieved, retrieved, relevant_in_db));
    }
    return result;
}

}  // namespace cbir
