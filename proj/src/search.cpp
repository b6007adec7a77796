#include "cbir/search.hpp"

#include "cbir/error.hpp"

#include <algorithm>
#include <cmath>

namespace cbir {

double euclidean_distance(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::dimension_mismatch, "cannot compare vectors of length " + std::to_string(a.size()) +
                                                       " and " + std::to_string(b.size()));
    double sum = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

Normalizer fit_normalizer(std::span<const FeatureVector> raw)
{
    if (raw.empty())
        throw Error(ErrorCode::empty_corpus, "cannot fit a normalizer on zero feature vectors");
    Normalizer n{raw.front(), raw.front()};
    for (const auto& v : raw.subspan(1)) {
        for (std::size_t d = 0; d < feature_count; ++d) {
            n.mins[d] = std::min(n.mins[d], v[d]);
            n.maxs[d] = std::max(n.maxs[d], v[d]);
        }
    }
    return n;
}

Normalizer fit_normalizer(std::span<const IndexEntry> entries)
{
    std::vector<FeatureVector> raw;
    raw.reserve(entries.size());
    for (const auto& e : entries)
        raw.push_back(e.features);
    return fit_normalizer(raw);
}

FeatureVector normalize(const FeatureVector& v, const Normalizer& n)
{
    FeatureVector out{};
    for (std::size_t d = 0; d < feature_count; ++d) {
        const double range = n.maxs[d] - n.mins[d];
        out[d] = range > 0.0 ? (v[d] - n.mins[d]) / range : 0.0;
    }
    return out;
}

std::vector<RankedResult> rank(const FeatureVector& query, std::span<const IndexEntry> entries, const Normalizer& n,
                               int k, std::string_view exclude)
{
    if (k < 1)
        throw Error(ErrorCode::invalid_argument, "k must be >= 1, got " + std::to_string(k));
    if (entries.empty())
        throw Error(ErrorCode::empty_corpus, "cannot rank against an empty index");

    const auto q = normalize(query, n);
    std::vector<RankedResult> results;
    results.reserve(entries.size());
    for (const auto& e : entries) {
        if (!exclude.empty() && e.path == exclude)
            continue;
        results.push_back({e.path, e.category, euclidean_distance(q, normalize(e.features, n))});
    }

    auto by_distance_then_path = [](const RankedResult& a, const RankedResult& b) {
        if (a.distance != b.distance)
            return a.distance < b.distance;
        return a.path < b.path;
    };
    const auto keep = std::min(results.size(), static_cast<std::size_t>(k));
    std::partial_sort(results.begin(), results.begin() + static_cast<std::ptrdiff_t>(keep), results.end(),
                      by_distance_then_path);
    results.resize(keep);
    return results;
}

}  // namespace cbir
