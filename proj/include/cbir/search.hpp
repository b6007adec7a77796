#pragma once

#include "cbir/features.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cbir {

struct IndexEntry {
    std::string path;     // corpus-relative, '/' separated
    std::string category; // immediate parent directory name
    FeatureVector features{};

    friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
};

// Per-dimension corpus extrema of the raw features.
struct Normalizer {
    FeatureVector mins{};
    FeatureVector maxs{};

    friend bool operator==(const Normalizer&, const Normalizer&) = default;
};

struct RankedResult {
    std::string path;
    std::string category;
    double distance = 0.0;
};

/// Throws Error{dimension_mismatch} if the lengths differ.
double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Throws Error{empty_corpus} for an empty list.
Normalizer fit_normalizer(std::span<const FeatureVector> raw);
Normalizer fit_normalizer(std::span<const IndexEntry> entries);

/// Min-max scaling; constant dimensions map to 0; values outside the fitted
/// range are not clamped.
FeatureVector normalize(const FeatureVector& v, const Normalizer& n);

/// Top-k entries by Euclidean distance in normalized space, ordered by
/// (distance, path). An entry whose path equals `exclude` is skipped.
std::vector<RankedResult> rank(const FeatureVector& query, std::span<const IndexEntry> entries, const Normalizer& n,
                               int k, std::string_view exclude = {});

}  // namespace cbir
