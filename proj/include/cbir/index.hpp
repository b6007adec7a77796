#pragma once

#include "cbir/features.hpp"
#include "cbir/phong.hpp"
#include "cbir/search.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cbir {

inline constexpr int index_format_version = 1;

struct CorpusFile {
    std::string path;     // relative to the corpus root
    std::string category;

    friend bool operator==(const CorpusFile&, const CorpusFile&) = default;
};

/// Lists every supported image (currently `.ppm`, case-insensitive) below
/// `root`, sorted by relative path. Files directly under the root take the
/// root directory's own name as their category.
/// Throws Error{io} for an unreadable root, Error{empty_corpus} if nothing is found.
std::vector<CorpusFile> scan_corpus(const std::filesystem::path& root);

bool is_supported_image(const std::filesystem::path& path);

// Feature database: entries sorted by unique path, normalizer fitted on them.
struct Index {
    int version = index_format_version;
    std::optional<PhongParams> phong;
    ExtractionOptions extraction;
    Normalizer normalizer;
    std::vector<IndexEntry> entries;

    friend bool operator==(const Index&, const Index&) = default;
};

/// Extracts features for every image in the corpus (in parallel when
/// `threads` != 1; 0 means hardware concurrency). Fails on the first image
/// that cannot be decoded, naming the file.
Index build_index(const std::filesystem::path& root, const std::optional<PhongParams>& phong,
                  const ExtractionOptions& opts = {}, unsigned threads = 0);

/// Validates every persisted invariant; throws Error{invariant} on violation.
void check_index(const Index& ix);

std::string serialize_index(const Index& ix);
/// Throws Error{version_mismatch}, Error{schema} or Error{invariant}.
Index parse_index(std::string_view text);

void save_index(const Index& ix, const std::filesystem::path& path);
Index load_index(const std::filesystem::path& path);

inline std::vector<RankedResult> rank(const FeatureVector& query, const Index& ix, int k,
                                      std::string_view exclude = {})
{
    return rank(query, ix.entries, ix.normalizer, k, exclude);
}

}  // namespace cbir
