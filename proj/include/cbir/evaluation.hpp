#pragma once

#include "cbir/index.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace cbir {

/// relevant_retrieved / retrieved. Throws Error{invalid_argument} if retrieved == 0
/// or the counts are inconsistent.
double precision(int relevant_retrieved, int retrieved);

/// relevant_retrieved / relevant_in_db. Throws Error{invalid_argument} if relevant_in_db == 0.
double recall(int relevant_retrieved, int relevant_in_db);

// Counts are totals over the queries issued for the category; with one query
// they are that query's counts, with several the ratios equal the per-query
// means because `retrieved` and `relevant_in_db` are the same for every query.
struct EvalRow {
    std::string category;
    int relevant_retrieved = 0;
    int retrieved = 0;
    int relevant_in_db = 0;
    double precision = 0.0;
    double recall = 0.0;

    friend bool operator==(const EvalRow&, const EvalRow&) = default;
};

/// Builds a row with precision and recall derived from the counts.
EvalRow make_row(std::string category, int relevant_retrieved, int retrieved, int relevant_in_db);

enum class EvalMode { shaded, unshaded };
enum class QueryMode { per_category_first, all_queries_averaged };

std::string_view to_string(EvalMode mode);
std::string_view to_string(QueryMode mode);

struct EvalResult {
    int k = 12;
    EvalMode mode = EvalMode::unshaded;
    std::vector<EvalRow> rows; // one per category, ordered by name

    double mean_precision() const;
    double mean_recall() const;
};

inline constexpr int default_top_k = 12;

/// Ranks each query image against the index with the query itself excluded;
/// an image is relevant when it shares the query's category. relevant_in_db is
/// the category size (query included). The mode is taken from the index.
EvalResult run_experiment(const Index& ix, int k, QueryMode query_mode);

/// Writes `<out_dir>/results.csv` and `<out_dir>/report.html`, creating the
/// directory if needed. Output bytes depend only on the inputs.
void emit_report(const EvalResult& shaded, const EvalResult& unshaded, const std::filesystem::path& out_dir);

std::string report_csv(const EvalResult& shaded, const EvalResult& unshaded);
std::string report_html(const EvalResult& shaded, const EvalResult& unshaded);

/// Percentage with one decimal, e.g. 0.8333 -> "83.3%".
std::string format_percent(double ratio);

// Synthetic corpus: five procedurally distinct categories of 14 images each.
inline constexpr int synth_categories = 5;
inline constexpr int synth_per_category = 14;
inline constexpr int synth_size = 64;

const std::vector<std::string>& synth_category_names();

/// Renders image `index` of `category` for a given seed (mt19937_64 driven).
RgbImage synth_image(int category, int index, std::uint64_t seed);

/// Writes `<out_dir>/<category>/<nn>.ppm`; identical seeds give identical bytes.
void generate_synthetic_corpus(const std::filesystem::path& out_dir, std::uint64_t seed);

}  // namespace cbir
