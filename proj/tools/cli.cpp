#include "cli.hpp"

#include "cbir/error.hpp"
#include "cbir/evaluation.hpp"
#include "cbir/index.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <ostream>

namespace cbir::cli {

namespace {

struct Config {
    PhongParams phong;
    ExtractionOptions extraction;
    bool use_phong = false;
    unsigned threads = 0;

    std::string root;
    std::string out;
    std::string index_path;
    std::string image_path;
    std::string shaded_index;
    std::string unshaded_index;
    std::string report_dir = "report";
    std::string format = "table";
    std::string query_mode = "first";
    int top = default_top_k;
    int tiled = 0;
    std::uint64_t seed = 42;
};

void add_phong_flags(CLI::App& cmd, Config& cfg)
{
    cmd.add_option("--ka", cfg.phong.ka, "Ambient reflectance")->capture_default_str();
    cmd.add_option("--kd", cfg.phong.kd, "Diffuse reflectance")->capture_default_str();
    cmd.add_option("--ks", cfg.phong.ks, "Specular reflectance")->capture_default_str();
    cmd.add_option("--ia", cfg.phong.ia, "Ambient light intensity")->capture_default_str();
    cmd.add_option("--il", cfg.phong.il, "Source light intensity")->capture_default_str();
    cmd.add_option("--ns", cfg.phong.ns, "Glossiness exponent (>= 1)")->capture_default_str();
    cmd.add_option("--height-scale", cfg.phong.height_scale, "Height of a full-white pixel")->capture_default_str();
}

std::string fixed6(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

int cmd_index(const Config& cfg, std::ostream& out)
{
    std::optional<PhongParams> phong;
    if (cfg.use_phong)
        phong = cfg.phong;
    const auto ix = build_index(cfg.root, phong, cfg.extraction, cfg.threads);
    save_index(ix, cfg.out);
    out << "indexed " << ix.entries.size() << " images (" << (phong ? "shaded" : "unshaded") << ") -> " << cfg.out
        << "\n";
    return 0;
}

int cmd_query(const Config& cfg, std::ostream& out)
{
    if (cfg.format != "table" && cfg.format != "csv" && cfg.format != "lines")
        throw Error(ErrorCode::invalid_argument, "unknown format '" + cfg.format + "' (table, csv, lines)");
    const auto ix = load_index(cfg.index_path);
    // Shade the query exactly as the indexed images were.
    const auto features = extract_features(read_ppm(cfg.image_path), ix.phong, ix.extraction);
    const auto results = rank(features, ix, cfg.top);

    if (cfg.format == "csv") {
        out << "rank,path,category,distance\n";
        for (std::size_t i = 0; i < results.size(); ++i)
            out << i + 1 << ',' << results[i].path << ',' << results[i].category << ',' << fixed6(results[i].distance)
                << '\n';
    } else if (cfg.format == "lines") {
        for (std::size_t i = 0; i < results.size(); ++i)
            out << i + 1 << '\t' << results[i].path << '\t' << results[i].category << '\t'
                << fixed6(results[i].distance) << '\n';
    } else {
        std::size_t path_w = 4, cat_w = 8;
        for (const auto& r : results) {
            path_w = std::max(path_w, r.path.size());
            cat_w = std::max(cat_w, r.category.size());
        }
        out << std::left << std::setw(5) << "rank" << "  " << std::setw(static_cast<int>(path_w)) << "path" << "  "
            << std::setw(static_cast<int>(cat_w)) << "category" << "  " << "distance\n";
        for (std::size_t i = 0; i < results.size(); ++i)
            out << std::left << std::setw(5) << i + 1 << "  " << std::setw(static_cast<int>(path_w)) << results[i].path
                << "  " << std::setw(static_cast<int>(cat_w)) << results[i].category << "  "
                << fixed6(results[i].distance) << '\n';
    }
    return 0;
}

void require_same_corpus(const Index& a, const Index& b)
{
    const bool same = std::equal(a.entries.begin(), a.entries.end(), b.entries.begin(), b.entries.end(),
                                 [](const IndexEntry& x, const IndexEntry& y) {
                                     return x.path == y.path && x.category == y.category;
                                 });
    if (!same)
        throw Error(ErrorCode::corpus_mismatch, "shaded and unshaded indices cover different images");
}

void print_result(std::ostream& out, const EvalResult& r)
{
    out << to_string(r.mode) << " (top " << r.k << ")\n";
    for (const auto& row : r.rows)
        out << "  " << std::left << std::setw(16) << row.category << std::right << std::setw(4)
            << row.relevant_retrieved << "  precision " << std::setw(6) << format_percent(row.precision)
            << "  recall " << std::setw(6) << format_percent(row.recall) << '\n';
    out << "  " << std::left << std::setw(16) << "mean" << "      precision " << std::right << std::setw(6)
        << format_percent(r.mean_precision()) << "  recall " << std::setw(6) << format_percent(r.mean_recall())
        << '\n';
}

int cmd_eval(const Config& cfg, std::ostream& out)
{
    QueryMode mode;
    if (cfg.query_mode == "first")
        mode = QueryMode::per_category_first;
    else if (cfg.query_mode == "all")
        mode = QueryMode::all_queries_averaged;
    else
        throw Error(ErrorCode::invalid_argument, "unknown query mode '" + cfg.query_mode + "' (first, all)");

    const auto shaded_ix = load_index(cfg.shaded_index);
    const auto unshaded_ix = load_index(cfg.unshaded_index);
    if (!shaded_ix.phong)
        throw Error(ErrorCode::invalid_argument, cfg.shaded_index + " was built without shading");
    if (unshaded_ix.phong)
        throw Error(ErrorCode::invalid_argument, cfg.unshaded_index + " was built with shading");
    require_same_corpus(shaded_ix, unshaded_ix);

    const auto shaded = run_experiment(shaded_ix, cfg.top, mode);
    const auto unshaded = run_experiment(unshaded_ix, cfg.top, mode);
    emit_report(shaded, unshaded, cfg.report_dir);
    print_result(out, shaded);
    print_result(out, unshaded);
    out << "report written to " << cfg.report_dir << "\n";
    return 0;
}

int cmd_shade(const Config& cfg, std::ostream& out)
{
    const auto img = read_ppm(cfg.image_path);
    const auto shaded = cfg.tiled != 0 ? shade_image_tiled(img, cfg.phong, cfg.tiled) : shade_image(img, cfg.phong);
    write_ppm(cfg.out, shaded);
    out << "wrote " << cfg.out << "\n";
    return 0;
}

int cmd_synth(const Config& cfg, std::ostream& out)
{
    generate_synthetic_corpus(cfg.out, cfg.seed);
    out << "wrote " << synth_categories * synth_per_category << " images to " << cfg.out << "\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Config cfg;
    CLI::App app{"Content-based image retrieval with optional Phong-shading preprocessing", "cbir"};
    app.require_subcommand(1);

    auto* index = app.add_subcommand("index", "Extract features for every image under a directory");
    index->add_option("root", cfg.root, "Corpus root (one sub-directory per category)")->required();
    index->add_option("--out", cfg.out, "Index file to write")->required();
    index->add_flag("--phong", cfg.use_phong, "Shade images before extracting features");
    add_phong_flags(*index, cfg);
    index->add_option("--levels", cfg.extraction.levels, "Gray levels of the co-occurrence matrix")->capture_default_str();
    index->add_option("--offset-dx", cfg.extraction.offset.dx, "Co-occurrence neighbour x offset")->capture_default_str();
    index->add_option("--offset-dy", cfg.extraction.offset.dy, "Co-occurrence neighbour y offset")->capture_default_str();
    index->add_option("--edge-threshold", cfg.extraction.edge_threshold, "Sobel magnitude counted as an edge")
        ->capture_default_str();
    index->add_option("--threads", cfg.threads, "Extraction threads (0 = all cores)")->capture_default_str();

    auto* query = app.add_subcommand("query", "Rank indexed images against a query image");
    query->add_option("index", cfg.index_path, "Index file")->required();
    query->add_option("image", cfg.image_path, "Query image (PPM)")->required();
    query->add_option("--top", cfg.top, "Number of results")->capture_default_str();
    query->add_option("--format", cfg.format, "table, csv or lines")->capture_default_str();

    auto* eval = app.add_subcommand("eval", "Compare precision/recall of a shaded and an unshaded index");
    eval->add_option("shaded", cfg.shaded_index, "Index built with --phong")->required();
    eval->add_option("unshaded", cfg.unshaded_index, "Index built without --phong")->required();
    eval->add_option("--top", cfg.top, "Results per query")->capture_default_str();
    eval->add_option("--report-dir", cfg.report_dir, "Directory for results.csv and report.html")->capture_default_str();
    eval->add_option("--query-mode", cfg.query_mode, "first: first image per category; all: every image")
        ->capture_default_str();

    auto* shade = app.add_subcommand("shade", "Write the Phong-shaded version of an image");
    shade->add_option("image", cfg.image_path, "Input image (PPM)")->required();
    shade->add_option("--out", cfg.out, "Output PPM")->required();
    shade->add_option("--tiled", cfg.tiled, "Interpolate normals over tiles of this size (>= 2)");
    add_phong_flags(*shade, cfg);

    auto* synth = app.add_subcommand("synth", "Generate the 5 x 14 synthetic corpus");
    synth->add_option("out", cfg.out, "Output directory")->required();
    synth->add_option("--seed", cfg.seed, "Generator seed")->capture_default_str();

    try {
        std::vector<std::string> rest(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (index->parsed())
            return cmd_index(cfg, out);
        if (query->parsed())
            return cmd_query(cfg, out);
        if (eval->parsed())
            return cmd_eval(cfg, out);
        if (shade->parsed())
            return cmd_shade(cfg, out);
        if (synth->parsed())
            return cmd_synth(cfg, out);
    } catch (const std::exception& e) {
        err << "cbir: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace cbir::cli
