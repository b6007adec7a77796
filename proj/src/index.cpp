#include "cbir/index.hpp"

#include "cbir/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <fstream>
#include <iterator>
#include <limits>
#include <thread>

namespace cbir {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

bool is_supported_image(const fs::path& path)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".ppm";
}

std::vector<CorpusFile> scan_corpus(const fs::path& root)
{
    std::error_code ec;
    if (!fs::is_directory(root, ec))
        throw Error(ErrorCode::io, "corpus root is not a readable directory: " + root.string());

    const std::string root_name = fs::weakly_canonical(root, ec).filename().string();
    std::vector<CorpusFile> files;
    try {
        for (const auto& item : fs::recursive_directory_iterator(root)) {
            if (!item.is_regular_file() || !is_supported_image(item.path()))
                continue;
            const fs::path rel = item.path().lexically_relative(root);
            const std::string parent = rel.parent_path().filename().string();
            files.push_back({rel.generic_string(), parent.empty() ? root_name : parent});
        }
    } catch (const fs::filesystem_error& e) {
        throw Error(ErrorCode::io, std::string("scanning corpus: ") + e.what());
    }
    if (files.empty())
        throw Error(ErrorCode::empty_corpus, "no images found under " + root.string());
    std::sort(files.begin(), files.end(), [](const CorpusFile& a, const CorpusFile& b) { return a.path < b.path; });
    return files;
}

Index build_index(const fs::path& root, const std::optional<PhongParams>& phong, const ExtractionOptions& opts,
                  unsigned threads)
{
    opts.validate();
    if (phong)
        phong->validate();
    const auto files = scan_corpus(root);

    std::vector<IndexEntry> entries(files.size());
    std::vector<std::exception_ptr> failures(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) {
            try {
                const auto img = read_ppm(root / files[i].path);
                entries[i] = {files[i].path, files[i].category, extract_features(img, phong, opts)};
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, files.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }

    // Report the first failure in path order so the diagnostic is stable.
    for (const auto& failure : failures)
        if (failure)
            std::rethrow_exception(failure);

    Index ix;
    ix.phong = phong;
    ix.extraction = opts;
    ix.normalizer = fit_normalizer(entries);
    ix.entries = std::move(entries);
    return ix;
}

void check_index(const Index& ix)
{
    auto fail = [](const std::string& what) { throw Error(ErrorCode::invariant, what); };
    if (ix.entries.empty())
        fail("index has no entries");
    for (std::size_t i = 0; i < ix.entries.size(); ++i) {
        const auto& e = ix.entries[i];
        if (e.path.empty())
            fail("entry " + std::to_string(i) + " has an empty path");
        if (i > 0 && !(ix.entries[i - 1].path < e.path))
            fail("entries not sorted by unique path at '" + e.path + "'");
        if (const auto why = feature_violation(e.features, ix.extraction.levels); !why.empty())
            fail("entry '" + e.path + "': " + why);
    }
    if (fit_normalizer(ix.entries) != ix.normalizer)
        fail("normalizer does not match the extrema of the stored features");
}

namespace {

json vec3_to_json(Vec3 v)
{
    return json::array({v.x, v.y, v.z});
}

json features_to_json(const FeatureVector& v)
{
    return json(std::vector<double>(v.begin(), v.end()));
}

class Reader {
public:
    [[noreturn]] static void schema(const std::string& where, const std::string& what)
    {
        throw Error(ErrorCode::schema, where + ": " + what);
    }

    static const json& field(const json& obj, const char* key, const std::string& where)
    {
        if (!obj.is_object())
            schema(where, "expected an object");
        const auto it = obj.find(key);
        if (it == obj.end())
            schema(where, std::string("missing field '") + key + "'");
        return *it;
    }

    static double number(const json& v, const std::string& where)
    {
        if (!v.is_number())
            schema(where, "expected a number");
        return v.get<double>();
    }

    static int integer(const json& v, const std::string& where)
    {
        if (!v.is_number_integer())
            schema(where, "expected an integer");
        const auto value = v.get<long long>();
        if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max())
            schema(where, "integer out of range");
        return static_cast<int>(value);
    }

    static std::string string(const json& v, const std::string& where)
    {
        if (!v.is_string())
            schema(where, "expected a string");
        return v.get<std::string>();
    }

    template <std::size_t N>
    static std::array<double, N> numbers(const json& v, const std::string& where)
    {
        if (!v.is_array() || v.size() != N)
            schema(where, "expected an array of " + std::to_string(N) + " numbers");
        std::array<double, N> out{};
        for (std::size_t i = 0; i < N; ++i)
            out[i] = number(v[i], where + "[" + std::to_string(i) + "]");
        return out;
    }

    static Vec3 vec3(const json& v, const std::string& where)
    {
        const auto a = numbers<3>(v, where);
        return {a[0], a[1], a[2]};
    }
};

}  // namespace

std::string serialize_index(const Index& ix)
{
    json doc;
    doc["version"] = ix.version;
    if (ix.phong) {
        const auto& p = *ix.phong;
        doc["phong"] = {{"ka", p.ka},
                        {"kd", p.kd},
                        {"ks", p.ks},
                        {"ia", p.ia},
                        {"il", p.il},
                        {"ns", p.ns},
                        {"light_dir", vec3_to_json(p.light_dir)},
                        {"view_dir", vec3_to_json(p.view_dir)},
                        {"height_scale", p.height_scale}};
    } else {
        doc["phong"] = nullptr;
    }
    doc["extraction_opts"] = {{"levels", ix.extraction.levels},
                              {"offset", {{"dx", ix.extraction.offset.dx}, {"dy", ix.extraction.offset.dy}}},
                              {"edge_threshold", ix.extraction.edge_threshold}};
    doc["normalizer"] = {{"mins", features_to_json(ix.normalizer.mins)},
                         {"maxs", features_to_json(ix.normalizer.maxs)}};
    json entries = json::array();
    for (const auto& e : ix.entries)
        entries.push_back({{"path", e.path}, {"category", e.category}, {"features", features_to_json(e.features)}});
    doc["entries"] = std::move(entries);
    return doc.dump(1) + "\n";
}

Index parse_index(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::schema, std::string("malformed index document: ") + e.what());
    }

    using R = Reader;
    Index ix;
    ix.version = R::integer(R::field(doc, "version", "index"), "version");
    if (ix.version != index_format_version)
        throw Error(ErrorCode::version_mismatch, "unsupported index version " + std::to_string(ix.version) +
                                                     " (expected " + std::to_string(index_format_version) + ")");

    const auto& phong = R::field(doc, "phong", "index");
    if (!phong.is_null()) {
        PhongParams p;
        p.ka = R::number(R::field(phong, "ka", "phong"), "phong.ka");
        p.kd = R::number(R::field(phong, "kd", "phong"), "phong.kd");
        p.ks = R::number(R::field(phong, "ks", "phong"), "phong.ks");
        p.ia = R::number(R::field(phong, "ia", "phong"), "phong.ia");
        p.il = R::number(R::field(phong, "il", "phong"), "phong.il");
        p.ns = R::number(R::field(phong, "ns", "phong"), "phong.ns");
        p.light_dir = R::vec3(R::field(phong, "light_dir", "phong"), "phong.light_dir");
        p.view_dir = R::vec3(R::field(phong, "view_dir", "phong"), "phong.view_dir");
        p.height_scale = R::number(R::field(phong, "height_scale", "phong"), "phong.height_scale");
        try {
            p.validate();
        } catch (const Error& e) {
            throw Error(ErrorCode::invariant, e.message());
        }
        ix.phong = p;
    }

    const auto& opts = R::field(doc, "extraction_opts", "index");
    ix.extraction.levels = R::integer(R::field(opts, "levels", "extraction_opts"), "extraction_opts.levels");
    const auto& offset = R::field(opts, "offset", "extraction_opts");
    ix.extraction.offset.dx = R::integer(R::field(offset, "dx", "extraction_opts.offset"), "extraction_opts.offset.dx");
    ix.extraction.offset.dy = R::integer(R::field(offset, "dy", "extraction_opts.offset"), "extraction_opts.offset.dy");
    ix.extraction.edge_threshold =
        R::number(R::field(opts, "edge_threshold", "extraction_opts"), "extraction_opts.edge_threshold");
    try {
        ix.extraction.validate();
    } catch (const Error& e) {
        throw Error(ErrorCode::invariant, e.message());
    }

    const auto& norm = R::field(doc, "normalizer", "index");
    ix.normalizer.mins = R::numbers<feature_count>(R::field(norm, "mins", "normalizer"), "normalizer.mins");
    ix.normalizer.maxs = R::numbers<feature_count>(R::field(norm, "maxs", "normalizer"), "normalizer.maxs");

    const auto& entries = R::field(doc, "entries", "index");
    if (!entries.is_array())
        R::schema("entries", "expected an array");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string where = "entries[" + std::to_string(i) + "]";
        const auto& e = entries[i];
        ix.entries.push_back({R::string(R::field(e, "path", where), where + ".path"),
                              R::string(R::field(e, "category", where), where + ".category"),
                              R::numbers<feature_count>(R::field(e, "features", where), where + ".features")});
    }

    check_index(ix);
    return ix;
}

void save_index(const Index& ix, const fs::path& path)
{
    const auto text = serialize_index(ix);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::io, "cannot write index " + path.string());
    out << text;
    if (!out)
        throw Error(ErrorCode::io, "short write to " + path.string());
}

Index load_index(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::io, "cannot open index " + path.string());
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return parse_index(text);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.message());
    }
}

}  // namespace cbir
