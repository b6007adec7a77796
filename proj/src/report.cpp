#include "cbir/evaluation.hpp"

#include "cbir/error.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cbir {

namespace {

std::string shortest(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string html_escape(const std::string& s)
{
    std::string out;
    for (const char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

void check_comparable(const EvalResult& shaded, const EvalResult& unshaded)
{
    if (shaded.rows.empty() || unshaded.rows.empty())
        throw Error(ErrorCode::invalid_argument, "report needs at least one category");
    if (shaded.k != unshaded.k)
        throw Error(ErrorCode::invalid_argument, "shaded and unshaded results use different k");
    if (shaded.rows.size() != unshaded.rows.size())
        throw Error(ErrorCode::invalid_argument, "shaded and unshaded results cover different categories");
    for (std::size_t i = 0; i < shaded.rows.size(); ++i)
        if (shaded.rows[i].category != unshaded.rows[i].category)
            throw Error(ErrorCode::invalid_argument, "shaded and unshaded results cover different categories");
}

void html_table(std::ostringstream& out, const std::string& title, const EvalResult& r)
{
    out << "<table>\n<caption>" << html_escape(title) << "</caption>\n"
        << "<tr><th>Category</th><th>Relevant retrieved</th><th>Retrieved</th><th>Relevant in DB</th>"
        << "<th>Precision</th><th>Recall</th></tr>\n";
    for (const auto& row : r.rows) {
        out << "<tr><td>" << html_escape(row.category) << "</td><td>" << row.relevant_retrieved << "</td><td>"
            << row.retrieved << "</td><td>" << row.relevant_in_db << "</td><td>" << format_percent(row.precision)
            << "</td><td>" << format_percent(row.recall) << "</td></tr>\n";
    }
    out << "<tr class=\"mean\"><td>mean</td><td></td><td></td><td></td><td>" << format_percent(r.mean_precision())
        << "</td><td>" << format_percent(r.mean_recall()) << "</td></tr>\n</table>\n";
}

void html_bars(std::ostringstream& out, const std::string& title, const EvalResult& shaded,
               const EvalResult& unshaded, double EvalRow::*metric)
{
    out << "<div class=\"chart\"><h2>" << html_escape(title) << "</h2>\n";
    for (std::size_t i = 0; i < shaded.rows.size(); ++i) {
        const double s = shaded.rows[i].*metric;
        const double u = unshaded.rows[i].*metric;
        out << "<div class=\"group\"><div class=\"label\">" << html_escape(shaded.rows[i].category) << "</div>\n"
            << "<div class=\"bar shaded\" style=\"width:" << format_percent(s) << "\">" << format_percent(s)
            << "</div>\n"
            << "<div class=\"bar unshaded\" style=\"width:" << format_percent(u) << "\">" << format_percent(u)
            << "</div></div>\n";
    }
    out << "</div>\n";
}

}  // namespace

std::string format_percent(double ratio)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", ratio * 100.0);
    return buf;
}

std::string report_csv(const EvalResult& shaded, const EvalResult& unshaded)
{
    check_comparable(shaded, unshaded);
    std::ostringstream out;
    out << "category,mode,relevant_retrieved,retrieved,relevant_in_db,precision,recall\n";
    for (const auto* r : {&shaded, &unshaded}) {
        for (const auto& row : r->rows) {
            out << csv_field(row.category) << ',' << to_string(r->mode) << ',' << row.relevant_retrieved << ','
                << row.retrieved << ',' << row.relevant_in_db << ',' << shortest(row.precision) << ','
                << shortest(row.recall) << '\n';
        }
    }
    return out.str();
}

std::string report_html(const EvalResult& shaded, const EvalResult& unshaded)
{
    check_comparable(shaded, unshaded);
    std::ostringstream out;
    out << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
        << "<title>Retrieval precision and recall: shaded vs unshaded</title>\n<style>\n"
        << "body{font-family:sans-serif;margin:2em}\n"
        << ".tables{display:flex;gap:2em;flex-wrap:wrap}\n"
        << "table{border-collapse:collapse}\n"
        << "caption{font-weight:bold;margin-bottom:.5em}\n"
        << "td,th{border:1px solid #999;padding:.25em .6em;text-align:right}\n"
        << "td:first-child{text-align:left}\n"
        << "tr.mean td{font-weight:bold}\n"
        << ".chart{margin-top:2em;max-width:40em}\n"
        << ".group{margin:.4em 0}\n"
        << ".bar{color:#fff;font-size:.8em;padding:1px 4px;margin:1px 0;white-space:nowrap;min-width:2.5em}\n"
        << ".shaded{background:#c0504d}\n"
        << ".unshaded{background:#4f81bd}\n"
        << "</style>\n</head>\n<body>\n"
        << "<h1>Retrieval precision and recall</h1>\n"
        << "<p>Top " << shaded.k << " results per query, query excluded from its own results.</p>\n"
        << "<div class=\"tables\">\n";
    html_table(out, "With Phong shading", shaded);
    html_table(out, "Without Phong shading", unshaded);
    out << "</div>\n<p><span class=\"bar shaded\">shaded</span> <span class=\"bar unshaded\">unshaded</span></p>\n";
    html_bars(out, "Precision", shaded, unshaded, &EvalRow::precision);
    html_bars(out, "Recall", shaded, unshaded, &EvalRow::recall);
    out << "</body>\n</html>\n";
    return out.str();
}

void emit_report(const EvalResult& shaded, const EvalResult& unshaded, const std::filesystem::path& out_dir)
{
    const auto csv = report_csv(shaded, unshaded);
    const auto html = report_html(shaded, unshaded);

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw Error(ErrorCode::io, "cannot create report directory " + out_dir.string() + ": " + ec.message());
    for (const auto& [name, body] : {std::pair{"results.csv", &csv}, std::pair{"report.html", &html}}) {
        const auto path = out_dir / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorCode::io, "cannot write " + path.string());
        out << *body;
        if (!out)
            throw Error(ErrorCode::io, "short write to " + path.string());
    }
}

}  // namespace cbir
