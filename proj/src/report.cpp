#include "chronovec/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

#include "chronovec/util.hpp"

namespace chronovec {

namespace {

std::string cell_text(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    if (v.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", v.get<double>());
        return buf;
    }
    return v.dump();
}

// Renders an array of flat objects as aligned columns.
std::string table_text(const nlohmann::json& items) {
    std::vector<std::string> columns;
    for (const auto& item : items)
        for (auto it = item.begin(); it != item.end(); ++it)
            if (std::find(columns.begin(), columns.end(), it.key()) == columns.end() &&
                !it.value().is_structured())
                columns.push_back(it.key());
    std::vector<std::vector<std::string>> rows;
    rows.push_back(columns);
    for (const auto& item : items) {
        std::vector<std::string> row;
        for (const auto& c : columns) row.push_back(item.contains(c) ? cell_text(item[c]) : "");
        rows.push_back(row);
    }
    std::vector<std::size_t> width(columns.size(), 0);
    for (const auto& row : rows)
        for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
    std::ostringstream os;
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j)
            os << row[j] << std::string(width[j] - row[j].size() + 2, ' ');
        os << "\n";
    }
    return os.str();
}

}  // namespace

std::string EvalReport::to_json_text() const {
    nlohmann::json j;
    j["task"] = task;
    j["params"] = params;
    j["aggregates"] = aggregates;
    j["items"] = items;
    return j.dump(2) + "\n";
}

std::string EvalReport::to_text() const {
    std::ostringstream os;
    os << "task: " << task << "\n";
    os << "params:\n";
    for (auto it = params.begin(); it != params.end(); ++it)
        os << "  " << it.key() << " = " << cell_text(it.value()) << "\n";
    os << "aggregates:\n";
    for (auto it = aggregates.begin(); it != aggregates.end(); ++it)
        os << "  " << it.key() << " = " << cell_text(it.value()) << "\n";
    if (!items.empty()) {
        os << "items:\n";
        os << table_text(items);
    }
    return os.str();
}

std::string smoothness_csv(const EvalReport& report) {
    if (report.task != "smoothness") throw ValidationError("csv rendering is for smoothness reports");
    std::vector<std::string> probes = report.params.at("probes").get<std::vector<std::string>>();
    std::ostringstream os;
    os << "method,overlap_pct";
    for (const auto& w : probes) os << ',' << w;
    os << ",mean\n";
    char buf[32];
    for (const auto& item : report.items) {
        os << item.at("method").get<std::string>() << ',';
        std::snprintf(buf, sizeof(buf), "%g", item.at("overlap_pct").get<double>());
        os << buf;
        for (const auto& w : probes) {
            std::snprintf(buf, sizeof(buf), "%.6g", item.at("cosines").at(w).get<double>());
            os << ',' << buf;
        }
        std::snprintf(buf, sizeof(buf), "%.6g", item.at("mean").get<double>());
        os << ',' << buf << "\n";
    }
    return os.str();
}

std::string smoothness_svg(const EvalReport& report) {
    if (report.task != "smoothness") throw ValidationError("svg rendering is for smoothness reports");
    static const char* palette[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#f39c12", "#16a085"};
    const int W = 640, H = 440;
    double ymin = 1.0, ymax = 0.0, xmin = 1e300, xmax = -1e300;
    std::vector<std::string> methods = report.params.at("methods").get<std::vector<std::string>>();
    for (const auto& m : methods) {
        const auto& agg = report.aggregates.at(m);
        for (double v : agg.at("mean_cosine").get<std::vector<double>>())
            ymin = std::min(ymin, v), ymax = std::max(ymax, v);
        for (double v : agg.at("overlap_pct").get<std::vector<double>>())
            xmin = std::min(xmin, v), xmax = std::max(xmax, v);
    }
    ymin = std::max(0.0, ymin - 0.05);
    ymax = std::min(1.0, ymax + 0.05);
    if (ymax <= ymin) ymax = ymin + 1e-6;
    auto sx = [&](double x) { return 60 + (x - xmin) / (xmax - xmin) * (W - 100); };
    auto sy = [&](double y) { return H - 50 - (y - ymin) / (ymax - ymin) * (H - 90); };

    char buf[256];
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) +
                      "\" height=\"" + std::to_string(H) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"60\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"#999\"/>\n"
                  "<line x1=\"60\" y1=\"40\" x2=\"60\" y2=\"%d\" stroke=\"#999\"/>\n",
                  H - 50, W - 40, H - 50, H - 50);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" font-size=\"12\" fill=\"#333\">context overlap %%</text>\n"
                  "<text x=\"12\" y=\"32\" font-size=\"12\" fill=\"#333\">mean cosine</text>\n",
                  W / 2 - 50, H - 16);
    svg += buf;
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        const auto& agg = report.aggregates.at(methods[mi]);
        auto xs = agg.at("overlap_pct").get<std::vector<double>>();
        auto ys = agg.at("mean_cosine").get<std::vector<double>>();
        std::string path;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%s%.2f,%.2f", path.empty() ? "" : " ", sx(xs[i]), sy(ys[i]));
            path += buf;
        }
        const char* color = palette[mi % 6];
        svg += "<polyline points=\"" + path + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n",
                          sx(xs[i]), sy(ys[i]), color);
            svg += buf;
        }
        std::snprintf(buf, sizeof(buf),
                      "<rect x=\"%d\" y=\"%d\" width=\"12\" height=\"12\" fill=\"%s\"/>"
                      "<text x=\"%d\" y=\"%d\" font-size=\"12\" fill=\"#333\">%s</text>\n",
                      W - 150, 40 + static_cast<int>(mi) * 20, color, W - 132,
                      50 + static_cast<int>(mi) * 20, methods[mi].c_str());
        svg += buf;
    }
    // x tick labels at the grid points
    {
        const auto& agg = report.aggregates.at(methods[0]);
        for (double x : agg.at("overlap_pct").get<std::vector<double>>()) {
            std::snprintf(buf, sizeof(buf),
                          "<text x=\"%.2f\" y=\"%d\" font-size=\"11\" fill=\"#333\">%g</text>\n",
                          sx(x) - 8, H - 34, x);
            svg += buf;
        }
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace chronovec
