#include "hz/report/document.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace hz::report {

std::string fmt17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string render_csv(const ReportDocument& doc) {
    std::string out;
    for (std::size_t c = 0; c < doc.columns.size(); ++c) {
        if (c > 0) out += ',';
        out += doc.columns[c];
    }
    out += '\n';
    for (const auto& row : doc.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += row[c];
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const ReportDocument& doc) {
    // The hash is printed in hex so consumers never round it through a
    // 53-bit float.
    char hash[19];
    std::snprintf(hash, sizeof(hash), "0x%016llx",
                  static_cast<unsigned long long>(doc.config_hash));
    nlohmann::ordered_json j;
    j["metadata"] = {{"scenario", doc.scenario},
                     {"version", doc.version},
                     {"config_hash", std::string(hash)}};
    j["records"] = nlohmann::ordered_json::array();
    for (const auto& row : doc.rows) {
        nlohmann::ordered_json rec;
        for (std::size_t c = 0; c < doc.columns.size() && c < row.size(); ++c)
            rec[doc.columns[c]] = row[c];
        j["records"].push_back(std::move(rec));
    }
    j["summary"] = {{"pass", doc.pass}, {"notes", doc.notes}};
    return j.dump(2) + "\n";
}

std::vector<std::string> write_report(const ReportDocument& doc,
                                      ReportFormat format,
                                      const std::string& directory,
                                      const std::string& basename) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(directory, ec);
    if (ec) throw IOFailure("cannot create output directory " + directory);

    auto write_file = [](const fs::path& path, const std::string& body) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IOFailure("cannot open " + path.string());
        out << body;
        if (!out) throw IOFailure("short write to " + path.string());
    };

    std::vector<std::string> written;
    const fs::path dir(directory);
    const std::string ext = format == ReportFormat::Csv ? ".csv" : ".json";
    const fs::path main_path = dir / (basename + ext);
    write_file(main_path,
               format == ReportFormat::Csv ? render_csv(doc) : render_json(doc));
    written.push_back(main_path.string());

    for (const auto& [suffix, body] : doc.companions) {
        const fs::path p = dir / (basename + suffix);
        write_file(p, body);
        written.push_back(p.string());
    }
    return written;
}

}  // namespace hz::report
