#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hz/errors.hpp"

namespace hz::report {

class IOFailure : public Error {
public:
    explicit IOFailure(const std::string& what) : Error(what) {}
};

// Fixed 17-significant-digit formatting; every number in a report goes
// through this, so CSV and JSON bodies agree byte for byte across runs.
std::string fmt17(double value);

std::uint64_t fnv1a(const std::string& text);

// Flat scenario report: one record schema per scenario, stable column
// order, preformatted cells. Plot-data companions are written alongside
// the main files.
struct ReportDocument {
    std::string scenario;
    std::string version;
    std::uint64_t config_hash = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    bool pass = false;
    std::vector<std::string> notes;
    // suffix (appended to the basename) -> file body
    std::vector<std::pair<std::string, std::string>> companions;
};

std::string render_csv(const ReportDocument& doc);
std::string render_json(const ReportDocument& doc);

enum class ReportFormat { Csv, Json };

// Writes <dir>/<basename>.<ext> plus all companions; returns the paths.
std::vector<std::string> write_report(const ReportDocument& doc,
                                      ReportFormat format,
                                      const std::string& directory,
                                      const std::string& basename);

}  // namespace hz::report
