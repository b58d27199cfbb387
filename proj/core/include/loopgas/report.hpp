#pragma once

#include <string>
#include <vector>

namespace loopgas {

/// One structured validation/estimation record.
struct CheckRecord {
    std::string check;    // machine-readable check name
    std::string ref;      // stable identifier of the validated relation
    std::string source;   // "mc" or "oracle"
    double estimate = 0.0;
    double target = 0.0;  // bound or expected value
    double std_error = 0.0;
    bool pass = false;
    std::string details;
};

/// Renders records as tab-delimited text (one line per record, header first).
std::string render_delimited(const std::vector<CheckRecord>& records);

/// Renders records as JSON lines.
std::string render_jsonl(const std::vector<CheckRecord>& records);

}  // namespace loopgas
