#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace catenary {

// Built-in self-check suite: closed-form residuals, trace/closed-form
// agreement, Clairaut analysis, cross-oracle checks and the isometry property.

struct Threshold {
    std::string_view name;
    double value;
};

// The single table of pass thresholds, printed with every report.
[[nodiscard]] const std::vector<Threshold>& validation_thresholds();
[[nodiscard]] double threshold(std::string_view name);

struct ValidationItem {
    int group = 0;
    std::string name;
    double value = 0.0;
    std::string threshold;  // key into validation_thresholds()
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationItem> items;
    bool passed = true;
};

// Runs every group (concurrently when parallel is set). Item order does not
// depend on scheduling.
[[nodiscard]] ValidationReport run_validation(bool parallel = true);

[[nodiscard]] std::string to_json(const ValidationReport& report);

}  // namespace catenary
