#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace sgcov::cli {

struct CurveRow {
    double axis_value = 0.0;
    std::optional<double> analytic;
    std::optional<double> lower_bound;
    std::optional<double> mc_mean;
    std::optional<double> mc_stderr;
    std::string flags;
};

// one CLI output unit: a swept curve plus the metadata needed to re-run it
struct CoverageCurve {
    std::string axis;
    std::vector<CurveRow> rows;
    std::vector<std::pair<std::string, std::string>> metadata;  // insertion-ordered

    void add_meta(const std::string& key, const std::string& value) {
        metadata.emplace_back(key, value);
    }
    void add_meta(const std::string& key, double value);
};

// 12-significant-digit numeric formatting shared by CSV and compare reports
std::string format_value(double v);

void write_csv(const CoverageCurve& curve, std::ostream& os);
std::string to_csv(const CoverageCurve& curve);

}  // namespace sgcov::cli
