#include "sgcov/curve.hpp"

#include <cstdio>
#include <sstream>

namespace sgcov::cli {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void CoverageCurve::add_meta(const std::string& key, double value) {
    add_meta(key, format_value(value));
}

void write_csv(const CoverageCurve& curve, std::ostream& os) {
    for (const auto& [k, v] : curve.metadata) os << "# " << k << "=" << v << "\n";
    os << "axis,axis_value,analytic,lower_bound,mc_mean,mc_stderr,flags\n";
    auto cell = [](const std::optional<double>& v) { return v ? format_value(*v) : ""; };
    for (const auto& r : curve.rows) {
        os << curve.axis << ',' << format_value(r.axis_value) << ',' << cell(r.analytic) << ','
           << cell(r.lower_bound) << ',' << cell(r.mc_mean) << ',' << cell(r.mc_stderr) << ','
           << r.flags << "\n";
    }
}

std::string to_csv(const CoverageCurve& curve) {
    std::ostringstream ss;
    write_csv(curve, ss);
    return ss.str();
}

}  // namespace sgcov::cli
