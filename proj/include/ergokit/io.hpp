// io.hpp: JSON problem and schedule files, CSV number formatting

#pragma once

#include "ergokit/battery.hpp"
#include "ergokit/protocol.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ergokit::io {

// {"energies": [...], "state": {"populations": [...]} | {"matrix": {"re": [[...]], "im": [[...]]}},
//  "labels": [...]}   (labels optional)
struct Problem {
    BatterySpec battery;
    QuantumState state;
    std::vector<std::string> labels;
};

// All parse_* functions throw ParseError with a field path or line/column.
Problem parse_problem(std::string_view json_text);
Problem load_problem(const std::string& path);

// [{"duration": t, "control": {"re": [[...]], "im": [[...]]}}, ...]
// Hermiticity is checked by ControlSchedule (NotHermitian), not here.
std::vector<ControlSegment> parse_schedule(std::string_view json_text);
std::vector<ControlSegment> load_schedule(const std::string& path);

// 17 significant digits, '.' decimal point, independent of the C locale.
std::string format_double(double value);

} // namespace ergokit::io
