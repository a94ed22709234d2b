#pragma once

#include <iosfwd>
#include <string>

#include "spincat/grid.hpp"

namespace spincat {

/// 17 significant digits, '.' separator, independent of the global locale.
/// NaN renders as "nan".
std::string format_double(double v);

/// A `# meta: <json>` comment line, then the header
/// q1,p1,q2,p2,W,W2,I,budget and one row per record.
void write_csv(const SweepResult& result, std::ostream& out);

/// {"meta": {...}, "records": [{"q1": ..., ..., "budget": ...}, ...]}.
/// NaN fields are written as null.
void write_json(const SweepResult& result, std::ostream& out);

SweepResult read_csv(std::istream& in);
SweepResult read_json(std::istream& in);

inline constexpr const char* kCsvHeader = "q1,p1,q2,p2,W,W2,I,budget";

}  // namespace spincat
