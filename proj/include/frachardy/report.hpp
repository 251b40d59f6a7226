#ifndef FRACHARDY_REPORT_HPP
#define FRACHARDY_REPORT_HPP

#include "frachardy/hardy.hpp"

#include <json.hpp>

#include <iosfwd>
#include <vector>

namespace frachardy {

inline constexpr const char* kReportSchema = "frachardy-report-v1";

// Canonical JSON: alphabetically ordered keys, schema field included.
nlohmann::json report_to_json(const VerificationReport& r);

// One canonical JSON object per line.
void write_jsonl(const std::vector<VerificationReport>& reports, std::ostream& out);

// CSV summary table with a schema comment line.
void write_report_csv(const std::vector<VerificationReport>& reports, std::ostream& out);

} // namespace frachardy

#endif
