#include "frachardy/report.hpp"

#include <ostream>

namespace frachardy {

using nlohmann::json;

json report_to_json(const VerificationReport& r) {
    json j;
    j["schema"] = kReportSchema;
    j["kind"] = r.kind;
    j["trial_id"] = r.trial_id;
    j["n"] = r.n;
    j["alpha"] = r.alpha;
    j["p"] = r.p;
    j["quotient"] = r.quotient;
    j["constant"] = r.constant;
    j["margin"] = r.margin;
    j["tol"] = r.tol;
    j["pass"] = r.pass;
    j["h"] = r.h;
    j["sphere_resolution"] = r.sphere_resolution;
    j["energy_error_estimate"] = r.energy_error_estimate;
    return j;
}

void write_jsonl(const std::vector<VerificationReport>& reports, std::ostream& out) {
    for (const auto& r : reports) out << report_to_json(r).dump() << "\n";
}

void write_report_csv(const std::vector<VerificationReport>& reports, std::ostream& out) {
    out << "# schema=frachardy-report-csv-v1\n";
    out << "kind,trial_id,n,alpha,p,quotient,constant,margin,tol,pass,h,sphere_resolution,"
           "energy_error_estimate\n";
    out.precision(17);
    for (const auto& r : reports) {
        out << r.kind << ',' << r.trial_id << ',' << r.n << ',' << r.alpha << ',' << r.p << ','
            << r.quotient << ',' << r.constant << ',' << r.margin << ',' << r.tol << ','
            << (r.pass ? 1 : 0) << ',' << r.h << ',' << r.sphere_resolution << ','
            << r.energy_error_estimate << "\n";
    }
}

} // namespace frachardy
