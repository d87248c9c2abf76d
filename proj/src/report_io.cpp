#include "adtheta/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace adtheta {
namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.5e", v);
    return buf;
}

std::vector<const ReportRow*> sorted_rows(const ConvergenceReport& report) {
    std::vector<const ReportRow*> rows;
    rows.reserve(report.rows.size());
    for (const ReportRow& row : report.rows) rows.push_back(&row);
    std::stable_sort(rows.begin(), rows.end(), [](const ReportRow* a, const ReportRow* b) {
        if (a->scheme != b->scheme) return a->scheme < b->scheme;
        return a->n < b->n;
    });
    return rows;
}

}  // namespace

std::string render_csv(const ConvergenceReport& report) {
    const bool bsde = report.target == StudySpec::Target::bsde;
    std::string out = bsde ? "scheme,q,N,h,err_y,err_z,invalid_y,invalid_z\n"
                           : "scheme,q,N,h,err,invalid\n";
    for (const ReportRow* row : sorted_rows(report)) {
        if (row->failed) continue;
        out += row->scheme;
        out += ',' + std::to_string(row->q);
        out += ',' + std::to_string(row->n);
        out += ',' + sci(row->h);
        out += ',' + sci(row->err_y);
        if (bsde) out += ',' + sci(row->err_z);
        out += ',' + std::to_string(row->invalid_y);
        if (bsde) out += ',' + std::to_string(row->invalid_z);
        out += '\n';
    }
    return out;
}

std::string render_json(const ConvergenceReport& report) {
    const bool bsde = report.target == StudySpec::Target::bsde;
    nlohmann::ordered_json j;
    j["target"] = bsde ? "bsde" : "integral";
    if (bsde) {
        j["problem"] = report.problem_id;
    } else {
        j["reference"] = report.reference;
    }

    j["rows"] = nlohmann::ordered_json::array();
    for (const ReportRow* row : sorted_rows(report)) {
        if (row->failed) continue;
        nlohmann::ordered_json r;
        r["scheme"] = row->scheme;
        r["q"] = row->q;
        r["N"] = row->n;
        r["h"] = row->h;
        if (bsde) {
            r["err_y"] = row->err_y;
            r["err_z"] = row->err_z;
            r["invalid_y"] = row->invalid_y;
            r["invalid_z"] = row->invalid_z;
            r["excluded_from_fit_y"] = row->below_floor_y;
            r["excluded_from_fit_z"] = row->below_floor_z;
        } else {
            r["err"] = row->err_y;
            r["invalid"] = row->invalid_y;
            r["excluded_from_fit"] = row->below_floor_y;
        }
        j["rows"].push_back(std::move(r));
    }

    j["rates"] = nlohmann::ordered_json::array();
    for (const SchemeRates& rates : report.rates) {
        nlohmann::ordered_json r;
        r["scheme"] = rates.scheme;
        if (bsde) {
            r["cr_y"] = rates.cr_y ? nlohmann::ordered_json(*rates.cr_y)
                                   : nlohmann::ordered_json(nullptr);
            r["cr_z"] = rates.cr_z ? nlohmann::ordered_json(*rates.cr_z)
                                   : nlohmann::ordered_json(nullptr);
        } else {
            r["cr"] = rates.cr_y ? nlohmann::ordered_json(*rates.cr_y)
                                 : nlohmann::ordered_json(nullptr);
        }
        j["rates"].push_back(std::move(r));
    }

    j["failures"] = nlohmann::ordered_json::array();
    for (const ReportRow* row : sorted_rows(report)) {
        if (!row->failed) continue;
        nlohmann::ordered_json r;
        r["scheme"] = row->scheme;
        r["N"] = row->n;
        r["message"] = row->message;
        j["failures"].push_back(std::move(r));
    }
    return j.dump(2) + "\n";
}

void emit_report(const ConvergenceReport& report, ReportFormat format, const std::string& path) {
    const std::string text = format == ReportFormat::csv ? render_csv(report) : render_json(report);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open report file: " + path);
    out << text;
    if (!out) throw std::runtime_error("failed writing report file: " + path);
}

}  // namespace adtheta
