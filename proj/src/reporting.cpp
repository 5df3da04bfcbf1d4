#include "maxwell2d/reporting.hpp"

#include <cstdio>
#include <ctime>
#include <ostream>

#include <json.hpp>

namespace maxwell2d {

namespace {

std::string num(double v, const char* fmt = "%.12g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

}  // namespace

void write_convergence_csv(const ConvergenceReport& rep, std::ostream& out) {
    out << "level,nel,nno,theta1,ratio1,r1,theta2,ratio2,r2\n";
    for (const ConvergenceRow& r : rep.rows) {
        out << r.level << ',' << r.nel << ',' << r.nno << ',' << num(r.theta1) << ',';
        if (r.has_rates)
            out << num(r.ratio1) << ',' << num(r.r1);
        else
            out << ',';
        out << ',' << num(r.theta2) << ',';
        if (r.has_rates)
            out << num(r.ratio2) << ',' << num(r.r2);
        else
            out << ',';
        out << '\n';
    }
}

void write_convergence_markdown(const ConvergenceReport& rep, std::ostream& out) {
    out << "| l | nel | nno | theta1 | ratio1 | r1 | theta2 | ratio2 | r2 |\n";
    out << "|---|-----|-----|--------|--------|----|--------|--------|----|\n";
    for (const ConvergenceRow& r : rep.rows) {
        out << "| " << r.level << " | " << r.nel << " | " << r.nno << " | "
            << num(r.theta1, "%.6f") << " | ";
        if (r.has_rates)
            out << num(r.ratio1, "%.6f") << " | " << num(r.r1, "%.2f") << " | ";
        else
            out << "- | - | ";
        out << num(r.theta2, "%.6f") << " | ";
        if (r.has_rates)
            out << num(r.ratio2, "%.6f") << " | " << num(r.r2, "%.2f") << " |\n";
        else
            out << "- | - |\n";
    }
}

void write_convergence_json(const ConvergenceReport& rep, std::ostream& out) {
    nlohmann::json j;
    j["m"] = rep.m;
    j["tau"] = rep.tau;
    j["T"] = rep.T;
    j["timestamp"] = rep.timestamp;
    j["config_hash"] = rep.config_hash;
    j["rows"] = nlohmann::json::array();
    for (const ConvergenceRow& r : rep.rows) {
        nlohmann::json row;
        row["level"] = r.level;
        row["nel"] = r.nel;
        row["nno"] = r.nno;
        row["theta1"] = r.theta1;
        row["theta2"] = r.theta2;
        if (r.has_rates) {
            row["ratio1"] = r.ratio1;
            row["r1"] = r.r1;
            row["ratio2"] = r.ratio2;
            row["r2"] = r.r2;
        }
        j["rows"].push_back(row);
    }
    out << j.dump(2) << '\n';
}

void write_energy_csv(const std::vector<EnergySample>& samples, std::ostream& out) {
    out << "t,dtE_eps,E_sigma,gradE,divE_epsm1,total\n";
    for (const EnergySample& s : samples) {
        out << num(s.t) << ',' << num(s.dtE_eps) << ',' << num(s.E_sigma) << ',' << num(s.gradE)
            << ',' << num(s.divE_epsm1) << ',' << num(s.total) << '\n';
    }
}

void write_snapshot_csv(const Mesh& mesh, const VectorField& field, std::ostream& out) {
    out << "x,y,E1,E2\n";
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        const Vec2 p = mesh.vertices[static_cast<std::size_t>(i)];
        out << num(p.x) << ',' << num(p.y) << ',' << num(field.comp(i, 0)) << ','
            << num(field.comp(i, 1)) << '\n';
    }
}

void write_cfl_csv(const std::vector<CflRow>& rows, std::ostream& out) {
    out << "level,h,formula_bound,empirical_threshold\n";
    for (const CflRow& r : rows) {
        out << r.level << ',' << num(r.h) << ',' << num(r.formula_bound) << ','
            << num(r.empirical_threshold) << '\n';
    }
}

std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

}  // namespace maxwell2d
