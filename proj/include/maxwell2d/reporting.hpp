#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "maxwell2d/analysis.hpp"

namespace maxwell2d {

// CSV columns: level,nel,nno,theta1,ratio1,r1,theta2,ratio2,r2 (rate fields
// empty on the first row). Output is deterministic for identical inputs.
void write_convergence_csv(const ConvergenceReport& rep, std::ostream& out);

// Markdown table mirroring the convergence-study layout for eyeball diffs.
void write_convergence_markdown(const ConvergenceReport& rep, std::ostream& out);

void write_convergence_json(const ConvergenceReport& rep, std::ostream& out);

void write_energy_csv(const std::vector<EnergySample>& samples, std::ostream& out);

void write_snapshot_csv(const Mesh& mesh, const VectorField& field, std::ostream& out);

struct CflRow {
    int level = 0;
    double h = 0.0;
    double formula_bound = 0.0;       // h / (C sqrt(1 + 3 ||eps-1||_inf))
    double empirical_threshold = 0.0; // bisection estimate
};

void write_cfl_csv(const std::vector<CflRow>& rows, std::ostream& out);

std::string iso8601_utc_now();

}  // namespace maxwell2d
