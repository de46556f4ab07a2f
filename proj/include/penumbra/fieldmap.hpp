#ifndef PENUMBRA_FIELDMAP_HPP
#define PENUMBRA_FIELDMAP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "penumbra/direct.hpp"
#include "penumbra/geometry.hpp"
#include "penumbra/regions.hpp"

namespace penumbra {

// Field-map front end: grids of FieldSample rows in stretched or physical
// coordinates, oracle-vs-asymptotics comparisons, zero tables, self tests.

enum class Method { Direct, Asymptotic, Both };
enum class OutputFormat { Csv, Json };
enum class CoordKind { Stretched, Physical };

struct AxisSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 1;

    void validate() const;
    double at(int i) const {
        return count == 1 ? start : start + (stop - start) * i / (count - 1.0);
    }
};

struct RunConfig {
    ProblemParams params{1.0e6, 1.0};
    AxisSpec axis1;  // sigma (stretched) or x (physical)
    AxisSpec axis2;  // nu (stretched) or y (physical)
    CoordKind coords = CoordKind::Stretched;
    Method method = Method::Both;
    OutputFormat output = OutputFormat::Csv;
    std::string out_path;
    QuadratureConfig quadrature;
    int mode_count = 3;
    double gate_mid = 0.05;   // pass gate for D2..D5 comparisons
    double gate_deep = 0.10;  // pass gate for D6 comparisons

    void validate() const;
};

struct FieldSample {
    double sigma = 0.0, nu = 0.0;
    double x = 0.0, y = 0.0;
    RegionLabel region = RegionLabel::D1_core;
    Complex incident{0.0, 0.0};
    Complex outgoing{0.0, 0.0};
    Complex total{0.0, 0.0};
    std::string method;  // "direct" or "asymptotic"
    double est_error = 0.0;
    std::string error;  // empty on success
};

inline constexpr const char* kFieldSampleHeader =
    "sigma,nu,x,y,region,method,re_inc,im_inc,re_out,im_out,re_tot,im_tot,est_error,error";

/// Evaluate one grid point with one method.  Per-point failures are recorded
/// in FieldSample::error, not thrown.
FieldSample evaluate_sample(const StretchedCoords& q, const RunConfig& cfg, Method method);

struct RunSummary {
    int rows = 0;
    int failures = 0;
    int exit_code = 0;  // 0 ok, 2 if failures exceed 10% of rows
};

/// Row-major field map; deterministic for identical configs.
RunSummary run_fieldmap(const RunConfig& cfg, std::ostream& out);

struct CompareRow {
    double sigma = 0.0, nu = 0.0;
    RegionLabel region = RegionLabel::D1_core;
    Complex direct{0.0, 0.0};
    Complex asymptotic{0.0, 0.0};
    double rel_dev = 0.0;
    double gate = 0.0;
    bool pass = false;
    std::string error;
};

struct CompareSummary {
    std::vector<CompareRow> rows;
    int failures = 0;
    int exit_code = 0;
};

/// Per-point |asym - direct| / max(|direct|, floor) with per-region gates and
/// a per-region max/mean summary block appended to the output.
CompareSummary run_compare(const RunConfig& cfg, std::ostream& out);

/// Zero/excitation-coefficient table (j, |zeta_j|, arg zeta_j, Re A_j, Im A_j).
void run_zeros(int n, const ProblemParams& params, std::ostream& out);

/// Named invariant checks; returns the number of failures.  `w1_perturbation`
/// is the selftest sensitivity hook.
int run_selftest(std::ostream& out, double w1_perturbation = 0.0);

}  // namespace penumbra

#endif
