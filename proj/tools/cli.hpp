#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "paving/matrix.hpp"

namespace paving::cli {

// Process exit codes, one per outcome class.
enum ExitCode : int {
    kPass = 0,
    kUsage = 1,
    kIoOrParse = 2,
    kCheckFailed = 3,
    kResource = 4,
};

struct Tolerances {
    double construct = 1e-10;
    double eig = 1e-8;
};

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

struct VerificationReport {
    std::string source;
    std::size_t rows = 0;
    std::size_t cols = 0;
    double orthogonality_defect = 0.0;
    std::vector<double> row_sums;
    std::vector<double> col_sums;
    std::optional<double> tight_constant;
    double expected_constant = 0.0;
    double idempotency_residual = 0.0;
    double diag_mean = 0.0;
    double diag_max_deviation = 0.0;
    double trace = 0.0;
    std::size_t rank = 0;
    std::vector<CheckResult> checks;

    bool pass() const;
    std::vector<std::string> failed() const;
    std::string to_json() const;
};

// Structural checks of a candidate unit-norm tight frame and its induced
// projection. expected_constant defaults to the mean column square sum.
VerificationReport verify_matrix(const ComplexMatrix& m, std::optional<double> expected_constant,
                                 const Tolerances& tol, std::string source);

// Full command line including argv[0]. Never throws; returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace paving::cli
