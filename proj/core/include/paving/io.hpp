#pragma once
//
// Matrix CSV interchange and JSON serialization of families and
// certificates.
//
// Matrix CSV:
//
//   # 2 2
//   0.70710678118654757+0j,0.70710678118654757+0j
//   0.70710678118654757+0j,-0.70710678118654757+8.6595605623549341e-17j
//
// Entries are `re{sign}imj` with 17 significant digits, comma separated,
// one matrix row per line.
//

#include <iosfwd>
#include <string>

#include "paving/constructions.hpp"
#include "paving/matrix.hpp"
#include "paving/paving.hpp"

namespace paving::io {

std::string format_complex(const Complex& z);
// Throws ParseError.
Complex parse_complex(const std::string& token);

void write_matrix_csv(std::ostream& out, const ComplexMatrix& m);
std::string matrix_csv(const ComplexMatrix& m);
// Throws ParseError on malformed input.
ComplexMatrix read_matrix_csv(std::istream& in);
ComplexMatrix read_matrix_csv_file(const std::string& path);

// {r, n, deltas, partial_sums, vacuous, layout: [{block, zero_prefix, band_width,
// band_weight, tail_width, tail_weight}]}
std::string family_sidecar_json(const DeltaSchedule& schedule, const BlockLayout& layout);

// {family: {r, n}, mode, partitions_checked, worst_min_part_bound,
// bound_delta, certified_bound, vacuous, partition, part_bounds,
// witness: {k, j, indices, coefficients, achieved, band_residual}}
std::string certificate_json(const CertificationSummary& summary);

}  // namespace paving::io
