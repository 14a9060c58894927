#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "specflow/operators.hpp"
#include "specflow/path.hpp"

namespace specflow {
namespace io {

/// {"dim": n, "entries": [[re, im], ...]} row-major.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

HermitianOperator operator_from_json(const nlohmann::json& j);

/// Path descriptor: either {"family": ..., "params": {...}, "t0": ..,
/// "t1": ..} or {"samples": [{"t": .., "matrix": {..}}, ...],
/// "interpolation": "linear"}.
OperatorPath path_from_descriptor(const nlohmann::json& j);

/// 17-significant-digit decimal, round-trip exact for doubles.
std::string format_double(double x);

/// `t, mu_1, ..., mu_n` rows with eigenvalues ascending.
void write_spectrum_csv(std::ostream& os, const OperatorPath& path,
                        int samples);

/// Re-reads spectrum CSV as a sampled diagonal path (linear interpolation).
OperatorPath path_from_spectrum_csv(std::istream& is);

}  // namespace io
}  // namespace specflow
