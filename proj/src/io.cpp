#include "specflow/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "specflow/gallery.hpp"

namespace specflow {
namespace io {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw Error("parse error", "matrix literal needs 'dim' and 'entries'");
  }
  int dim = j.at("dim").get<int>();
  const json& entries = j.at("entries");
  if (dim < 1 || !entries.is_array() ||
      entries.size() != static_cast<size_t>(dim) * dim) {
    throw Error("parse error", "matrix entry count does not match dim*dim");
  }
  Matrix m(dim, dim);
  size_t k = 0;
  for (int i = 0; i < dim; ++i) {
    for (int jcol = 0; jcol < dim; ++jcol, ++k) {
      const json& e = entries[k];
      if (!e.is_array() || e.size() != 2) {
        throw Error("parse error", "matrix entries must be [re, im] pairs");
      }
      m(i, jcol) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

HermitianOperator operator_from_json(const json& j) {
  return HermitianOperator(matrix_from_json(j));
}

namespace {

double param(const json& params, const std::string& key, double fallback) {
  if (params.contains(key)) return params.at(key).get<double>();
  return fallback;
}

OperatorPath family_path(const std::string& family, const json& params,
                         double t0, double t1) {
  if (family == "twisted_fourier") {
    int K = static_cast<int>(param(params, "K", 5));
    return gallery::twisted_fourier_path(K, t0, t1);
  }
  if (family == "twisted_fd") {
    int n = static_cast<int>(param(params, "n", 200));
    return gallery::twisted_fd_path(n, t0, t1);
  }
  if (family == "normalization") {
    int n_side = static_cast<int>(param(params, "n_side", 1));
    return gallery::normalization_path(n_side, t0, t1);
  }
  if (family == "linear_pencil") {
    if (!params.contains("A0") || !params.contains("A1")) {
      throw Error("parse error", "linear_pencil needs matrices A0 and A1");
    }
    return gallery::linear_pencil(operator_from_json(params.at("A0")),
                                  operator_from_json(params.at("A1")));
  }
  if (family == "random_smooth") {
    int dim = static_cast<int>(param(params, "dim", 4));
    auto seed = static_cast<std::uint64_t>(param(params, "seed", 1));
    int knots = static_cast<int>(param(params, "knots", 3));
    return gallery::random_smooth(dim, seed, knots);
  }
  if (family == "constant") {
    if (!params.contains("A")) throw Error("parse error", "constant needs matrix A");
    return constant_path(operator_from_json(params.at("A")), t0, t1);
  }
  throw Error("parse error", "unknown family '" + family + "'");
}

}  // namespace

OperatorPath path_from_descriptor(const json& j) {
  if (!j.is_object()) throw Error("parse error", "path descriptor must be an object");
  if (j.contains("family")) {
    double t0 = j.value("t0", 0.0);
    double t1 = j.value("t1", 1.0);
    json params = j.value("params", json::object());
    return family_path(j.at("family").get<std::string>(), params, t0, t1);
  }
  if (j.contains("samples")) {
    std::string interp = j.value("interpolation", "linear");
    if (interp != "linear") {
      throw Error("parse error", "unsupported interpolation '" + interp + "'");
    }
    std::vector<std::pair<double, HermitianOperator>> samples;
    for (const json& s : j.at("samples")) {
      samples.emplace_back(s.at("t").get<double>(),
                           operator_from_json(s.at("matrix")));
    }
    return OperatorPath::from_samples(std::move(samples));
  }
  throw Error("parse error", "descriptor needs 'family' or 'samples'");
}

void write_spectrum_csv(std::ostream& os, const OperatorPath& path,
                        int samples) {
  if (samples < 2) throw Error("invalid input", "need at least 2 samples");
  os << "t";
  for (int j = 1; j <= path.dim(); ++j) os << ", mu_" << j;
  os << "\n";
  for (int i = 0; i < samples; ++i) {
    double t = path.t0() + path.length() * i / (samples - 1);
    EigenDecomposition ed = eigh(path.at(t));
    os << format_double(t);
    for (int j = 0; j < path.dim(); ++j) {
      os << ", " << format_double(ed.eigenvalues[j]);
    }
    os << "\n";
  }
}

OperatorPath path_from_spectrum_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error("parse error", "empty CSV");
  std::vector<std::pair<double, HermitianOperator>> samples;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::vector<double> values;
    std::string cell;
    while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
    if (values.size() < 2) throw Error("parse error", "CSV row too short");
    int dim = static_cast<int>(values.size()) - 1;
    Matrix m = Matrix::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) m(j, j) = Complex(values[j + 1], 0.0);
    samples.emplace_back(values[0], HermitianOperator(std::move(m)));
  }
  return OperatorPath::from_samples(std::move(samples));
}

}  // namespace io
}  // namespace specflow
