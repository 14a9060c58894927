// specflow: spectral flow of Hermitian matrix paths from the command line.
//
// Subcommands: sfl, spectrum, gap, verify. All reports are JSON (doubles
// printed with 17 significant digits) or CSV; exit codes: 0 ok, 1 numerical
// failure, 2 cross-method disagreement, 64 usage / parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "specflow/crossings.hpp"
#include "specflow/flow.hpp"
#include "specflow/gallery.hpp"
#include "specflow/io.hpp"
#include "specflow/operators.hpp"
#include "specflow/verify.hpp"

namespace {

using nlohmann::json;
using namespace specflow;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitDisagreement = 2;
constexpr int kExitUsage = 64;

// nlohmann's own dump() prints shortest-round-trip floats; the report
// contract wants a fixed 17-significant-digit form, so we serialize by hand.
void dump_json(std::ostream& os, const json& j) {
  switch (j.type()) {
    case json::value_t::object: {
      os << "{";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",";
        first = false;
        os << json(it.key()).dump() << ":";
        dump_json(os, it.value());
      }
      os << "}";
      break;
    }
    case json::value_t::array: {
      os << "[";
      bool first = true;
      for (const json& e : j) {
        if (!first) os << ",";
        first = false;
        dump_json(os, e);
      }
      os << "]";
      break;
    }
    case json::value_t::number_float:
      os << io::format_double(j.get<double>());
      break;
    default:
      os << j.dump();
  }
}

void emit(const json& report, const std::string& output) {
  if (output.empty() || output == "-") {
    dump_json(std::cout, report);
    std::cout << "\n";
    return;
  }
  std::ofstream f(output);
  if (!f) throw Error("io error", "cannot open '" + output + "' for writing");
  dump_json(f, report);
  f << "\n";
}

// Inline JSON if the argument parses as such, otherwise a file path.
json load_json_arg(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] != '{' && arg[0] != '[') {
    std::ifstream f(arg);
    if (!f) throw Error("parse error", "cannot read '" + arg + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error("parse error", e.what());
  }
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SPECFLOW_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error("parse error", "SPECFLOW_SEED is not an integer");
    }
  }
  return 1;
}

struct PathArgs {
  std::string descriptor;                 // file path or inline JSON
  std::string family;
  std::vector<std::string> params;        // key=value
  double t0 = 0.0, t1 = 1.0;
  bool t0_set = false, t1_set = false;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* cmd) {
    cmd->add_option("--descriptor", descriptor,
                    "path descriptor: JSON file or inline JSON");
    cmd->add_option("--family", family,
                    "built-in family (twisted_fourier, twisted_fd, "
                    "normalization, linear_pencil, random_smooth, constant)");
    cmd->add_option("--param", params, "family parameter key=value (repeatable)");
    cmd->add_option("--t0", t0, "start of the parameter interval")
        ->trigger_on_parse()
        ->each([this](const std::string&) { t0_set = true; });
    cmd->add_option("--t1", t1, "end of the parameter interval")
        ->trigger_on_parse()
        ->each([this](const std::string&) { t1_set = true; });
    cmd->add_option("--seed", seed, "seed (fallback: SPECFLOW_SEED, then 1)");
  }

  json descriptor_json() const {
    if (!descriptor.empty() && !family.empty()) {
      throw Error("parse error", "give either --descriptor or --family, not both");
    }
    if (!descriptor.empty()) return load_json_arg(descriptor);
    if (family.empty()) {
      throw Error("parse error", "a path needs --descriptor or --family");
    }
    json p = json::object();
    for (const std::string& kv : params) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) {
        throw Error("parse error", "--param expects key=value, got '" + kv + "'");
      }
      std::string key = kv.substr(0, eq);
      std::string value = kv.substr(eq + 1);
      if (key == "A0" || key == "A1" || key == "A") {
        p[key] = load_json_arg(value);
      } else {
        try {
          p[key] = std::stod(value);
        } catch (const std::exception&) {
          throw Error("parse error", "--param " + key + " is not a number");
        }
      }
    }
    if (family == "random_smooth" && !p.contains("seed")) {
      p["seed"] = static_cast<double>(resolve_seed(seed));
    }
    json d{{"family", family}, {"params", std::move(p)}};
    if (t0_set) d["t0"] = t0;
    if (t1_set) d["t1"] = t1;
    return d;
  }

  OperatorPath path() const { return io::path_from_descriptor(descriptor_json()); }
};

json certificate_json(const PartitionCertificate& c) {
  return json{{"instants", c.instants},
              {"radii", c.radii},
              {"window_ranks", c.window_ranks},
              {"margin", c.margin}};
}

json inertia_json(const Inertia& in) {
  return json{{"positive", in.positive},
              {"negative", in.negative},
              {"null", in.null},
              {"signature", in.signature()}};
}

json result_json(const SflResult& r) {
  json j{{"method", to_string(r.method)},
         {"value", r.value},
         {"epsilon0", r.epsilon0}};
  if (r.certificate) j["certificate"] = certificate_json(*r.certificate);
  if (r.endpoint_inertias) {
    j["endpoint_inertias"] = json{{"start", inertia_json(r.endpoint_inertias->first)},
                                  {"end", inertia_json(r.endpoint_inertias->second)}};
  }
  return j;
}

bool endpoints_invertible(const OperatorPath& p, const FlowOptions& opts) {
  for (double t : {p.t0(), p.t1()}) {
    HermitianOperator a = p.at(t);
    double eps0 = epsilon0_for(a, opts);
    if (eigh(a).eigenvalues.cwiseAbs().minCoeff() <= eps0) return false;
  }
  return true;
}

int cmd_sfl(const PathArgs& pa, const std::string& method,
            const FlowOptions& fopts, const CrossingOptions& copts,
            const std::string& output) {
  OperatorPath path = pa.path();
  std::vector<std::string> methods;
  if (method == "all") {
    methods = {"partition", "tracking", "crossing", "morse"};
  } else {
    methods = {method};
  }
  json results = json::array();
  json notices = json::array();
  std::vector<int> values;
  for (const std::string& m : methods) {
    if (m == "morse" && method == "all" && !endpoints_invertible(path, fopts)) {
      notices.push_back("morse skipped: endpoint not invertible");
      continue;
    }
    SflResult r;
    if (m == "partition") r = sfl_partition(path, fopts);
    else if (m == "tracking") r = sfl_tracking(path, fopts);
    else if (m == "morse") r = sfl_morse_oracle(path, fopts);
    else if (m == "crossing") r = sfl_crossings(path, copts);
    else throw Error("parse error", "unknown method '" + m + "'");
    values.push_back(r.value);
    results.push_back(result_json(r));
  }
  bool agreement = true;
  for (int v : values) agreement = agreement && v == values.front();
  json report{{"command", "sfl"},
              {"descriptor", pa.descriptor_json()},
              {"results", results},
              {"agreement", agreement}};
  if (!notices.empty()) report["notices"] = notices;
  emit(report, output);
  return agreement ? kExitOk : kExitDisagreement;
}

int cmd_spectrum(const PathArgs& pa, int samples, const std::string& output) {
  OperatorPath path = pa.path();
  if (output.empty() || output == "-") {
    io::write_spectrum_csv(std::cout, path, samples);
  } else {
    std::ofstream f(output);
    if (!f) throw Error("io error", "cannot open '" + output + "' for writing");
    io::write_spectrum_csv(f, path, samples);
  }
  return kExitOk;
}

int cmd_gap(const std::string& a_arg, const std::string& b_arg,
            const std::string& output) {
  HermitianOperator a = io::operator_from_json(load_json_arg(a_arg));
  HermitianOperator b = io::operator_from_json(load_json_arg(b_arg));
  double dg = gap_distance(a, b);
  double delta = delta_distance(a, b);
  double dr = riesz_distance(a, b);
  double dn = norm_distance(a, b);
  bool identity = std::abs(dg - 2.0 * delta) <= 1e-12 * std::max(1.0, dg);
  json report{{"command", "gap"},
              {"d_G", dg},
              {"delta", delta},
              {"d_R", dr},
              {"d_N", dn},
              {"gap_equals_two_delta", identity}};
  emit(report, output);
  return kExitOk;
}

int cmd_verify(const std::string& group, std::optional<std::uint64_t> seed,
               int corpus, bool inject, const std::string& output) {
  verify::VerifyConfig cfg;
  cfg.group = group;
  cfg.seed = resolve_seed(seed);
  cfg.corpus = corpus;
  cfg.inject_hermiticity_violation = inject;
  std::vector<verify::CheckResult> checks = verify::run(cfg);
  if (checks.empty()) {
    throw Error("parse error", "unknown verify group '" + group + "'");
  }
  json items = json::array();
  bool all_pass = true;
  for (const verify::CheckResult& c : checks) {
    all_pass = all_pass && c.pass;
    items.push_back(json{{"group", c.group},
                         {"name", c.name},
                         {"pass", c.pass},
                         {"detail", c.detail}});
  }
  json report{{"command", "verify"},
              {"seed", cfg.seed},
              {"checks", items},
              {"all_pass", all_pass}};
  emit(report, output);
  return all_pass ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral flow toolkit for paths of Hermitian matrices"};
  app.require_subcommand(1);

  PathArgs sfl_path, spec_path;
  std::string method = "partition";
  std::string output;
  FlowOptions fopts;
  CrossingOptions copts;
  int samples = 101;
  std::string gap_a, gap_b;
  std::string verify_group;
  std::optional<std::uint64_t> verify_seed;
  int verify_corpus = 25;
  bool verify_inject = false;

  CLI::App* sfl = app.add_subcommand("sfl", "compute spectral flow of a path");
  sfl_path.attach(sfl);
  sfl->add_option("--method", method,
                  "partition|tracking|crossing|morse|all");
  sfl->add_option("--samples", fopts.initial_samples, "initial grid size");
  sfl->add_option("--epsilon0", fopts.epsilon0_rel,
                  "relative zero-classification tolerance");
  sfl->add_option("--kernel-tol", copts.kernel_tol_rel,
                  "relative kernel detection tolerance");
  sfl->add_option("-o,--output", output, "report destination (default stdout)");

  CLI::App* spectrum = app.add_subcommand("spectrum", "dump eigenvalue traces as CSV");
  spec_path.attach(spectrum);
  spectrum->add_option("--samples", samples, "number of grid rows");
  spectrum->add_option("-o,--output", output, "CSV destination (default stdout)");

  CLI::App* gap = app.add_subcommand("gap", "metrics between two Hermitian matrices");
  gap->add_option("--a", gap_a, "first matrix (JSON file or inline)")->required();
  gap->add_option("--b", gap_b, "second matrix (JSON file or inline)")->required();
  gap->add_option("-o,--output", output, "report destination (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--group", verify_group,
                     "hermitian|resolvent|projection|specflow|crossing|gallery");
  verify->add_option("--seed", verify_seed, "seed (fallback: SPECFLOW_SEED)");
  verify->add_option("--corpus", verify_corpus, "seeds per randomized check");
  verify->add_flag("--inject-hermiticity-violation", verify_inject,
                   "negative-control fixture (must fail)");
  verify->add_option("-o,--output", output, "report destination (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sfl->parsed()) return cmd_sfl(sfl_path, method, fopts, copts, output);
    if (spectrum->parsed()) return cmd_spectrum(spec_path, samples, output);
    if (gap->parsed()) return cmd_gap(gap_a, gap_b, output);
    return cmd_verify(verify_group, verify_seed, verify_corpus, verify_inject,
                      output);
  } catch (const Error& e) {
    std::cerr << "specflow: " << e.what() << "\n";
    return e.kind() == "parse error" ? kExitUsage : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "specflow: " << e.what() << "\n";
    return kExitNumerical;
  }
}
