#ifndef QMA_CLI_HPP
#define QMA_CLI_HPP

// Command-line front end. `run` parses the arguments (program name excluded),
// validates every flag before any numerics, dispatches, and writes the report.
//
// Exit codes: 0 success, 1 computation failure (invalid certificate, tolerance
// not met), 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qma/energy.hpp"
#include "qma/error.hpp"
#include "qma/hessian.hpp"
#include "qma/ineq.hpp"
#include "qma/moore.hpp"
#include "qma/report.hpp"

namespace qma::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Raised for input problems found after flag parsing (bad files, inconsistent flags).
class UsageError : public Error {
 public:
  using Error::Error;
};

inline const CLI::Validator& finite_positive() {
  static const CLI::Validator v(
      [](std::string& input) -> std::string {
        try {
          std::size_t used = 0;
          const double x = std::stod(input, &used);
          if (used != input.size() || !std::isfinite(x) || !(x > 0.0)) {
            return "value must be a finite number > 0, got " + input;
          }
        } catch (const std::exception&) {
          return "value must be a finite number > 0, got " + input;
        }
        return {};
      },
      "POSITIVE");
  return v;
}

/// Quadrature settings, with QMA_RELTOL overriding rel_tol when set.
inline QuadratureSpec quadrature_from_env() {
  QuadratureSpec spec;
  if (const char* env = std::getenv("QMA_RELTOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !std::isfinite(v) || !(v > 0.0)) {
      throw UsageError(std::string("QMA_RELTOL must be a positive number, got '") + env + "'");
    }
    spec.rel_tol = v;
  }
  return spec;
}

/// Reads the {"dim": n, "entries": [[[w,x,y,z], ...], ...]} matrix format.
inline HyperhermitianMatrix parse_matrix_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("matrix JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries")) {
    throw UsageError("matrix JSON: expected an object with \"dim\" and \"entries\"");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
    throw UsageError("matrix JSON: \"dim\" must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(doc["dim"].get<long long>());
  const Json& rows = doc["entries"];
  if (!rows.is_array() || rows.size() != n) {
    throw UsageError("matrix JSON: \"entries\" must hold " + std::to_string(n) + " rows");
  }
  QuaternionMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array() || rows[r].size() != n) {
      throw UsageError("matrix JSON: row " + std::to_string(r) + " must hold " + std::to_string(n) + " entries");
    }
    for (std::size_t c = 0; c < n; ++c) {
      const Json& q = rows[r][c];
      if (!q.is_array() || q.size() != 4 ||
          !std::all_of(q.begin(), q.end(), [](const Json& v) { return v.is_number(); })) {
        throw UsageError("matrix JSON: entry (" + std::to_string(r) + "," + std::to_string(c) +
                         ") must be [w, x, y, z]");
      }
      m(r, c) = Quaternion(q[0].get<double>(), q[1].get<double>(), q[2].get<double>(), q[3].get<double>());
    }
  }
  try {
    return HyperhermitianMatrix::validated(m);
  } catch (const Error& e) {
    throw UsageError(std::string("matrix JSON: ") + e.what());
  }
}

inline Json to_json(const ConstantsReport& c) {
  Json j;
  j["p"] = c.p;
  j["n"] = c.n;
  j["alpha"] = c.alpha;
  j["d_p"] = c.d_p;
  j["f_pn"] = c.f_pn;
  j["f_p2n"] = c.f_p2n;
  return j;
}

inline Json to_json(const RatioCertificate& c) {
  Json j;
  j["p"] = c.p;
  j["n"] = c.n;
  j["violation"] = c.violation;
  j["a_star"] = c.a_star;
  j["b_star"] = c.b_star;
  j["ratio"] = c.ratio;
  j["f_value"] = c.f_value;
  j["quad_crosscheck"] = c.quad_crosscheck;
  j["error_bound"] = c.error_bound;
  return j;
}

inline std::string format_scan_csv(const std::vector<RatioSample>& rows) {
  std::string out = "a,b,R\n";
  for (const auto& s : rows) {
    out += format_real(s.a) + "," + format_real(s.b) + "," + format_real(s.ratio) + "\n";
  }
  return out;
}

inline std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Entry point; `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err,
               std::istream& in = std::cin) {
  CLI::App app{"Quaternionic Monge-Ampere energy toolkit", "qma"};
  app.require_subcommand(1);

  int threads = 1;
  auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", threads, "Worker threads for grid evaluation")->check(CLI::Range(1, 256));
  };

  double p = 0.0;
  int n = 0;
  auto add_pn = [&](CLI::App* cmd) {
    cmd->add_option("--p", p, "Energy exponent p > 0")->required()->check(finite_positive());
    cmd->add_option("--n", n, "Quaternionic dimension n >= 1")->required()->check(CLI::Range(1, 64));
  };

  auto* constants = app.add_subcommand("constants", "alpha(p,n), D_p and f(p,n), f(p,2n)");
  add_pn(constants);

  std::string matrix_path;
  auto* moore = app.add_subcommand("moore-det", "Moore determinant of a hyperhermitian matrix (JSON)");
  moore->add_option("--matrix", matrix_path, "Matrix JSON file, or '-' for standard input")->required();

  double a = 0.0;
  int samples = 20;
  std::optional<double> step;
  std::uint64_t seed = 20240607;
  auto* density = app.add_subcommand("density-check", "Finite-difference MA density vs closed form for u_a");
  // --h is the step size here, so help is --help only.
  density->set_help_flag("--help", "Print this help message and exit");
  density->add_option("--a", a, "Exponent a > 0")->required()->check(finite_positive());
  density->add_option("--n", n, "Quaternionic dimension n >= 1")->required()->check(CLI::Range(1, 16));
  density->add_option("--samples", samples, "Number of sample points")->check(CLI::Range(1, 1000000));
  density->add_option("--h", step, "Finite-difference step (default 1e-4*max(1,r))")->check(finite_positive());
  density->add_option("--seed", seed, "Sampling seed");

  double a0 = 0.0;
  std::vector<double> ai;
  std::string method = "both";
  auto* energy_cmd = app.add_subcommand("energy", "Mutual p-energy e_p(u_a0, u_a1, ..., u_an)");
  add_pn(energy_cmd);
  energy_cmd->add_option("--a0", a0, "Exponent of the weight function")->required()->check(finite_positive());
  energy_cmd->add_option("--ai", ai, "Comma-separated exponents a1..an")
      ->required()
      ->delimiter(',')
      ->check(finite_positive());
  energy_cmd->add_option("--method", method, "closed | quad | both")
      ->check(CLI::IsMember({"closed", "quad", "both"}));

  int grid = 64;
  double amin = 0.1;
  double amax = 4.0;
  std::string out_path;
  auto* scan = app.add_subcommand("ratio-scan", "Energy ratio R(a,b) on a log grid, as CSV a,b,R");
  add_pn(scan);
  scan->add_option("--grid", grid, "Grid points per axis")->check(CLI::Range(2, 100000));
  scan->add_option("--amin", amin, "Lower end of the box")->check(finite_positive());
  scan->add_option("--amax", amax, "Upper end of the box")->check(finite_positive());
  scan->add_option("--out", out_path, "CSV output path (default: standard output)");
  add_threads(scan);

  auto* counter = app.add_subcommand("counterexample", "Certified point with energy ratio > 1 (p != 1)");
  add_pn(counter);
  counter->add_option("--grid", grid, "Grid points per axis")->check(CLI::Range(2, 100000));
  counter->add_option("--amin", amin, "Lower end of the search box")->check(finite_positive());
  counter->add_option("--amax", amax, "Upper end of the search box")->check(finite_positive());
  add_threads(counter);

  int n_max = 10;
  std::vector<double> p_list;
  auto* lemma = app.add_subcommand("lemma-f", "Table of f(p,n) for n = 1..n-max");
  lemma->add_option("--n-max", n_max, "Largest n")->required()->check(CLI::Range(1, 100000));
  lemma->add_option("--p-list", p_list, "Comma-separated p values")
      ->required()
      ->delimiter(',')
      ->check(finite_positive());

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const QuadratureSpec spec = quadrature_from_env();

    if (*constants) {
      out << format_json(to_json(constants_report(p, n)));
      return kExitOk;
    }

    if (*moore) {
      std::string text;
      if (matrix_path == "-") {
        text = read_all(in);
      } else {
        std::ifstream file(matrix_path);
        if (!file) throw UsageError("cannot open matrix file '" + matrix_path + "'");
        text = read_all(file);
      }
      const HyperhermitianMatrix m = parse_matrix_json(text);
      Json j;
      j["dim"] = m.dim();
      j["moore_det"] = moore_det(m);
      out << format_json(j);
      return kExitOk;
    }

    if (*density) {
      const DensityCheckReport r = density_check(PowerFamilyMember(a, n), samples, step, seed);
      Json j;
      j["a"] = a;
      j["n"] = n;
      j["max_rel_err"] = r.max_rel_err;
      j["max_hh_residual"] = r.max_hh_residual;
      j["points_tested"] = r.points_tested;
      j["c0_min"] = r.c0_min;
      j["c0_max"] = r.c0_max;
      out << format_json(j);
      if (r.max_rel_err > 1e-4) {
        err << "density-check: max relative error " << format_real(r.max_rel_err) << " exceeds 1e-4\n";
        return kExitFailure;
      }
      return kExitOk;
    }

    if (*energy_cmd) {
      if (ai.size() != static_cast<std::size_t>(n)) {
        throw UsageError("--ai: expected " + std::to_string(n) + " exponents, got " + std::to_string(ai.size()));
      }
      const EnergyMethod m = method == "closed" ? EnergyMethod::closed_form
                             : method == "quad" ? EnergyMethod::quadrature
                                                : EnergyMethod::both;
      if (m != EnergyMethod::quadrature &&
          std::any_of(ai.begin(), ai.end(), [&](double v) { return v != ai.front(); })) {
        throw UsageError("--method " + method + " needs all --ai values equal; use --method quad");
      }
      const EnergyResult r = energy({p, n}, a0, ai, m, spec);
      Json j;
      j["value"] = r.value;
      j["method"] = method;
      j["discrepancy"] = r.discrepancy ? Json(*r.discrepancy) : Json(nullptr);
      out << format_json(j);
      if (r.discrepancy && *r.discrepancy > 1e-8) {
        err << "energy: closed form and quadrature differ by " << format_real(*r.discrepancy) << "\n";
        return kExitFailure;
      }
      return kExitOk;
    }

    if (*scan) {
      if (!(amax > amin)) throw UsageError("--amax must exceed --amin");
      const std::vector<RatioSample> rows = ratio_scan({p, n}, grid, amin, amax, threads);
      const std::string csv = format_scan_csv(rows);
      if (out_path.empty()) {
        out << csv;
        return kExitOk;
      }
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw UsageError("cannot write '" + out_path + "'");
      file << csv;
      const RatioSample best = scan_argmax(rows);
      Json j;
      j["out"] = out_path;
      j["points"] = rows.size();
      j["max_ratio"] = best.ratio;
      j["a_max"] = best.a;
      j["b_max"] = best.b;
      out << format_json(j);
      return kExitOk;
    }

    if (*counter) {
      if (!(amax > amin)) throw UsageError("--amax must exceed --amin");
      SearchOptions opts;
      opts.grid = grid;
      opts.box_lo = amin;
      opts.box_hi = amax;
      opts.threads = threads;
      opts.quadrature = spec;
      out << format_json(to_json(find_violation({p, n}, opts)));
      return kExitOk;
    }

    if (*lemma) {
      Json rows = Json::array();
      for (double pv : p_list) {
        for (int k = 1; k <= n_max; ++k) {
          Json row;
          row["p"] = pv;
          row["n"] = k;
          row["f"] = f_lemma(pv, k);
          rows.push_back(std::move(row));
        }
      }
      Json j;
      j["rows"] = std::move(rows);
      out << format_json(j);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  err << "usage error: no command given\n";
  return kExitUsage;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(std::move(args), out, err);
}

}  // namespace qma::cli

#endif  // QMA_CLI_HPP
