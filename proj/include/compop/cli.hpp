#pragma once

// Command-line front end. run() is separate from main() so tests can drive
// it with captured streams.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "compop/diagnostics.hpp"
#include "compop/errors.hpp"
#include "compop/io.hpp"
#include "compop/oracle.hpp"
#include "compop/sequences.hpp"
#include "compop/verify.hpp"

namespace compop::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

inline const std::vector<std::string> kSequenceHeader{"t",   "r",   "n",   "forward", "adjoint",
                                                      "gap", "forward_limit", "adjoint_limit", "gap_limit"};

/// "1,0:0.5,-2" -> {1, 0.5i, -2}
inline CVector parse_complex_list(const std::string& text, const std::string& flag) {
  std::vector<Complex> vals;
  std::stringstream ss(text);
  std::string item;
  auto num = [&](const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw argument_error(flag + ": cannot parse '" + s + "'");
    return v;
  };
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      vals.emplace_back(num(item), 0.0);
    } else {
      vals.emplace_back(num(item.substr(0, colon)), num(item.substr(colon + 1)));
    }
  }
  if (vals.empty()) throw argument_error(flag + ": empty vector");
  CVector v(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
  return v;
}

inline std::vector<double> parse_real_list(const std::string& text, const std::string& flag) {
  const CVector v = parse_complex_list(text, flag);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i).imag() != 0.0) throw argument_error(flag + ": expected real numbers");
    out.push_back(v(i).real());
  }
  return out;
}

inline std::vector<unsigned long> parse_index_list(const std::string& text) {
  std::vector<unsigned long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      if (!item.empty() && item[0] == '-') throw std::invalid_argument("negative");
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size()) throw argument_error("--n: cannot parse '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw argument_error("--n: empty list");
  return out;
}

/// Worker count: COMPOP_THREADS if set, else hardware concurrency, never
/// more than `jobs`.
inline std::size_t thread_count(std::size_t jobs) {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("COMPOP_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw argument_error("COMPOP_THREADS must be a positive integer");
    n = static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::min(n, jobs));
}

/// Evaluates f(i) for i < count on a small pool; results keep index order.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F f) {
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t nt = thread_count(count);
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < nt; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::vector<T> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

struct Options {
  std::string format = "csv";
  std::string output;
  // limits / converge
  double t = 0.0;
  double r = 0.0;
  std::string n_list;
  // oracle
  std::size_t N = 0;
  unsigned k = 0;
  unsigned m = 0;
  std::string a;
  std::string eta;
  std::size_t mc = 0;
  std::uint64_t seed = 1;
  // slice-check / kernel-bound
  std::string map_path;
  std::string space = "hardy";
  std::string zeta;
  std::string radii;
};

namespace detail {

inline void emit_table(std::ostream& out, const std::string& format, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows, const std::vector<std::size_t>& int_cols = {}) {
  auto is_int = [&](std::size_t c) { return std::find(int_cols.begin(), int_cols.end(), c) != int_cols.end(); };
  if (format == "json") {
    Json arr = Json::array();
    for (const auto& row : rows) {
      Json obj;
      for (std::size_t c = 0; c < header.size(); ++c) {
        if (is_int(c)) {
          obj[header[c]] = static_cast<unsigned long long>(row[c]);
        } else {
          obj[header[c]] = row[c];
        }
      }
      arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << '\n';
    return;
  }
  CsvTable table(header);
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    for (std::size_t c = 0; c < row.size(); ++c) {
      cells.push_back(is_int(c) ? std::to_string(static_cast<unsigned long long>(row[c])) : csv_number(row[c]));
    }
    table.add_row(std::move(cells));
  }
  table.write(out);
}

inline int cmd_limits(const Options& o, std::ostream& out) {
  const std::vector<std::string> header{"t", "r", "forward_limit", "adjoint_limit", "gap_limit"};
  emit_table(out, o.format, header,
             {{o.t, o.r, forward_limit(o.t, o.r), adjoint_limit(o.t, o.r), gap_limit(o.t, o.r)}});
  return kOk;
}

inline int cmd_converge(const Options& o, std::ostream& out) {
  const auto ns = parse_index_list(o.n_list);
  const auto reports =
      parallel_map<SequenceReport>(ns.size(), [&](std::size_t i) { return sequence_report(o.t, o.r, ns[i]); });
  std::vector<std::vector<double>> rows;
  for (const auto& s : reports) {
    rows.push_back({s.t, s.r, static_cast<double>(s.n), s.forward, s.adjoint, s.gap, s.forward_limit, s.adjoint_limit,
                    s.gap_limit});
  }
  emit_table(out, o.format, kSequenceHeader, rows, {2});
  return kOk;
}

inline int cmd_oracle(const Options& o, std::ostream& out, std::ostream& err) {
  const CVector a = parse_complex_list(o.a, "--a");
  const CVector eta = parse_complex_list(o.eta, "--eta");
  if (static_cast<std::size_t>(a.size()) != o.N || static_cast<std::size_t>(eta.size()) != o.N) {
    throw argument_error("--a and --eta must have N entries");
  }
  const OracleResult res = sphere_inner_product_exact(o.N, o.k, o.m, a, eta);
  std::vector<std::string> header{"N", "k", "m", "value", "bound", "n_terms"};
  std::vector<double> row{static_cast<double>(o.N), static_cast<double>(o.k), static_cast<double>(o.m),
                          res.value, res.bound, static_cast<double>(res.n_terms)};
  std::vector<std::size_t> ints{0, 1, 2, 5};
  bool agrees = true;
  if (o.mc > 0) {
    const auto est = monte_carlo_sphere(
        o.N,
        [&](const CVector& z) {
          return std::norm(std::pow(inner(z, a), static_cast<int>(o.k)) * std::pow(inner(z, eta), static_cast<int>(o.m)));
        },
        o.mc, o.seed);
    agrees = std::abs(est.estimate - res.value) <= 4.0 * est.stderr_;
    header.insert(header.end(), {"mc_estimate", "mc_stderr", "mc_within_4se"});
    row.insert(row.end(), {est.estimate, est.stderr_, agrees ? 1.0 : 0.0});
    ints.push_back(8);
  }
  emit_table(out, o.format, header, {row}, ints);
  if (!agrees) {
    err << "monte-carlo estimate disagrees with the exact sum beyond 4 standard errors\n";
    return kVerifyFailed;
  }
  return kOk;
}

inline int cmd_slice_check(const Options& o, std::ostream& out) {
  const LinearFractionalMap phi = load_map_spec(o.map_path);
  const SpaceSpec space = parse_space(o.space, phi.dim());
  out << verdict_to_json(slice_verdict(phi, space)).dump(2) << '\n';
  return kOk;
}

inline int cmd_kernel_bound(const Options& o, std::ostream& out) {
  const LinearFractionalMap phi = load_map_spec(o.map_path);
  const SpaceSpec space = parse_space(o.space, phi.dim());
  const CVector zeta = parse_complex_list(o.zeta, "--zeta");
  const auto radii = o.radii.empty() ? default_radii() : parse_real_list(o.radii, "--radii");
  const KernelScan scan = kernel_bound_scan(phi, space, zeta, radii);
  if (o.format == "csv") {
    CsvTable table({"r", "bound"});
    for (const auto& [r, b] : scan.table) table.add_row({csv_number(r), csv_number(b)});
    table.write(out);
  } else {
    out << kernel_scan_to_json(scan).dump(2) << '\n';
  }
  return kOk;
}

inline int cmd_verify(std::ostream& out) {
  std::size_t passed = 0;
  const auto suites = run_all_suites();
  for (const auto& s : suites) {
    out << (s.passed() ? "PASS " : "FAIL ") << s.name << " (" << s.checks << " checks";
    if (!s.passed()) out << ", " << s.failures.size() << " failed";
    out << ")\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(5, s.failures.size()); ++i) out << "  " << s.failures[i] << '\n';
    if (s.passed()) ++passed;
  }
  out << passed << "/" << suites.size() << " suites passed\n";
  return passed == suites.size() ? kOk : kVerifyFailed;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"compop: quadratic forms, limits and essential-normality verdicts for composition operators"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-o,--output", o.output, "Write to this file instead of stdout");

  auto* limits = app.add_subcommand("limits", "Closed-form forward/adjoint/gap limits");
  limits->add_option("--t", o.t, "Exponent t")->required();
  limits->add_option("--r", o.r, "Radius |a| in [0,1)")->required();

  auto* converge = app.add_subcommand("converge", "Finite-index sequence reports");
  converge->add_option("--t", o.t, "Exponent t")->required();
  converge->add_option("--r", o.r, "Radius |a| in [0,1)")->required();
  converge->add_option("--n", o.n_list, "Comma-separated indices")->required();

  auto* oracle = app.add_subcommand("oracle", "Exact sphere integral and its bound");
  oracle->add_option("--N", o.N, "Ball dimension")->required()->check(CLI::PositiveNumber);
  oracle->add_option("--k", o.k, "Power of <z,a>")->required();
  oracle->add_option("--m", o.m, "Power of <z,eta>")->required();
  oracle->add_option("--a", o.a, "Vector a, entries re or re:im")->required();
  oracle->add_option("--eta", o.eta, "Unit vector eta")->required();
  oracle->add_option("--mc", o.mc, "Monte-Carlo samples (0 = off)");
  oracle->add_option("--seed", o.seed, "Monte-Carlo seed");

  auto* slice = app.add_subcommand("slice-check", "Slice-automorphism verdict");
  slice->add_option("--map", o.map_path, "Map-spec JSON file")->required();
  slice->add_option("--space", o.space, "hardy | bergman | bergman:S");

  auto* kernel = app.add_subcommand("kernel-bound", "Kernel lower-bound scan toward a boundary point");
  kernel->add_option("--map", o.map_path, "Map-spec JSON file")->required();
  kernel->add_option("--space", o.space, "hardy | bergman | bergman:S");
  kernel->add_option("--zeta", o.zeta, "Unit boundary direction")->required();
  kernel->add_option("--radii", o.radii, "Comma-separated radii in (0,1)");

  auto* verify = app.add_subcommand("verify", "Run all identity suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  // JSON output is the natural form for verdicts.
  if ((slice->parsed() || kernel->parsed()) && app.count("--format") == 0) o.format = "json";

  std::ofstream file;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) {
      err << "error: cannot open output '" << o.output << "'\n";
      return kUsage;
    }
  }
  std::ostream& sink = o.output.empty() ? out : file;

  try {
    if (limits->parsed()) return detail::cmd_limits(o, sink);
    if (converge->parsed()) return detail::cmd_converge(o, sink);
    if (oracle->parsed()) return detail::cmd_oracle(o, sink, err);
    if (slice->parsed()) return detail::cmd_slice_check(o, sink);
    if (kernel->parsed()) return detail::cmd_kernel_bound(o, sink);
    if (verify->parsed()) return detail::cmd_verify(sink);
  } catch (const argument_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const compop::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const guard_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kUsage;
}

}  // namespace compop::cli
