// czlab: command-line front end.
//
//   czlab verify   SCENARIO [-o report.json]
//   czlab sweep    SCENARIO --parameter lambda --from 1 --to 13 --count 25 [-o table.csv]
//   czlab plot     SCENARIO [-o plot.svg]
//   czlab selftest
//
// Exit codes: 0 verified, 1 usage or I/O error, 2 parse error, 3 validation
// failure, 4 degenerate geodesic, 5 theorem verdict failed, 6 numerical
// failure (unresolved or irregular crossings).

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "czlab/cli/fixtures.hpp"
#include "czlab/cli/plot.hpp"
#include "czlab/cli/report.hpp"
#include "czlab/cli/sweep.hpp"

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kValidation = 3,
  kDegenerate = 4,
  kVerdict = 5,
  kNumerical = 6,
};

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

/// Maps library errors onto the exit-code table.
template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const czlab::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const czlab::ValidationError& e) {
    std::cerr << "validation failed: " << e.what() << '\n';
    return kValidation;
  } catch (const czlab::DegenerateError& e) {
    std::cerr << e.what() << '\n';
    return kDegenerate;
  } catch (const czlab::DomainError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return kValidation;
  } catch (const czlab::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int cmd_verify(const std::string& scenario_path, const std::string& output) {
  return guarded([&] {
    const std::string text = read_file(scenario_path);
    const auto file = czlab::cli::parse_scenario_text(text);
    const auto scenario = czlab::cli::build_scenario(file);
    const auto start = std::chrono::steady_clock::now();
    const auto report = czlab::verify_theorem(scenario, file.solver);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto doc = czlab::cli::make_report_document(file, scenario, report, sha256_hex(text), wall);
    write_output(output, doc.dump(2) + "\n");
    if (!report.verdict) {
      for (const auto& d : report.diagnostics) std::cerr << "verdict failed: " << d << '\n';
      return int(kVerdict);
    }
    return int(kOk);
  });
}

int cmd_sweep(const std::string& scenario_path, const std::string& parameter, double from, double to, int count,
              const std::string& output) {
  return guarded([&] {
    const auto file = czlab::cli::parse_scenario_text(read_file(scenario_path));
    std::vector<czlab::cli::SweepRow> rows;
    try {
      rows = czlab::cli::run_sweep(file, parameter, from, to, count);
    } catch (const czlab::DomainError& e) {
      std::cerr << "sweep: " << e.what() << '\n';
      return int(kUsage);
    }
    write_output(output, czlab::cli::sweep_csv(rows, parameter));
    for (const auto& r : rows)
      if (r.status == "ok" && !r.verdict) return int(kVerdict);
    return int(kOk);
  });
}

int cmd_plot(const std::string& scenario_path, const std::string& output) {
  return guarded([&] {
    const auto file = czlab::cli::parse_scenario_text(read_file(scenario_path));
    const auto scenario = czlab::cli::build_scenario(file);
    write_output(output, czlab::cli::plot_scenario(scenario, file.solver));
    return int(kOk);
  });
}

int cmd_selftest() {
  return guarded([] {
    const auto results = czlab::cli::run_fixtures(czlab::cli::default_steps());
    int failed = 0;
    for (const auto& r : results) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
      if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
      std::cout << '\n';
      failed += r.passed ? 0 : 1;
    }
    std::cout << (failed ? "selftest FAILED" : "selftest passed") << '\n';
    return int(failed ? kVerdict : kOk);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conley-Zehnder and Morse indices of Ustilovsky geodesics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", czlab::kVersion);

  std::string scenario, output, parameter = "lambda";
  double from = 0.0, to = 1.0;
  int count = 2;

  auto* verify = app.add_subcommand("verify", "verify the index identity for a scenario");
  verify->add_option("scenario", scenario, "scenario file")->required();
  verify->add_option("-o,--output", output, "report path (default: stdout)");

  auto* sweep = app.add_subcommand("sweep", "sweep a parameter and tabulate indices as CSV");
  sweep->add_option("scenario", scenario, "scenario file")->required();
  sweep->add_option("-p,--parameter", parameter, "lambda | steps | scale");
  sweep->add_option("--from", from, "first value")->required();
  sweep->add_option("--to", to, "last value")->required();
  sweep->add_option("-n,--count", count, "number of values (>= 2)")->required();
  sweep->add_option("-o,--output", output, "CSV path (default: stdout)");

  auto* plot = app.add_subcommand("plot", "render sigma_min(Psi(t) - I) with crossing markers as SVG");
  plot->add_option("scenario", scenario, "scenario file")->required();
  plot->add_option("-o,--output", output, "SVG path (default: stdout)");

  auto* selftest = app.add_subcommand("selftest", "convention self-test and analytic fixtures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : int(kUsage);
  }

  if (verify->parsed()) return cmd_verify(scenario, output);
  if (sweep->parsed()) return cmd_sweep(scenario, parameter, from, to, count, output);
  if (plot->parsed()) return cmd_plot(scenario, output);
  if (selftest->parsed()) return cmd_selftest();
  return kUsage;
}
