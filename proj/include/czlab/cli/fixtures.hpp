#pragma once

// Analytic-oracle fixture set behind `czlab selftest`. Each check compares
// library output with a closed form: planar rotations S = -lambda I have
// crossings exactly at 2 pi k / lambda with multiplicity 2.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "czlab/index_theorem.hpp"
#include "czlab/selftest.hpp"

namespace czlab::cli {

struct FixtureResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

inline std::vector<FixtureResult> run_fixtures(int steps = kDefaultSteps) {
  std::vector<FixtureResult> out;
  auto add = [&](std::string name, bool ok, std::string detail) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };

  for (int n = 1; n <= 3; ++n) {
    const auto s = standard_structure(n);
    add("conventions n=" + std::to_string(n), hamiltonian_vector_field_selftest(s), "standard (J, omega)");
    auto flipped_j = s;
    flipped_j.J = -s.J;
    add("conventions n=" + std::to_string(n) + " rejects -J", !hamiltonian_vector_field_selftest(flipped_j), "");
    auto flipped_w = s;
    flipped_w.omega_matrix = -s.omega_matrix;
    add("conventions n=" + std::to_string(n) + " rejects -omega", !hamiltonian_vector_field_selftest(flipped_w), "");
  }

  TheoremOptions opt;
  opt.steps = steps;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (double lambda : {1.0, 5.0, 7.0, 13.0, 20.0}) {
    const auto S = HessianPath::constant(-lambda * Matrix::Identity(2, 2), Definiteness::negative_definite);
    const int expect = 2 * int(std::floor(lambda / two_pi));
    std::string detail;
    bool ok = true;
    try {
      const auto path = integrate(S, 0.0, 1.0, steps);
      const auto cs = find_crossings(path, Window{0.0, 1.0}, opt.crossing);
      ok = int(cs.size()) * 2 == expect;
      for (std::size_t k = 0; k < cs.size() && ok; ++k)
        ok = std::abs(cs[k].time - two_pi * double(k + 1) / lambda) < 1e-8 && cs[k].multiplicity == 2;
      const auto rep = analyze_extremizer(S, opt);
      ok = ok && rep.morse_index == expect && rep.cz_interval.halves == -2L * expect && rep.morse_index == rep.cz_difference;
      detail = "morse " + std::to_string(rep.morse_index) + ", expected " + std::to_string(expect);
    } catch (const Error& e) {
      ok = false;
      detail = e.what();
    }
    char name[64];
    std::snprintf(name, sizeof name, "planar rotation lambda=%g", lambda);
    add(name, ok, detail);
  }

  {
    const auto S = direct_sum(HessianPath::constant(-7.0 * Matrix::Identity(2, 2), Definiteness::negative_definite),
                              HessianPath::constant(-13.0 * Matrix::Identity(2, 2), Definiteness::negative_definite));
    bool ok = false;
    std::string detail;
    try {
      const int m = morse_index(S, opt);
      ok = m == 6;
      detail = "morse " + std::to_string(m) + ", expected 6";
    } catch (const Error& e) {
      detail = e.what();
    }
    add("block sum (-7, -13)", ok, detail);
  }

  {
    bool ok = false;
    std::string detail;
    try {
      const auto rep = verify_theorem(sphere_height_scenario(7.0), opt);
      ok = rep.verdict && rep.morse_index_plus == 2 && rep.morse_index_minus == 2;
      detail = "lhs " + std::to_string(rep.theorem_lhs) + ", rhs " + std::to_string(rep.theorem_rhs);
    } catch (const Error& e) {
      detail = e.what();
    }
    add("sphere height lambda=7", ok, detail);
  }

  {
    bool ok = false;
    try {
      verify_theorem(sphere_height_scenario(two_pi), opt);
    } catch (const DegenerateError&) {
      ok = true;
    } catch (const Error&) {
    }
    add("sphere height lambda=2pi flagged degenerate", ok, "");
  }
  return out;
}

}  // namespace czlab::cli
