#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "geomix/error.hpp"
#include "geomix/tolerance.hpp"
#include "geomix_cli/report.hpp"

namespace geomix::cli {

// Exit codes: 0 success, 1 self-test failure, 2 usage or invalid input,
// 3 numerical consistency failure, 4 precision floor reached.
int exit_code(ErrorKind kind) noexcept;

struct InvoluteOptions {
  std::string measure;
  int grid = 50;
};
Report cmd_involute(const InvoluteOptions& o, const Tolerance& tol);

struct RenewalOptions {
  std::string measure;
  int n_max = 50;
  bool oracle = false;
};
Report cmd_renewal(const RenewalOptions& o, const Tolerance& tol);

struct PolymerOptions {
  std::string measure;
  double beta = 0;
  int n_max = 50;
  bool oracle = false;
};
Report cmd_polymer(const PolymerOptions& o, const Tolerance& tol);

struct CorrlenOptions {
  std::string measure;
  double b = 0.5;
  std::vector<int> window;  // {N_hi} or {N_lo, N_hi}; empty means N_hi = 200
};
Report cmd_corrlen(const CorrlenOptions& o, const Tolerance& tol);

struct ContinuousOptions {
  std::string measure;
  std::vector<double> x_grid;
  bool oracle = false;
  int k_max = 60;
};
Report cmd_continuous(const ContinuousOptions& o, const Tolerance& tol);

struct ArcsineOptions {
  double v = 0.5;
  double beta = 0;
  int n_max = 50;
  int grid = 0;  // density samples on (0, 1); 0 for none
};
Report cmd_arcsine(const ArcsineOptions& o, const Tolerance& tol);

// Runs the acceptance criteria (all when `only` is 0), writing one line each as it
// finishes. Returns true iff every criterion that ran passed.
bool cmd_selftest(int only, std::ostream& out);

}  // namespace geomix::cli
