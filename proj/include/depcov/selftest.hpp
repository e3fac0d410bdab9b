#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace depcov {

struct SelftestOptions {
  /// Added to every fast-path value before it is compared with its oracle.
  /// Nonzero values exist to prove that the suite can fail.
  double perturbation = 0.0;
  std::uint64_t seed = 20240611;
};

struct SelftestCase {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelftestReport {
  std::vector<SelftestCase> cases;
  std::size_t passed() const;
  std::size_t failed() const;
};

/// Fast invariant suite: oracle equivalences at n <= 8, serial/parallel
/// agreement, metric axioms of the exact solvers, degeneracy checks and
/// fixed bound values. Runs in a few seconds.
SelftestReport run_selftest(const SelftestOptions& options = {});

}  // namespace depcov
