#ifndef AZTEC_VERIFY_HPP
#define AZTEC_VERIFY_HPP

#include <string>
#include <vector>

namespace aztec {

struct CriterionResult {
  std::string id;
  bool pass = false;
  std::string details;
  double seconds = 0.0;
};

// Suites: "exact" = {P1,P2,P3,P7,P9}, "asymptotic" = {P4,P5,P6,P8,P11},
// "trend" = {P10}, "all" = everything.
std::vector<std::string> suite_ids(const std::string& suite);

CriterionResult run_criterion(const std::string& id, int threads = 1, bool verbose = false);

}  // namespace aztec

#endif
