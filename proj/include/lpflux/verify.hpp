#ifndef LPFLUX_VERIFY_HPP
#define LPFLUX_VERIFY_HPP

#include <cstdint>
#include <vector>

#include "lpflux/reports.hpp"

namespace lpflux {

// Named check bundles behind `verify --suite ...`. Each returns one result
// per check; a failed check names itself in the report.
std::vector<CheckResult> verify_identities(std::uint64_t seed);
std::vector<CheckResult> verify_oracle(std::uint64_t seed);
std::vector<CheckResult> verify_examples(std::uint64_t seed);
std::vector<CheckResult> verify_locality(std::uint64_t seed);
std::vector<CheckResult> verify_bilinear(std::uint64_t seed);
std::vector<CheckResult> verify_suite(const std::string& name, std::uint64_t seed);

} // namespace lpflux

#endif
