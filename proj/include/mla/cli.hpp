#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mla {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

// Environment variable consulted by `generate` when --seed is absent.
inline constexpr const char* kSeedEnvVar = "MLA_SEED";

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mla
