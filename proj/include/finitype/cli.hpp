// cli.hpp
// Command line front end: analyze, rescale, formulas.
#ifndef FINITYPE_CLI_HPP
#define FINITYPE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace finitype::cli {

// Exit codes.
enum Exit : int {
  kOk = 0,
  kInvalidInput = 1,    // parse or validation error
  kResourceLimit = 2,   // CapExceeded, BudgetExceeded, PathExplosion
  kInternal = 3,        // oracle mismatch, broken invariants
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// FINITYPE_THREADS if set and positive, otherwise hardware concurrency.
unsigned worker_count();

// Write to a temporary sibling and rename over the target.
void write_atomically(const std::string& path, const std::string& content);

}  // namespace finitype::cli

#endif  // FINITYPE_CLI_HPP
