#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ff {

// Resource limits shared by all search routines.  Every limit is a hard cap:
// exceeding one raises CapError, which the CLI maps to exit code 3.
struct Caps {
  std::size_t elements = 1'000'000;  // max element count in a closure walk
  std::size_t lattice = 2000;        // max |G| for a full subgroup-lattice walk
  std::size_t aut = 1000;            // max |G| for automorphism-group search
  std::size_t budget = 1'000'000;    // generic node budget for category searches
};

// Process-wide settings, mutable so the CLI and tests can adjust them.
Caps& caps();

// Parse "elements=N,lattice=N,aut=N,budget=N" from the FUSIONFORGE_CAPS
// environment variable into caps().  Unknown keys raise ParseError.
void apply_caps_env();
void apply_caps_string(const std::string& text);

class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// CLI exit codes (kept here so library-level verdict helpers can name them).
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitCap = 3;
inline constexpr int kExitNotTame = 10;

}  // namespace ff
