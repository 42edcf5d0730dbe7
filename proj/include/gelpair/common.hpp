#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gelpair {

using Point = std::uint16_t;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (group files, tables, cyclotomic expressions).
struct parse_error : error {
  using error::error;
};

// Structural problems in otherwise well-formed data (order mismatch,
// failed membership, broken orthogonality, ...).
struct data_error : error {
  using error::error;
};

// A configured compute budget was exceeded.  The message names the
// ingestion path as the alternative for out-of-budget groups.
struct budget_error : error {
  using error::error;
};

struct degree_mismatch : data_error {
  degree_mismatch() : data_error("permutation degree mismatch") {}
};

// Compute budgets.  Defaults per the classifier's operating envelope;
// overridable through the CLI config file.
struct Budgets {
  std::uint64_t max_order = 1000000000;    // largest group order computed from scratch
  std::size_t max_classes = 30;            // largest number of conjugacy classes
  std::uint64_t max_index = 1000000;       // largest coset action index
  std::uint64_t lattice_budget = 5000;     // largest order for full-lattice enumeration
  std::uint64_t class_enum_budget = 10000000;  // largest conjugacy class enumerated
};

}  // namespace gelpair
