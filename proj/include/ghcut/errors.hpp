#pragma once

#include <stdexcept>
#include <string>

namespace ghcut {

enum class errc {
  out_of_range_vertex,
  self_loop,
  duplicate_edge,
  nonpositive_capacity,
  non_total_grouping,
  empty_side,
  full_side,
  same_endpoints,
  empty_set,
  overlapping_sets,
  too_few_terminals,
  degree_below_threshold,
  invalid_phi,
  bad_parameter,
  verification_infeasible,
  missing_anchor,
  malformed_input,
  count_mismatch,
  unknown_vertex,
  non_spanning_tree,
};

// Input validation failure; `code` distinguishes the violated precondition.
class validation_error : public std::invalid_argument {
 public:
  validation_error(errc code, const std::string& what)
      : std::invalid_argument(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

// A contract the library asserts about its own intermediate state failed.
class invariant_violation : public std::logic_error {
 public:
  explicit invariant_violation(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) throw validation_error(code, what);
}

inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw invariant_violation(what);
}

}  // namespace ghcut
