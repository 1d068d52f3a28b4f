// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace qcomp {

/// Error categories used across the library. The last group marks internal
/// faults: conditions that a theorem guarantees cannot happen on valid
/// input, so hitting one means the library itself is broken.
enum class errc {
  division_by_zero,
  field_mismatch,
  field_too_large,
  form_mismatch,
  not_symmetric,
  isotropic_vector,
  factorization_failed,
  search_exhausted,
  nontrivial_discriminant,
  not_hyperbolic,
  bad_parity,
  not_pointed,
  not_unital,
  no_norm_one_vector,
  relation_violation,
  not_in_multiplier_group,
  not_in_go,
  not_in_omega,
  not_autotopy,
  polarization_mismatch,
  bad_input,
  // internal faults
  inconsistent,
  rank_deficient,
  intertwiner_not_found,
};

const char* errc_name(errc c) noexcept;
bool errc_is_internal_fault(errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw Error(code, what);
}

inline void check(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace qcomp
