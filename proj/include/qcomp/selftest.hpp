// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcomp/field.hpp"

namespace qcomp {

/// One acceptance criterion: an exact property batch with an optional
/// runtime budget. All arithmetic is exact, so the tolerance everywhere is
/// exact equality.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct SelftestReport {
  std::vector<CriterionResult> criteria;
  bool all_pass = false;
  double total_seconds = 0;
};

std::vector<FieldSpec> default_fields();

/// Runs the twelve acceptance criteria over the requested fields.
/// Deterministic given (fields, seed). jobs > 1 evaluates per-field work
/// concurrently; the report order is independent of scheduling.
SelftestReport run_selftest(const std::vector<FieldSpec>& fields,
                            std::uint64_t seed = 1729, int jobs = 1,
                            long bound = 25);

}  // namespace qcomp
