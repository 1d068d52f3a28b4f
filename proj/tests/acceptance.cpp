// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0
//
// The acceptance gate: runs every criterion over the default fields at
// exact-equality tolerance and prints one pass/fail line per criterion.

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "qcomp/selftest.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 1729;
  int jobs = 1;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
      seed = std::strtoull(argv[++i], nullptr, 10);
    if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc)
      jobs = std::atoi(argv[++i]);
  }
  qcomp::SelftestReport rep =
      qcomp::run_selftest(qcomp::default_fields(), seed, jobs);
  for (const qcomp::CriterionResult& c : rep.criteria)
    std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": "
              << c.name << " (" << c.detail << ") [" << c.seconds << "s]\n";
  std::cout << (rep.all_pass ? "PASS" : "FAIL") << " acceptance suite in "
            << rep.total_seconds << "s (seed " << seed << ")\n";
  return rep.all_pass ? 0 : 1;
}
