#pragma once

#include "dgnerve/sampler.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dgn {

struct SweepFailure {
  std::string stage;
  std::uint64_t trial = 0;
  std::string message;
};

struct GpOptions {
  // Ideal ranks used for the lifting round-trip when the category is over the rationals.
  std::vector<std::size_t> lift_ranks{1, 2};
  bool lift = true;
};

struct GpReport {
  int n = 0, k = 0;
  std::uint64_t seed = 0, trials = 0;
  std::uint64_t filled = 0, lifted = 0, plain_inner = 0;
  // Witness searches made while filling inner horns; must stay 0.
  std::uint64_t inner_witness_calls = 0;
  std::vector<SweepFailure> failures;

  bool ok() const { return failures.empty() && inner_witness_calls == 0; }
};

// Trial t draws from Rng(seed_seq{seed, t}). Throws std::invalid_argument unless 2 <= n and
// 0 <= k <= n.
GpReport check_gp(const DgCategory& c, int n, int k, std::uint64_t trials, std::uint64_t seed,
                  const GpOptions& options = {});

struct LawCount {
  std::string law;
  std::uint64_t passed = 0, failed = 0;
  std::uint64_t first_failing_trial = 0;
};

struct LawReport {
  std::uint64_t seed = 0, trials = 0;
  std::vector<LawCount> laws;
  std::vector<SweepFailure> failures;  // first few, for diagnosis

  bool ok() const;
};

// d∘d = 0 and Leibniz on random cochains for n = 1..max_n, associativity of cochain
// composition, and the obstruction identities on sampled horns.
LawReport run_laws(const DgCategory& c, std::uint64_t trials, std::uint64_t seed, int max_n = 4,
                   const SignPattern& signs = kPinnedPattern);

}  // namespace dgn
