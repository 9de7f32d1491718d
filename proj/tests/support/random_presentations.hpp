#pragma once

// Random small presentations with d^2 = 0 by construction: generators are
// added one at a time with d(g) a random cocycle of the algebra built so far,
// and relations are random cocycles (so the ideal is d-stable).

#include "cdga/presentation.hpp"

#include <cstdint>

namespace oracle {

struct RandomPresentation {
  cdga::Presentation presentation;
  int max_degree = 0;
};

/// Deterministic in the seed; total free dimension up to max_degree+1 stays <= budget.
RandomPresentation random_presentation(std::uint32_t seed, std::size_t budget = 50);

}  // namespace oracle
