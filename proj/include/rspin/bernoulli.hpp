#pragma once

#include "rspin/rational.hpp"

namespace rspin {

/// Bernoulli number B_k = B_k(0) (so B_1 = -1/2). Memoized, thread-safe.
Rat bernoulli_number(unsigned k);

/// Bernoulli polynomial B_k(v), the coefficient of w^k/k! in
/// w e^{wv} / (e^w - 1).
Rat bernoulli_poly(unsigned k, const Rat& v);

}  // namespace rspin
