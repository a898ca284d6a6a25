#pragma once

#include "zsnft/mat2.hpp"

namespace zsnft {

/// log Gamma(z) for complex z (Lanczos approximation, reflection for
/// Re z < 0.5). The imaginary part may differ from the principal branch by
/// multiples of 2*pi; callers exponentiate sums of these, so only the value
/// mod 2*pi*i matters.
Cx log_gamma(Cx z);

/// log(sin(pi z)) evaluated stably for large |Im z|.
Cx log_sin_pi(Cx z);

}  // namespace zsnft
