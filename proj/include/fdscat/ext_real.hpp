#pragma once

namespace fdscat
{

/// Extended-precision real (113-bit significand) used to polish quadrature
/// nodes so the double copies are correctly rounded. Arithmetic only; no
/// library functions are needed.
using ext_real = __float128;

} // namespace fdscat
