#pragma once

// Umbrella header for the cold-standby reliability library.

#include "gldrel/errors.hpp"
#include "gldrel/gld.hpp"
#include "gldrel/io.hpp"
#include "gldrel/mcsim.hpp"
#include "gldrel/quadrature.hpp"
#include "gldrel/rng.hpp"
#include "gldrel/sensitivity.hpp"
#include "gldrel/specfun.hpp"
#include "gldrel/sumdist.hpp"
#include "gldrel/sysrel.hpp"
#include "gldrel/verify.hpp"

namespace gldrel {

inline constexpr const char* kVersion = "1.0.0";

} // namespace gldrel
