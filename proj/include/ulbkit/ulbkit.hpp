#pragma once

#define ULBKIT_VERSION "0.1.0"

#include "ulbkit/asymptotics.hpp"
#include "ulbkit/designbounds.hpp"
#include "ulbkit/error.hpp"
#include "ulbkit/levenshtein.hpp"
#include "ulbkit/oracle.hpp"
#include "ulbkit/orthopoly.hpp"
#include "ulbkit/parallel.hpp"
#include "ulbkit/pmspace.hpp"
#include "ulbkit/polynomial.hpp"
#include "ulbkit/potentials.hpp"
#include "ulbkit/ulb.hpp"

namespace ulbkit {

inline constexpr const char* version() { return ULBKIT_VERSION; }

}  // namespace ulbkit
