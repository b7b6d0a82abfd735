#pragma once

#include "steinitz/arith.hpp"
#include "steinitz/classgroup.hpp"
#include "steinitz/cyclo.hpp"
#include "steinitz/errors.hpp"
#include "steinitz/lgroups.hpp"
#include "steinitz/realizable.hpp"
#include "steinitz/verify.hpp"
#include "steinitz/wgroups.hpp"

namespace steinitz {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace steinitz
