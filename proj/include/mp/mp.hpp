#pragma once

#include "mp/arith.hpp"
#include "mp/context.hpp"
#include "mp/convio.hpp"
#include "mp/elem.hpp"
#include "mp/error.hpp"
#include "mp/number.hpp"
#include "mp/special.hpp"
