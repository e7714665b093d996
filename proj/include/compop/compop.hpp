#pragma once

#include "compop/errors.hpp"
#include "compop/special_fn.hpp"
#include "compop/multiindex.hpp"
#include "compop/spaces.hpp"
#include "compop/maps.hpp"
#include "compop/sequences.hpp"
#include "compop/oracle.hpp"
#include "compop/diagnostics.hpp"
#include "compop/io.hpp"
#include "compop/verify.hpp"
