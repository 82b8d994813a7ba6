#pragma once

#include "bench.hpp"
#include "core.hpp"
#include "dp.hpp"
#include "generator.hpp"
#include "io.hpp"
#include "length_class.hpp"
#include "oracle.hpp"
#include "solvers.hpp"
#include "subinterval.hpp"
#include "swc.hpp"
