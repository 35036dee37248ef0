#pragma once

#include "fdyn/analysis.hpp"
#include "fdyn/complex_core.hpp"
#include "fdyn/fji.hpp"
#include "fdyn/flow.hpp"
#include "fdyn/fmi.hpp"
#include "fdyn/maps.hpp"
#include "fdyn/parallel.hpp"
#include "fdyn/verify.hpp"
