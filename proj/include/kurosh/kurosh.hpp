#pragma once

#include "kurosh/core.hpp"
#include "kurosh/factor_group.hpp"
#include "kurosh/lcg.hpp"
#include "kurosh/factor_subgroup.hpp"
#include "kurosh/word.hpp"
#include "kurosh/quotient_graph.hpp"
#include "kurosh/intersect.hpp"
#include "kurosh/preorders.hpp"
#include "kurosh/pl_map.hpp"
#include "kurosh/dynamics.hpp"
