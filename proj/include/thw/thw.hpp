#pragma once

#include "thw/canonical.hpp"
#include "thw/fpt.hpp"
#include "thw/graph.hpp"
#include "thw/graph_io.hpp"
#include "thw/oracle.hpp"
#include "thw/partitioned.hpp"
#include "thw/rank.hpp"
#include "thw/search.hpp"
#include "thw/threshold.hpp"
#include "thw/witness.hpp"
