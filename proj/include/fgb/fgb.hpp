#pragma once

// Umbrella header for the fuzzy granular-ball clustering library.

#include "fgb/core.hpp"
#include "fgb/fcm.hpp"
#include "fgb/ballgen.hpp"
#include "fgb/connect.hpp"
#include "fgb/metrics.hpp"
#include "fgb/csv.hpp"
#include "fgb/blobs.hpp"
#include "fgb/run.hpp"
