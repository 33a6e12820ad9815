#pragma once

// Umbrella header.
#include "tdpm/dataset.hpp"
#include "tdpm/error.hpp"
#include "tdpm/isomap.hpp"
#include "tdpm/mds.hpp"
#include "tdpm/metrics.hpp"
#include "tdpm/neighbors.hpp"
#include "tdpm/pipeline.hpp"
#include "tdpm/tangent.hpp"
#include "tdpm/types.hpp"
