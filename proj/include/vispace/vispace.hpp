#pragma once

#include "vispace/config.hpp"
#include "vispace/csv.hpp"
#include "vispace/disk_model.hpp"
#include "vispace/experiments.hpp"
#include "vispace/geodesic.hpp"
#include "vispace/luneburg.hpp"
#include "vispace/manifold.hpp"
#include "vispace/svg.hpp"
