#pragma once

#include "cpos/area_parallels.hpp"
#include "cpos/equidistants.hpp"
#include "cpos/evolute.hpp"
#include "cpos/io.hpp"
#include "cpos/midpoint_chords.hpp"
#include "cpos/pd_transform.hpp"
#include "cpos/polygon.hpp"
#include "cpos/projection.hpp"
#include "cpos/scene.hpp"
#include "cpos/svg.hpp"
#include "cpos/theorems.hpp"
