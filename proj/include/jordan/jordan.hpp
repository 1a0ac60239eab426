#pragma once

#include "jordan/errors.hpp"
#include "jordan/geometry.hpp"
#include "jordan/curve.hpp"
#include "jordan/carrier_index.hpp"
#include "jordan/jordan_curve.hpp"
#include "jordan/parallel.hpp"
#include "jordan/winding.hpp"
#include "jordan/ray_crossing.hpp"
#include "jordan/classify.hpp"
#include "jordan/connectivity.hpp"
#include "jordan/curve_json.hpp"
#include "jordan/grid.hpp"
#include "jordan/svg.hpp"
#include "jordan/fixtures.hpp"
