#pragma once

#include "fractorus/core.hpp"
#include "fractorus/spectral.hpp"
#include "fractorus/kernels.hpp"
#include "fractorus/signals.hpp"
#include "fractorus/approx.hpp"
#include "fractorus/analysis.hpp"
#include "fractorus/pde.hpp"
