// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "smoothdiv/divergence.hpp"
#include "smoothdiv/duality.hpp"
#include "smoothdiv/generator.hpp"
#include "smoothdiv/io.hpp"
#include "smoothdiv/lasso.hpp"
#include "smoothdiv/rng.hpp"
#include "smoothdiv/summation.hpp"
#include "smoothdiv/sweeps.hpp"
#include "smoothdiv/vec.hpp"
