#pragma once

#include "capmotion/capacity.hpp"
#include "capmotion/config.hpp"
#include "capmotion/curve.hpp"
#include "capmotion/errors.hpp"
#include "capmotion/experiments.hpp"
#include "capmotion/geometry.hpp"
#include "capmotion/harmonic.hpp"
#include "capmotion/io.hpp"
#include "capmotion/julia.hpp"
#include "capmotion/motion.hpp"
#include "capmotion/parallel.hpp"
#include "capmotion/reference.hpp"
#include "capmotion/rng.hpp"
#include "capmotion/svg.hpp"
#include "capmotion/version.hpp"
#include "capmotion/welding.hpp"
