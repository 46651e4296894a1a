#pragma once

// Umbrella header: curvature-integral bounds, pencil index regions, model
// Bergman densities, exact torus oracles, scene I/O, and the built-in
// validation suites.

#include "morse/bergman.hpp"
#include "morse/errors.hpp"
#include "morse/hermitian.hpp"
#include "morse/integrals.hpp"
#include "morse/pencil.hpp"
#include "morse/polynomial.hpp"
#include "morse/profile.hpp"
#include "morse/quadrature.hpp"
#include "morse/report.hpp"
#include "morse/scene.hpp"
#include "morse/scene_io.hpp"
#include "morse/selfcheck.hpp"
#include "morse/summation.hpp"
#include "morse/torus.hpp"
