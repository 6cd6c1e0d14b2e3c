#pragma once

#include "curvelab/acp.hpp"
#include "curvelab/curve.hpp"
#include "curvelab/digest.hpp"
#include "curvelab/discontinuity.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/forge.hpp"
#include "curvelab/hausdorff.hpp"
#include "curvelab/levels.hpp"
#include "curvelab/lipschitz.hpp"
#include "curvelab/metric_space.hpp"
#include "curvelab/verify.hpp"
#include "curvelab/witnesses.hpp"
