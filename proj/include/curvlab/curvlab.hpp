#pragma once

#include "conditions.hpp"
#include "curvature.hpp"
#include "error.hpp"
#include "flow.hpp"
#include "frames.hpp"
#include "identities.hpp"
#include "io.hpp"
