#pragma once

#include "params.hpp"
#include "special.hpp"
#include "quadrature.hpp"
#include "gauge.hpp"
#include "wavefield.hpp"
#include "finite_difference.hpp"
#include "eigenstates.hpp"
#include "operators.hpp"
#include "hall.hpp"
#include "oscillator.hpp"
#include "overlap.hpp"
#include "verification.hpp"
