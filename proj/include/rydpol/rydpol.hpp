#pragma once

#include "rydpol/collision.hpp"
#include "rydpol/constants.hpp"
#include "rydpol/eit.hpp"
#include "rydpol/errors.hpp"
#include "rydpol/numerics.hpp"
#include "rydpol/potential.hpp"
#include "rydpol/rydberg.hpp"
