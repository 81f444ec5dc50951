#pragma once

#include "rootbound/alignment.hpp"
#include "rootbound/bounds.hpp"
#include "rootbound/errors.hpp"
#include "rootbound/fuzz.hpp"
#include "rootbound/polynomial.hpp"
#include "rootbound/rng.hpp"
#include "rootbound/roots.hpp"
#include "rootbound/scalar.hpp"
