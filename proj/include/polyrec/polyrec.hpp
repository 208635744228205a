#pragma once

// Umbrella header.

#include "polyrec/rational.hpp"
#include "polyrec/polynomial.hpp"
#include "polyrec/recurrence.hpp"
#include "polyrec/moments.hpp"
#include "polyrec/roots.hpp"
#include "polyrec/limits.hpp"
#include "polyrec/tableaux.hpp"
#include "polyrec/serialize.hpp"
