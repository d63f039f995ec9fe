#pragma once

// Umbrella header: survival probabilities, efficiency ratio and optimal
// repetition count for 5-qubit error-corrected storage whose encode/decode
// stages suffer random-duration (timing) noise.

#include "matrix2.hpp"
#include "qstate.hpp"
#include "lindblad.hpp"
#include "randomtime.hpp"
#include "survival.hpp"
#include "oracles.hpp"
#include "scan.hpp"
#include "validate.hpp"
