#ifndef DEFORM_DEFORM_HPP
#define DEFORM_DEFORM_HPP

// Umbrella header for the deformed exponential state-family toolkit.

#include "deform/errors.hpp"
#include "deform/scalar.hpp"
#include "deform/hermitian.hpp"
#include "deform/rng.hpp"
#include "deform/report.hpp"
#include "deform/state.hpp"
#include "deform/monotonicity.hpp"
#include "deform/io.hpp"
#include "deform/verify.hpp"

#endif // DEFORM_DEFORM_HPP
