// e2pi -- umbrella header.

#ifndef E2PI_E2PI_HPP
#define E2PI_E2PI_HPP

#include "e2pi/bernoulli.hpp"
#include "e2pi/constants.hpp"
#include "e2pi/decimal.hpp"
#include "e2pi/derivation.hpp"
#include "e2pi/elementary.hpp"
#include "e2pi/gamma.hpp"
#include "e2pi/hpreal.hpp"
#include "e2pi/products.hpp"
#include "e2pi/rational.hpp"
#include "e2pi/richardson.hpp"
#include "e2pi/sequences.hpp"

#endif  // E2PI_E2PI_HPP
