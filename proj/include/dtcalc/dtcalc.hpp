#pragma once

#include "dtcalc/cyclotomic.hpp"
#include "dtcalc/dcritical.hpp"
#include "dtcalc/errors.hpp"
#include "dtcalc/hlaurent.hpp"
#include "dtcalc/matrix.hpp"
#include "dtcalc/monodromy.hpp"
#include "dtcalc/poly.hpp"
#include "dtcalc/quadform.hpp"
#include "dtcalc/scalar.hpp"
#include "dtcalc/symplectic.hpp"
#include "dtcalc/vanishing.hpp"
