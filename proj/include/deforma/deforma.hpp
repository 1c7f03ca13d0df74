#pragma once

#include "deforma/artin.hpp"
#include "deforma/bg_poisson.hpp"
#include "deforma/cochain_complex.hpp"
#include "deforma/combinatorics.hpp"
#include "deforma/davydov_yetter.hpp"
#include "deforma/dgla.hpp"
#include "deforma/error.hpp"
#include "deforma/forms.hpp"
#include "deforma/hochschild.hpp"
#include "deforma/hopf.hpp"
#include "deforma/lie.hpp"
#include "deforma/matrix.hpp"
#include "deforma/mc.hpp"
#include "deforma/polynomial.hpp"
#include "deforma/rational.hpp"
#include "deforma/tower.hpp"
