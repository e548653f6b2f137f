#pragma once

#include "phimod/errors.hpp"
#include "phimod/rational.hpp"
#include "phimod/matrix.hpp"
#include "phimod/subspace.hpp"
#include "phimod/polynomial.hpp"
#include "phimod/factor.hpp"
#include "phimod/slopes.hpp"
#include "phimod/module.hpp"
#include "phimod/admissibility.hpp"
#include "phimod/dichotomy.hpp"
#include "phimod/endo.hpp"
#include "phimod/io.hpp"
#include "phimod/report.hpp"
