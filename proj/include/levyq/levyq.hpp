#pragma once

#include "levyq/asymptotics.hpp"
#include "levyq/core.hpp"
#include "levyq/distributions.hpp"
#include "levyq/levy_core.hpp"
#include "levyq/monotone_map.hpp"
#include "levyq/oracle.hpp"
#include "levyq/quadrature.hpp"
#include "levyq/quantizer.hpp"
#include "levyq/rational.hpp"
#include "levyq/special.hpp"
