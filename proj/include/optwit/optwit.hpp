#pragma once

#include "optwit/certify.hpp"
#include "optwit/coordinate_io.hpp"
#include "optwit/dyadic.hpp"
#include "optwit/expectation.hpp"
#include "optwit/hermop.hpp"
#include "optwit/parallel.hpp"
#include "optwit/psi.hpp"
#include "optwit/spectrum.hpp"
#include "optwit/states.hpp"
