// Umbrella header.
#pragma once

#include "qsep/error.hpp"
#include "qsep/linalg.hpp"
#include "qsep/unitaries.hpp"
#include "qsep/states.hpp"
#include "qsep/measures.hpp"
#include "qsep/element_formulas.hpp"
#include "qsep/werner.hpp"
#include "qsep/random.hpp"
#include "qsep/scan.hpp"
