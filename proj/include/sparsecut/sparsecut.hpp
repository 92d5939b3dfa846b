#ifndef SPARSECUT_SPARSECUT_HPP
#define SPARSECUT_SPARSECUT_HPP

#include "sparsecut/combdiam.hpp"
#include "sparsecut/generate.hpp"
#include "sparsecut/instance.hpp"
#include "sparsecut/json_io.hpp"
#include "sparsecut/lifting.hpp"
#include "sparsecut/markov.hpp"
#include "sparsecut/oracle.hpp"
#include "sparsecut/rounding.hpp"
#include "sparsecut/shallow.hpp"
#include "sparsecut/simplex.hpp"
#include "sparsecut/treedec.hpp"

#endif
