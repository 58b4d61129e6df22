// geamk.hpp: umbrella header

#pragma once

#include "geamk/types.hpp"
#include "geamk/random.hpp"
#include "geamk/operator_basis.hpp"
#include "geamk/geam.hpp"
#include "geamk/superoperator.hpp"
#include "geamk/map_builder.hpp"
#include "geamk/positivity.hpp"
#include "geamk/witness_lab.hpp"
#include "geamk/fixtures.hpp"
#include "geamk/io.hpp"
