// Convenience umbrella header.

#pragma once

#include "fieldcmp/analysis.hpp"
#include "fieldcmp/bell.hpp"
#include "fieldcmp/direction.hpp"
#include "fieldcmp/errors.hpp"
#include "fieldcmp/fields.hpp"
#include "fieldcmp/gates.hpp"
#include "fieldcmp/locc.hpp"
#include "fieldcmp/protocol.hpp"
#include "fieldcmp/rng.hpp"
#include "fieldcmp/state.hpp"
