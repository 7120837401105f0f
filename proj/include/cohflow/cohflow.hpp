#pragma once

// Umbrella header.

#include "cohflow/channels.hpp"
#include "cohflow/linalg.hpp"
#include "cohflow/measures.hpp"
#include "cohflow/oracles.hpp"
#include "cohflow/states.hpp"
#include "cohflow/sweep.hpp"
