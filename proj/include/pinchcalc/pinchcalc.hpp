#pragma once

// Umbrella header.

#include "classify.hpp"
#include "core.hpp"
#include "invariants.hpp"
#include "oracle.hpp"
#include "pinch.hpp"
#include "scan.hpp"
