// Copyright 2026 The pairspace Authors
// SPDX-License-Identifier: Apache-2.0

/// @file pairspace.hpp
/// @brief Umbrella header for the numerical library (no JSON or CLI pieces).

#pragma once

#include "pairspace/configspace.hpp"
#include "pairspace/continuity.hpp"
#include "pairspace/equivalence.hpp"
#include "pairspace/expansion.hpp"
#include "pairspace/harmonics.hpp"
#include "pairspace/quadrature.hpp"
#include "pairspace/rotation.hpp"
#include "pairspace/vec3.hpp"
