// SPDX-License-Identifier: Apache-2.0
#pragma once

// Convenience umbrella: the whole library in one include.

#include <ristw/channel.hpp>
#include <ristw/config.hpp>
#include <ristw/csv.hpp>
#include <ristw/errors.hpp>
#include <ristw/heuristics.hpp>
#include <ristw/manifold.hpp>
#include <ristw/objective.hpp>
#include <ristw/rng.hpp>
#include <ristw/scenario.hpp>
#include <ristw/svg.hpp>
#include <ristw/sweep.hpp>
