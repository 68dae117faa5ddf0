// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "typdec/asts.hpp"
#include "typdec/baselines.hpp"
#include "typdec/context.hpp"
#include "typdec/core.hpp"
#include "typdec/embed.hpp"
#include "typdec/lts.hpp"
#include "typdec/metrics.hpp"
#include "typdec/providers.hpp"
#include "typdec/rng.hpp"
#include "typdec/sampler.hpp"
#include "typdec/simlm.hpp"
