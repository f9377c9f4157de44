// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TORUSFLOW_TORUSFLOW_HPP
#define TORUSFLOW_TORUSFLOW_HPP

#include "torusflow/common.hpp"
#include "torusflow/field_io.hpp"
#include "torusflow/flow.hpp"
#include "torusflow/group_word.hpp"
#include "torusflow/integrator.hpp"
#include "torusflow/lifted_map.hpp"
#include "torusflow/manifest.hpp"
#include "torusflow/ode.hpp"
#include "torusflow/report_io.hpp"
#include "torusflow/rotation.hpp"
#include "torusflow/step_forcing.hpp"
#include "torusflow/synthesis.hpp"
#include "torusflow/tongues.hpp"
#include "torusflow/trig_poly.hpp"
#include "torusflow/word_flow.hpp"

#endif
