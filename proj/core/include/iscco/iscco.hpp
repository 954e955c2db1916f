// SPDX-License-Identifier: Apache-2.0
//
// iscco - beamforming for integrated sensing and over-the-air computation
// Copyright (C) 2026 The iscco authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "iscco/aircomp.hpp"
#include "iscco/beamform.hpp"
#include "iscco/conic.hpp"
#include "iscco/error.hpp"
#include "iscco/harness.hpp"
#include "iscco/linalg.hpp"
#include "iscco/localization.hpp"
#include "iscco/model.hpp"
#include "iscco/rng.hpp"
#include "iscco/scenario_io.hpp"
#include "iscco/sensing.hpp"
