/*
 * Copyright (C) 2026 The sunflower-spread Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SUNFLOWER_SUNFLOWER_HPP
#define SUNFLOWER_SUNFLOWER_HPP

#include "sunflower/bitset.hpp"
#include "sunflower/constructions.hpp"
#include "sunflower/error.hpp"
#include "sunflower/exact_sun.hpp"
#include "sunflower/extraction.hpp"
#include "sunflower/family.hpp"
#include "sunflower/family_io.hpp"
#include "sunflower/numeric.hpp"
#include "sunflower/probability.hpp"
#include "sunflower/rng.hpp"
#include "sunflower/serialize.hpp"
#include "sunflower/spread.hpp"

#endif  // SUNFLOWER_SUNFLOWER_HPP
