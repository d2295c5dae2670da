/*
 * Copyright (c) 2026 The qkdps Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <random>

#include "linalg.hpp"

namespace qkdps {

using Rng = std::mt19937_64;

CVec random_vector(int dim, Rng& rng);       // Haar-random unit vector
CMat random_ginibre(int rows, int cols, Rng& rng);
CMat random_unitary(int dim, Rng& rng);      // Haar measure
DensityOp random_density(int dim, Rng& rng);  // Hilbert-Schmidt measure
DensityOp random_density_rank(int dim, int rank, Rng& rng);
HermOp random_hermitian(int dim, Rng& rng);
KrausChannel random_channel(int in_dim, int out_dim, int n_kraus, Rng& rng);

}  // namespace qkdps
