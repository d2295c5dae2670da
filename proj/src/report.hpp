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

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "sweep.hpp"

namespace qkdps {

const std::vector<std::string>& csv_columns();

// Header plus one line per row. Numbers use the classic locale and 17
// significant digits, so parsing the file returns the same doubles.
void emit_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_csv(const std::string& path, const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_csv(std::istream& in);
std::vector<SweepRow> read_csv(const std::string& path);

// Key rate against distance on a log axis, one polyline per mode. Zero
// rates are left out; a mode with no positive rate draws nothing.
void emit_svg(std::ostream& out, const std::vector<SweepRow>& rows);
void write_svg(const std::string& path, const std::vector<SweepRow>& rows);

}  // namespace qkdps
