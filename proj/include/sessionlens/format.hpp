/*
 * Copyright 2026 The sessionlens Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sessionlens {

// Every real number written to an output file goes through these two, which
// fixes output at 9 significant digits.
std::string format_real(double v);
double round_significant(double v);

// RFC 4180 quoting, applied only when the field needs it.
std::string csv_field(std::string_view v);

// Splits one CSV record (no embedded newlines) honoring quotes.
std::vector<std::string> split_csv(std::string_view line);

}  // namespace sessionlens
