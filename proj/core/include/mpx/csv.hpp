// Copyright 2026 The mpx Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mpx::csv {

using Row = std::vector<std::string>;

// RFC 4180 reader. Accepts CRLF or LF line endings, a UTF-8 BOM, and a
// missing final newline. Rows consisting of a single empty field (blank
// lines) are skipped. Throws IngestError(kMalformedCsv) on an unterminated
// quoted field or stray characters after a closing quote.
std::vector<Row> parse(std::string_view text);

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

// Joins escaped fields with commas. No line terminator is appended.
std::string format_row(const Row& fields);

}  // namespace mpx::csv
