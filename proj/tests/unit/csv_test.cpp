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

#include "mpx/csv.hpp"

#include <gtest/gtest.h>

#include "mpx/errors.hpp"
#include "mpx/random.hpp"

namespace mpx::csv {
namespace {

TEST(Csv, QuotedFieldsWithSeparatorsAndNewlines) {
  auto rows = parse("a,b,c\r\n\"x, y\",\"say \"\"hi\"\"\",\"two\nlines\"\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1], (Row{"x, y", "say \"hi\"", "two\nlines"}));
}

TEST(Csv, EmptyFieldsBomAndMissingFinalNewline) {
  auto rows = parse("\xEF\xBB\xBFh1,h2\n,\n\nlast,row");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0][0], "h1");
  EXPECT_EQ(rows[1], (Row{"", ""}));
  EXPECT_EQ(rows[2], (Row{"last", "row"}));
}

TEST(Csv, MalformedInputIsRejected) {
  EXPECT_THROW(parse("a,\"open\n"), IngestError);
  EXPECT_THROW(parse("\"closed\"x,b\n"), IngestError);
}

TEST(Csv, FormatThenParseIsIdentity) {
  Rng rng(7);
  const std::string alphabet = "ab ,\"\n\r;x";
  for (int trial = 0; trial < 200; ++trial) {
    Row row;
    const std::size_t n = 1 + rng.uniform_index(5);
    for (std::size_t i = 0; i < n; ++i) {
      std::string f;
      const std::size_t len = rng.uniform_index(6);
      for (std::size_t c = 0; c < len; ++c) f.push_back(alphabet[rng.uniform_index(alphabet.size())]);
      row.push_back(f);
    }
    // A lone empty field is indistinguishable from a blank line.
    if (row.size() == 1 && row[0].empty()) continue;
    auto parsed = parse(format_row(row) + "\n");
    ASSERT_EQ(parsed.size(), 1u);
    EXPECT_EQ(parsed[0], row);
  }
}

}  // namespace
}  // namespace mpx::csv
