#pragma once

#include <string>
#include <vector>

namespace coopsynt::detail {

struct Token {
  std::string text;
  int line = 0;
  int column = 0;  // 1-based
};

struct Line {
  int number = 0;
  std::string raw;  // without comment
  std::vector<Token> tokens;
};

// Splits on whitespace, strips '#' comments, makes '{' and '}' separate
// tokens. Blank lines are skipped.
std::vector<Line> tokenize(const std::string& text);

}  // namespace coopsynt::detail
