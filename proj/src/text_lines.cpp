#include "text_lines.hpp"

#include <cctype>
#include <sstream>

namespace coopsynt::detail {

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    Line line;
    line.number = number;
    line.raw = raw;
    std::size_t k = 0;
    while (k < raw.size()) {
      unsigned char c = static_cast<unsigned char>(raw[k]);
      if (std::isspace(c)) {
        ++k;
        continue;
      }
      Token tok;
      tok.line = number;
      tok.column = static_cast<int>(k) + 1;
      if (c == '{' || c == '}') {
        tok.text = std::string(1, static_cast<char>(c));
        ++k;
      } else {
        std::size_t start = k;
        while (k < raw.size() && !std::isspace(static_cast<unsigned char>(raw[k])) && raw[k] != '{' &&
               raw[k] != '}')
          ++k;
        tok.text = raw.substr(start, k - start);
      }
      line.tokens.push_back(std::move(tok));
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace coopsynt::detail
