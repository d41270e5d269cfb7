#pragma once

// Line-oriented corpus files: "f ; g" per line, '#' starts a comment.

#include <fstream>
#include <string>
#include <vector>

#include "njac/errors.hpp"

namespace njac {

struct CorpusEntry {
  int line = 0;
  std::string f, g;
};

inline std::vector<CorpusEntry> read_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError(ErrorKind::InvalidArgument, "cannot open corpus file '" + path + "'");
  std::vector<CorpusEntry> out;
  std::string text;
  for (int line = 1; std::getline(in, text); ++line) {
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto semi = text.find(';');
    if (semi == std::string::npos)
      throw DomainError(ErrorKind::SyntaxError, path + ":" + std::to_string(line) + ": expected 'f ; g'");
    out.push_back({line, text.substr(0, semi), text.substr(semi + 1)});
  }
  return out;
}

}  // namespace njac
