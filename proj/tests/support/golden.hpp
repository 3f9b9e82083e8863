#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace fermat::testing {

// Compares against tests/golden/<name>. With FERMAT_UPDATE_GOLDEN set the
// file is rewritten instead.
inline ::testing::AssertionResult matches_golden(const std::string& name, const std::string& text) {
  const std::string path = std::string(FERMAT_GOLDEN_DIR) + "/" + name;
  if (std::getenv("FERMAT_UPDATE_GOLDEN")) {
    std::ofstream(path) << text;
    return ::testing::AssertionSuccess();
  }
  std::ifstream in(path);
  if (!in) return ::testing::AssertionFailure() << "missing golden file " << path;
  std::stringstream ss;
  ss << in.rdbuf();
  if (ss.str() == text) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "output differs from " << path << "\n--- got ---\n" << text;
}

}  // namespace fermat::testing
