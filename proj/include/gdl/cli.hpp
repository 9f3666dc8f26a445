#pragma once

#include <string>
#include <vector>

namespace gdl::cli {

struct Outcome {
  int exit_code = 0;   // 0 ok, 1 domain error, 2 usage error
  std::string output;  // exactly one JSON document, newline terminated
};

/// Runs one command line (without the program name). --out also writes the
/// document to a file; the document is returned either way.
Outcome dispatch(const std::vector<std::string>& args);

}  // namespace gdl::cli
