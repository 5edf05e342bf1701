#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "sd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = sd::cli::dispatch(args);
  const bool to_file = result.exit_code != sd::cli::kError &&
                       std::find(args.begin(), args.end(), "--out") != args.end();
  if (result.exit_code == sd::cli::kError)
    std::cerr << result.output;
  else if (!to_file)
    std::cout << result.output;
  return result.exit_code;
}
