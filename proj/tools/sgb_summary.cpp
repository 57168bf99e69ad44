// Reads an experiment CSV (file argument or stdin) and prints its summary line.
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "sgb/cli_io.hpp"
#include "sgb/error.hpp"

int main(int argc, char** argv) {
  if (argc > 2) {
    std::cerr << "usage: sgb-summary [experiment.csv]\n";
    return 2;
  }
  std::string text;
  if (argc == 2) {
    std::ifstream in(argv[1], std::ios::binary);
    if (!in) {
      std::cerr << "cannot read " << argv[1] << "\n";
      return 2;
    }
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  }
  try {
    auto records = sgb::parse_csv(text);
    std::cout << sgb::format_summary(sgb::summarize(records)) << "\n";
  } catch (const sgb::ParseError& e) {
    std::cerr << "error: line " << e.line() << ", column " << e.column() << ": " << e.what()
              << "\n";
    return 1;
  }
  return 0;
}
