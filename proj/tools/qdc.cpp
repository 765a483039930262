#include <qdc/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
  return qdc::cli::run(argc, argv, std::cout, std::cerr);
}
