#include <iostream>

#include "tweetspam/cli.hpp"

int main(int argc, char** argv) {
  return tweetspam::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
