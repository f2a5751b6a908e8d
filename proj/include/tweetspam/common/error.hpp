#pragma once

#include <stdexcept>
#include <string>

namespace tweetspam {

// Base class for every error the library reports. The CLI maps these to
// exit code 2; configuration problems found before any work starts map to 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A resource file (lexicon, table) is missing or malformed.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace tweetspam
