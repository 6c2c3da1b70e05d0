#ifndef ESCKIT_BUILTIN_DATA_HPP
#define ESCKIT_BUILTIN_DATA_HPP

#include <string_view>

namespace esckit::data {

// Contents of the versioned data files compiled into the library so the
// toolkit runs without path configuration; file flags override these.
std::string_view builtin_stopwords();
std::string_view builtin_greetings();
std::string_view builtin_farewells();

}  // namespace esckit::data

#endif
