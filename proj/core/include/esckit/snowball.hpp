#ifndef ESCKIT_SNOWBALL_HPP
#define ESCKIT_SNOWBALL_HPP

#include <string>
#include <string_view>

namespace esckit::snowball {

// English (Porter2) stemmer. Input is lowercased before stemming; the
// returned stem is always lowercase. Words of two letters or fewer are
// returned unchanged.
std::string stem_english(std::string_view word);

}  // namespace esckit::snowball

#endif
