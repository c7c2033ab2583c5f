#ifndef LOCALMAP_ERROR_HPP
#define LOCALMAP_ERROR_HPP

#include <stdexcept>

namespace localmap {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace localmap

#endif  // LOCALMAP_ERROR_HPP
