#pragma once

#include <stdexcept>
#include <string>

namespace srf {

enum class errc {
  domain,           // geometric quantity outside its validity range
  realizability,    // edge data admits no embedded block / lattice
  singular_system,  // velocity system could not be solved
  config,           // bad user configuration
  numeric,          // non-finite value produced
};

// index carries the offending level/band when known, else -1.
class SrfError : public std::runtime_error {
public:
  SrfError(errc code, std::string msg, long index = -1)
      : std::runtime_error(std::move(msg)), code_(code), index_(index) {}

  errc code() const noexcept { return code_; }
  long index() const noexcept { return index_; }

private:
  errc code_;
  long index_;
};

}  // namespace srf
