#pragma once

#include <cstdint>
#include <string_view>

namespace nltu::detail
{

/* 64-bit FNV-1a; used for cache checksums and provenance, not security */
inline std::uint64_t fnv1a( std::string_view bytes )
{
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for ( auto c : bytes )
  {
    hash ^= static_cast<unsigned char>( c );
    hash *= 0x100000001b3ull;
  }
  return hash;
}

} // namespace nltu::detail
