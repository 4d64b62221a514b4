#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace nltu::detail
{

/* Calls `body( begin, end )` over disjoint blocks of [0, count) from
   `workers` threads. The first exception thrown by any block is rethrown. */
template<class Body>
void parallel_blocks( std::uint64_t count, unsigned workers, Body&& body )
{
  workers = std::max( 1u, workers );
  if ( count == 0u )
    return;
  auto const blocks = std::min<std::uint64_t>( count, std::uint64_t{ workers } * 16u );
  auto const block_size = ( count + blocks - 1u ) / blocks;
  std::atomic<std::uint64_t> next{ 0u };
  std::vector<std::exception_ptr> errors( workers );

  auto run = [&]( unsigned w ) {
    try
    {
      while ( true )
      {
        auto const b = next.fetch_add( 1u );
        auto const begin = b * block_size;
        if ( begin >= count )
          break;
        body( begin, std::min( count, begin + block_size ) );
      }
    }
    catch ( ... )
    {
      errors[w] = std::current_exception();
    }
  };

  {
    std::vector<std::jthread> pool;
    for ( auto w = 1u; w < workers; ++w )
      pool.emplace_back( run, w );
    run( 0u );
  }
  for ( auto const& e : errors )
  {
    if ( e )
      std::rethrow_exception( e );
  }
}

} // namespace nltu::detail
