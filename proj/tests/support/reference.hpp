/* Slow, direct implementations used as independent references in tests.
   Nothing here shares code with the library beyond plain data types. */

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace nltu::reference
{

inline bool bit( std::uint64_t mask, std::uint32_t p ) { return ( mask >> p ) & 1u; }

/* f(p) <= f(q) for every pair of assignments p ⊆ q */
inline bool monotone( std::uint64_t mask, unsigned n )
{
  std::uint32_t const size = 1u << n;
  for ( std::uint32_t p = 0; p < size; ++p )
    for ( std::uint32_t q = 0; q < size; ++q )
      if ( ( p & q ) == p && bit( mask, p ) && !bit( mask, q ) )
        return false;
  return true;
}

/* filter over every function of n <= 4 variables */
inline std::set<std::uint64_t> monotone_by_filter( unsigned n )
{
  std::set<std::uint64_t> out;
  std::uint64_t const count = std::uint64_t{ 1 } << ( 1u << n );
  for ( std::uint64_t m = 0; m < count; ++m )
    if ( monotone( m, n ) )
      out.insert( m );
  return out;
}

/* pairs f0 <= f1 of (n-1)-variable monotone functions */
inline std::uint64_t monotone_recount( std::set<std::uint64_t> const& smaller )
{
  std::uint64_t count = 0;
  for ( auto f0 : smaller )
    for ( auto f1 : smaller )
      if ( ( f0 & ~f1 ) == 0u )
        ++count;
  return count;
}

inline int dot( std::vector<int> const& w, std::uint32_t p )
{
  int s = 0;
  for ( std::size_t i = 0; i < w.size(); ++i )
    if ( ( p >> i ) & 1u )
      s += w[i];
  return s;
}

inline std::uint64_t ltu_mask( std::vector<int> const& w, int theta )
{
  std::uint64_t m = 0;
  for ( std::uint32_t p = 0; p < ( 1u << w.size() ); ++p )
    if ( dot( w, p ) >= theta )
      m |= std::uint64_t{ 1 } << p;
  return m;
}

/* calls f on every vector in 0..hi per coordinate */
template<class F>
void for_each_vector( unsigned length, int hi, F&& f )
{
  std::vector<int> v( length, 0 );
  while ( true )
  {
    f( v );
    std::size_t i = 0;
    while ( i < length && v[i] == hi )
      v[i++] = 0;
    if ( i == length )
      return;
    ++v[i];
  }
}

/* every function an LTU computes with weights 0..k, theta 1..sum+1 */
inline std::set<std::uint64_t> ltu_functions( unsigned n, int k )
{
  std::set<std::uint64_t> out;
  for_each_vector( n, k, [&]( std::vector<int> const& w ) {
    int const total = std::accumulate( w.begin(), w.end(), 0 );
    for ( int theta = 1; theta <= total + 1; ++theta )
      out.insert( ltu_mask( w, theta ) );
  } );
  return out;
}

/* positive threshold functions by scanning weights 0..bound and every theta >= 1 */
inline std::set<std::uint64_t> threshold_scan( unsigned n, int bound )
{
  std::set<std::uint64_t> out;
  for_each_vector( n, bound, [&]( std::vector<int> const& w ) {
    for ( int theta = 1; theta <= static_cast<int>( n ) * bound + 1; ++theta )
      out.insert( ltu_mask( w, theta ) );
  } );
  return out;
}

inline std::uint64_t nltu_mask( std::vector<std::vector<int>> const& rows, std::vector<int> const& sat, int theta,
                                unsigned n )
{
  std::uint64_t m = 0;
  for ( std::uint32_t p = 0; p < ( 1u << n ); ++p )
  {
    int total = 0;
    for ( std::size_t j = 0; j < rows.size(); ++j )
      total += std::min( dot( rows[j], p ), sat[j] );
    if ( total >= theta )
      m |= std::uint64_t{ 1 } << p;
  }
  return m;
}

/* every function of d subunits with column sums <= k, no symmetry pruning */
inline std::set<std::uint64_t> nltu_functions( unsigned n, int k, unsigned d )
{
  std::set<std::uint64_t> out;
  std::vector<std::vector<int>> rows( d, std::vector<int>( n, 0 ) );
  for_each_vector( n * d, k, [&]( std::vector<int> const& flat ) {
    for ( unsigned i = 0; i < n; ++i )
    {
      int col = 0;
      for ( unsigned j = 0; j < d; ++j )
        col += flat[j * n + i];
      if ( col > k )
        return;
    }
    std::vector<int> hi( d );
    for ( unsigned j = 0; j < d; ++j )
    {
      rows[j].assign( flat.begin() + j * n, flat.begin() + ( j + 1 ) * n );
      hi[j] = std::max( 1, std::accumulate( rows[j].begin(), rows[j].end(), 0 ) );
    }
    std::vector<int> sat( d, 1 );
    while ( true )
    {
      int const total = std::accumulate( sat.begin(), sat.end(), 0 );
      for ( int theta = 1; theta <= total + 1; ++theta )
        out.insert( nltu_mask( rows, sat, theta, n ) );
      std::size_t j = 0;
      while ( j < d && sat[j] == hi[j] )
        sat[j++] = 1;
      if ( j == d )
        break;
      ++sat[j];
    }
  } );
  return out;
}

} // namespace nltu::reference
