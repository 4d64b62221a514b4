#include "nltu/truth_table.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/format.h>

namespace nltu
{

std::uint32_t assignment_index( assignment values )
{
  if ( values.size() > max_arity )
  {
    throw contract_error( fmt::format( "assignment of length {} exceeds the arity cap", values.size() ) );
  }
  std::uint32_t index = 0u;
  for ( auto i = 0u; i < values.size(); ++i )
  {
    if ( values[i] > 1u )
    {
      throw contract_error( "assignment entries must be 0 or 1" );
    }
    index |= std::uint32_t{ values[i] } << i;
  }
  return index;
}

std::vector<std::uint8_t> assignment_bits( std::uint32_t index, unsigned arity )
{
  std::vector<std::uint8_t> bits( arity );
  for ( auto i = 0u; i < arity; ++i )
  {
    bits[i] = ( index >> i ) & 1u;
  }
  return bits;
}

truth_table::truth_table( unsigned arity, std::uint64_t mask )
    : arity_( arity ), mask_( mask )
{
  if ( arity < 1u || arity > max_arity )
  {
    throw contract_error( fmt::format( "arity {} outside 1..{}", arity, max_arity ) );
  }
  if ( ( mask & ~full_mask( arity ) ) != 0u )
  {
    throw contract_error( fmt::format( "mask {} has bits beyond 2^{} positions", to_hex( mask ), arity ) );
  }
}

bool evaluate( truth_table const& tt, assignment values )
{
  if ( values.size() != tt.arity() )
  {
    throw contract_error( fmt::format( "assignment length {} does not match arity {}", values.size(), tt.arity() ) );
  }
  return tt.at( assignment_index( values ) );
}

bool is_monotone( truth_table const& tt )
{
  /* it suffices to check single-variable steps p -> p | (1 << i) */
  auto const f = tt.mask();
  for ( auto i = 0u; i < tt.arity(); ++i )
  {
    for ( auto p = 0u; p < num_assignments( tt.arity() ); ++p )
    {
      if ( ( p >> i ) & 1u )
        continue;
      if ( ( ( f >> p ) & 1u ) && !( ( f >> ( p | ( 1u << i ) ) ) & 1u ) )
        return false;
    }
  }
  return true;
}

std::string to_hex( std::uint64_t mask )
{
  return fmt::format( "{:#x}", mask );
}

std::uint64_t parse_hex( std::string_view text )
{
  if ( text.size() < 3u || text[0] != '0' || ( text[1] != 'x' && text[1] != 'X' ) )
  {
    throw std::invalid_argument( fmt::format( "'{}' is not a 0x-prefixed hex mask", text ) );
  }
  std::uint64_t value = 0u;
  auto const* first = text.data() + 2;
  auto const* last = text.data() + text.size();
  auto const [ptr, ec] = std::from_chars( first, last, value, 16 );
  if ( ec != std::errc{} || ptr != last )
  {
    throw std::invalid_argument( fmt::format( "'{}' is not a 0x-prefixed hex mask", text ) );
  }
  return value;
}

function_set::function_set( unsigned arity )
    : arity_( arity )
{
  if ( arity < 1u || arity > max_arity )
  {
    throw contract_error( fmt::format( "arity {} outside 1..{}", arity, max_arity ) );
  }
}

bool function_set::insert( truth_table const& tt )
{
  if ( tt.arity() != arity_ )
  {
    throw contract_error( fmt::format( "cannot insert an arity-{} table into an arity-{} set", tt.arity(), arity_ ) );
  }
  return insert_mask( tt.mask() );
}

bool function_set::contains( truth_table const& tt ) const
{
  return tt.arity() == arity_ && contains( tt.mask() );
}

bool function_set::includes( function_set const& other ) const
{
  if ( other.arity_ != arity_ || other.size() > size() )
    return false;
  return std::ranges::all_of( other.masks_, [this]( auto m ) { return masks_.count( m ) != 0u; } );
}

void function_set::merge( function_set const& other )
{
  if ( other.arity_ != arity_ )
  {
    throw contract_error( "cannot merge function sets of different arity" );
  }
  masks_.insert( other.masks_.begin(), other.masks_.end() );
}

std::vector<std::uint64_t> function_set::sorted_masks() const
{
  std::vector<std::uint64_t> out( masks_.begin(), masks_.end() );
  std::ranges::sort( out );
  return out;
}

} // namespace nltu
