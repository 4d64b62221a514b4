#include <doctest.h>

#include <nltu/oracle.hpp>

#include "../support/reference.hpp"

#include <filesystem>
#include <fstream>
#include <set>

using namespace nltu;

namespace
{

std::set<std::uint64_t> as_set( function_set const& f )
{
  auto const v = f.sorted_masks();
  return { v.begin(), v.end() };
}

struct temp_dir
{
  std::filesystem::path path;

  explicit temp_dir( std::string const& name ) : path( std::filesystem::temp_directory_path() / name )
  {
    std::filesystem::remove_all( path );
    std::filesystem::create_directories( path );
  }
  ~temp_dir() { std::filesystem::remove_all( path ); }
};

} // namespace

TEST_CASE( "monotone enumeration matches the pairwise filter" )
{
  std::size_t const expected[] = { 0u, 3u, 6u, 20u, 168u };
  for ( unsigned n = 1; n <= 4; ++n )
  {
    auto const filtered = reference::monotone_by_filter( n );
    CHECK( filtered.size() == expected[n] );
    CHECK( as_set( enumerate_monotone( n ) ) == filtered );
  }
  auto const masks = monotone_masks( 3u );
  CHECK( std::ranges::is_sorted( masks ) );
}

TEST_CASE( "threshold decision matches a weight scan" )
{
  for ( unsigned n = 1; n <= 3; ++n )
  {
    auto scan = reference::threshold_scan( n, 4 );
    auto const oracle = as_set( oracle_capacity( n ) );
    CHECK( oracle == scan );
    CHECK_FALSE( oracle.contains( full_mask( n ) ) );
  }
  CHECK( as_set( oracle_capacity( 4u ) ) == reference::threshold_scan( 4u, 3 ) );
}

TEST_CASE( "certificates reproduce their table with minimal largest weight" )
{
  for ( auto mask : monotone_masks( 4u ) )
  {
    truth_table const tt( 4u, mask );
    auto const c = is_positive_threshold( tt );
    if ( !c.separable )
      continue;
    REQUIRE( c.threshold >= 1 );
    CHECK( reference::ltu_mask( c.weights, c.threshold ) == mask );
    int const top = *std::ranges::max_element( c.weights );
    if ( top > 0 )
      CHECK( !reference::threshold_scan( 4u, top - 1 ).contains( mask ) );
  }
}

TEST_CASE( "rejections carry a two-point witness" )
{
  /* x0 x1 + x2 x3 is monotone but not a threshold function */
  std::uint64_t mask = 0;
  for ( std::uint32_t p = 0; p < 16u; ++p )
    if ( ( ( p & 3u ) == 3u ) || ( ( p & 12u ) == 12u ) )
      mask |= std::uint64_t{ 1 } << p;
  auto const c = is_positive_threshold( truth_table( 4u, mask ) );
  CHECK_FALSE( c.separable );
  REQUIRE( c.violating_pair );
  CHECK( reference::bit( mask, c.violating_pair->first ) );
  CHECK( reference::bit( mask, c.violating_pair->second ) );

  /* not monotone: x0 alone true, x0 x1 false */
  auto const nm = is_positive_threshold( truth_table( 2u, 0x2u ) );
  CHECK_FALSE( nm.separable );
  REQUIRE( nm.violating_pair );
  CHECK( ( nm.violating_pair->first & nm.violating_pair->second ) == nm.violating_pair->first );

  CHECK_FALSE( is_positive_threshold( truth_table::constant_true( 3u ) ).separable );
  auto const f = is_positive_threshold( truth_table::constant_false( 3u ) );
  CHECK( f.separable );
  CHECK( f.threshold == 1 );
}

TEST_CASE( "threshold counts are stable under the weight bound" )
{
  CHECK( build_oracle( 5u, 1u, 13 ).entries.size() == build_oracle( 5u, 1u, 15 ).entries.size() );
  CHECK_THROWS_AS( build_oracle( 3u, 1u, 0 ), contract_error );
}

TEST_CASE( "oracle tables and required LTU budgets" )
{
  std::size_t const counts[] = { 0u, 2u, 5u, 19u, 149u, 3286u };
  unsigned const budgets[] = { 0u, 1u, 1u, 2u, 3u, 5u };
  for ( unsigned n = 1; n <= 5; ++n )
  {
    auto const t = build_oracle( n, 2u );
    CHECK( t.entries.size() == counts[n] );
    CHECK( t.required_ltu_budget() == budgets[n] );
    CHECK( t.capacity().size() == counts[n] );
  }
}

TEST_CASE( "oracle cache round trip and corruption" )
{
  temp_dir dir( "nltu_oracle_cache_test" );
  auto const built = load_or_build_oracle( 4u, dir.path );
  auto const file = dir.path / "oracle_n4.jsonl";
  REQUIRE( std::filesystem::exists( file ) );

  auto const read = read_oracle_cache( file, 4u );
  REQUIRE( read );
  CHECK( read->entries.size() == built.entries.size() );
  CHECK( read->capacity() == built.capacity() );
  CHECK( read->monotone_count == 168u );
  CHECK_FALSE( read_oracle_cache( file, 3u ) );

  /* flip a digit in the body */
  std::string text;
  {
    std::ifstream is( file );
    text.assign( std::istreambuf_iterator<char>( is ), {} );
  }
  auto const pos = text.rfind( "\"theta\":" );
  REQUIRE( pos != std::string::npos );
  text[pos + 8] = text[pos + 8] == '1' ? '2' : '1';
  {
    std::ofstream os( file, std::ios::trunc );
    os << text;
  }
  CHECK_FALSE( read_oracle_cache( file, 4u ) );
  CHECK( load_or_build_oracle( 4u, dir.path ).capacity() == built.capacity() );
  CHECK( read_oracle_cache( file, 4u ) );

  {
    std::ofstream os( file, std::ios::trunc );
    os << "not json\n";
  }
  CHECK_FALSE( read_oracle_cache( file, 4u ) );
  CHECK_FALSE( read_oracle_cache( dir.path / "missing.jsonl", 4u ) );
}
