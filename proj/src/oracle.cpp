#include "nltu/oracle.hpp"

#include "nltu/detail/hash.hpp"
#include "nltu/detail/parallel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <fstream>
#include <numeric>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace nltu
{

std::vector<std::uint64_t> monotone_masks( unsigned arity )
{
  if ( arity < 1u || arity > max_arity )
  {
    throw contract_error( fmt::format( "arity {} outside 1..{}", arity, max_arity ) );
  }
  /* zero variables: FALSE and TRUE */
  std::vector<std::uint64_t> level{ 0u, 1u };
  for ( auto m = 1u; m <= arity; ++m )
  {
    auto const half = num_assignments( m - 1u );
    std::vector<std::uint64_t> next;
    for ( auto f1 : level )
    {
      for ( auto f0 : level )
      {
        if ( ( f0 & ~f1 ) == 0u )
          next.push_back( f0 | ( f1 << half ) );
      }
    }
    std::ranges::sort( next );
    level = std::move( next );
  }
  return level;
}

function_set enumerate_monotone( unsigned arity )
{
  function_set out( arity );
  auto const masks = monotone_masks( arity );
  out.reserve( masks.size() );
  for ( auto m : masks )
    out.insert_mask( m );
  return out;
}

namespace
{

/* positions whose bit i is 1 and bit j is 0 */
std::uint64_t positions_with( unsigned arity, unsigned i, unsigned j )
{
  std::uint64_t out = 0u;
  for ( auto p = 0u; p < num_assignments( arity ); ++p )
  {
    if ( ( ( p >> i ) & 1u ) && !( ( p >> j ) & 1u ) )
      out |= std::uint64_t{ 1 } << p;
  }
  return out;
}

struct pair_masks
{
  std::array<std::array<std::uint64_t, max_arity>, max_arity> with_first{};
};

pair_masks const& masks_for( unsigned arity )
{
  static auto const tables = [] {
    std::array<pair_masks, max_arity + 1u> t{};
    for ( auto n = 1u; n <= max_arity; ++n )
      for ( auto i = 0u; i < n; ++i )
        for ( auto j = 0u; j < n; ++j )
          if ( i != j )
            t[n].with_first[i][j] = positions_with( n, i, j );
    return t;
  }();
  return tables[arity];
}

} // namespace

separability_certificate is_positive_threshold( truth_table const& tt, int weight_bound )
{
  auto const n = tt.arity();
  auto const f = tt.mask();
  auto const size = num_assignments( n );
  separability_certificate cert;

  for ( auto i = 0u; i < n; ++i )
  {
    for ( auto p = 0u; p < size; ++p )
    {
      auto const q = p | ( 1u << i );
      if ( q != p && tt.at( p ) && !tt.at( q ) )
      {
        cert.violating_pair = std::pair{ p, q };
        return cert;
      }
    }
  }
  if ( tt.at( 0u ) )
  {
    /* constant TRUE: the empty assignment would need a sum >= theta >= 1 */
    return cert;
  }
  if ( f == 0u )
  {
    cert.separable = true;
    cert.weights.assign( n, 0 );
    cert.threshold = 1;
    return cert;
  }

  /* dominates[i][j]: raising x_i helps at least as much as raising x_j */
  std::array<std::array<bool, max_arity>, max_arity> dominates{};
  auto const& pm = masks_for( n );
  for ( auto i = 0u; i < n; ++i )
  {
    dominates[i][i] = true;
    for ( auto j = i + 1u; j < n; ++j )
    {
      auto const shift = ( 1u << j ) - ( 1u << i );
      auto const raise_i = f & pm.with_first[i][j];
      auto const raise_j = ( f & pm.with_first[j][i] ) >> shift;
      dominates[i][j] = ( raise_j & ~raise_i ) == 0u;
      dominates[j][i] = ( raise_i & ~raise_j ) == 0u;
      if ( !dominates[i][j] && !dominates[j][i] )
      {
        auto const r = static_cast<std::uint32_t>( std::countr_zero( raise_j & ~raise_i ) );
        auto const t = static_cast<std::uint32_t>( std::countr_zero( raise_i & ~raise_j ) );
        cert.violating_pair = std::pair{ r + shift, t };
        return cert;
      }
    }
  }

  std::vector<unsigned> order( n );
  std::iota( order.begin(), order.end(), 0u );
  std::ranges::stable_sort( order, [&]( unsigned a, unsigned b ) { return dominates[a][b] && !dominates[b][a]; } );

  /* irrelevant variables can always take weight 0 */
  std::vector<bool> relevant( n );
  for ( auto i = 0u; i < n; ++i )
  {
    for ( auto p = 0u; p < size && !relevant[i]; ++p )
      relevant[i] = ( ( p >> i ) & 1u ) == 0u && tt.at( p ) != tt.at( p | ( 1u << i ) );
  }
  /* strict[k]: order[k] strictly dominates order[k + 1] */
  std::vector<bool> strict( n, false );
  for ( auto k = 0u; k + 1u < n; ++k )
    strict[k] = !dominates[order[k + 1u]][order[k]];

  std::vector<std::uint32_t> min_true, max_false;
  for ( auto p = 0u; p < size; ++p )
  {
    auto minimal = true, maximal = true;
    for ( auto i = 0u; i < n; ++i )
    {
      auto const bit = 1u << i;
      if ( ( p & bit ) && tt.at( p ^ bit ) )
        minimal = false;
      if ( !( p & bit ) && !tt.at( p | bit ) )
        maximal = false;
    }
    if ( tt.at( p ) && minimal )
      min_true.push_back( p );
    if ( !tt.at( p ) && maximal )
      max_false.push_back( p );
  }

  std::vector<int> values( n ), weights( n );
  auto dot = [&]( std::uint32_t p ) {
    auto sum = 0;
    for ( auto i = 0u; i < n; ++i )
      if ( ( p >> i ) & 1u )
        sum += weights[i];
    return sum;
  };
  auto separates = [&]() -> std::optional<int> {
    for ( auto k = 0u; k < n; ++k )
      weights[order[k]] = values[k];
    auto theta = std::numeric_limits<int>::max();
    for ( auto p : min_true )
      theta = std::min( theta, dot( p ) );
    if ( theta < 1 )
      return std::nullopt;
    for ( auto p : max_false )
      if ( dot( p ) >= theta )
        return std::nullopt;
    return theta;
  };

  /* nonincreasing weight sequences along `order` whose first entry is b */
  std::optional<int> found;
  auto rec = [&]( auto&& self, unsigned k ) -> bool {
    if ( k == n )
    {
      found = separates();
      return found.has_value();
    }
    auto const var = order[k];
    if ( !relevant[var] )
    {
      values[k] = 0;
      return self( self, k + 1u );
    }
    auto const upper = strict[k - 1u] ? values[k - 1u] - 1 : values[k - 1u];
    for ( auto w = upper; w >= 1; --w )
    {
      values[k] = w;
      if ( self( self, k + 1u ) )
        return true;
    }
    return false;
  };

  for ( auto b = 1; b <= weight_bound; ++b )
  {
    values[0] = b;
    if ( rec( rec, 1u ) )
    {
      cert.separable = true;
      cert.weights = weights;
      cert.threshold = *found;
      return cert;
    }
  }
  return cert;
}

function_set oracle_table::capacity() const
{
  function_set out( arity );
  out.reserve( entries.size() );
  for ( auto const& e : entries )
    out.insert_mask( e.mask );
  return out;
}

unsigned oracle_table::required_ltu_budget() const
{
  auto budget = 1;
  for ( auto const& e : entries )
  {
    for ( auto w : e.weights )
      budget = std::max( budget, w );
  }
  return static_cast<unsigned>( budget );
}

oracle_table build_oracle( unsigned arity, unsigned workers, int weight_bound )
{
  struct compact_certificate
  {
    bool separable = false;
    std::array<std::uint8_t, max_arity> weights{};
    std::uint16_t threshold = 0u;
  };

  if ( weight_bound < 1 || weight_bound > 255 )
  {
    throw contract_error( fmt::format( "weight bound {} outside 1..255", weight_bound ) );
  }
  auto const monotone = monotone_masks( arity );
  std::vector<compact_certificate> certs( monotone.size() );
  detail::parallel_blocks( monotone.size(), workers, [&]( std::uint64_t begin, std::uint64_t end ) {
    for ( auto idx = begin; idx < end; ++idx )
    {
      auto const cert = is_positive_threshold( truth_table( arity, monotone[idx] ), weight_bound );
      if ( !cert.separable )
        continue;
      certs[idx].separable = true;
      std::ranges::copy( cert.weights, certs[idx].weights.begin() );
      certs[idx].threshold = static_cast<std::uint16_t>( cert.threshold );
    }
  } );

  oracle_table table;
  table.arity = arity;
  table.weight_bound = weight_bound;
  table.monotone_count = monotone.size();
  for ( auto idx = 0u; idx < monotone.size(); ++idx )
  {
    auto const& c = certs[idx];
    if ( c.separable )
      table.entries.push_back( { monotone[idx], std::vector<int>( c.weights.begin(), c.weights.begin() + arity ), c.threshold } );
  }
  return table;
}

function_set oracle_capacity( unsigned arity, unsigned workers )
{
  return build_oracle( arity, workers ).capacity();
}

namespace
{

using detail::fnv1a;

std::string cache_body( oracle_table const& table )
{
  std::string body;
  for ( auto const& e : table.entries )
  {
    nlohmann::json line{ { "mask", to_hex( e.mask ) }, { "separable", true }, { "weights", e.weights }, { "theta", e.threshold } };
    body += line.dump();
    body += '\n';
  }
  return body;
}

} // namespace

void write_oracle_cache( oracle_table const& table, std::filesystem::path const& file )
{
  auto const body = cache_body( table );
  nlohmann::json header{ { "arity", table.arity },
                         { "weight_bound", table.weight_bound },
                         { "monotone_count", table.monotone_count },
                         { "count", table.entries.size() },
                         { "checksum", to_hex( fnv1a( body ) ) } };
  if ( file.has_parent_path() )
    std::filesystem::create_directories( file.parent_path() );
  auto tmp = file;
  tmp += ".tmp";
  {
    std::ofstream os( tmp, std::ios::binary | std::ios::trunc );
    if ( !os )
      throw std::runtime_error( fmt::format( "cannot write oracle cache {}", tmp.string() ) );
    os << header.dump() << '\n' << body;
    if ( !os )
      throw std::runtime_error( fmt::format( "failed writing oracle cache {}", tmp.string() ) );
  }
  std::filesystem::rename( tmp, file );
}

std::optional<oracle_table> read_oracle_cache( std::filesystem::path const& file, unsigned arity, int weight_bound )
{
  std::ifstream is( file, std::ios::binary );
  if ( !is )
    return std::nullopt;
  try
  {
    std::string header_line;
    if ( !std::getline( is, header_line ) )
      return std::nullopt;
    std::ostringstream rest;
    rest << is.rdbuf();
    auto const body = rest.str();

    auto const header = nlohmann::json::parse( header_line );
    if ( header.at( "arity" ).get<unsigned>() != arity || header.at( "weight_bound" ).get<int>() != weight_bound ||
         parse_hex( header.at( "checksum" ).get<std::string>() ) != fnv1a( body ) )
      return std::nullopt;

    oracle_table table;
    table.arity = arity;
    table.weight_bound = weight_bound;
    table.monotone_count = header.at( "monotone_count" ).get<std::uint64_t>();
    std::istringstream lines( body );
    std::string line;
    while ( std::getline( lines, line ) )
    {
      auto const record = nlohmann::json::parse( line );
      if ( !record.at( "separable" ).get<bool>() )
        continue;
      table.entries.push_back( { parse_hex( record.at( "mask" ).get<std::string>() ),
                                 record.at( "weights" ).get<std::vector<int>>(), record.at( "theta" ).get<int>() } );
    }
    if ( table.entries.size() != header.at( "count" ).get<std::size_t>() )
      return std::nullopt;
    return table;
  }
  catch ( std::exception const& )
  {
    return std::nullopt;
  }
}

oracle_table load_or_build_oracle( unsigned arity, std::filesystem::path const& cache_dir, unsigned workers,
                                   int weight_bound )
{
  auto const file = cache_dir / fmt::format( "oracle_n{}.jsonl", arity );
  if ( auto cached = read_oracle_cache( file, arity, weight_bound ) )
    return std::move( *cached );
  auto table = build_oracle( arity, workers, weight_bound );
  write_oracle_cache( table, file );
  return table;
}

} // namespace nltu
