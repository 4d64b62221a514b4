#include "nltu/models.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace nltu
{

namespace
{

void check_arity( unsigned arity )
{
  if ( arity < 1u || arity > max_arity )
  {
    throw contract_error( fmt::format( "model arity {} outside 1..{}", arity, max_arity ) );
  }
}

int ltu_drive( ltu_params const& params, std::uint32_t index )
{
  auto sum = 0;
  for ( auto i = 0u; i < params.arity(); ++i )
  {
    if ( ( index >> i ) & 1u )
      sum += params.weights[i];
  }
  return sum;
}

int nltu_drive( nltu_params const& params, std::uint32_t index )
{
  auto sum = 0;
  for ( auto j = 0u; j < params.num_subunits(); ++j )
  {
    auto local = 0;
    auto const& row = params.subunit_weights[j];
    for ( auto i = 0u; i < row.size(); ++i )
    {
      if ( ( index >> i ) & 1u )
        local += row[i];
    }
    sum += std::min( local, params.saturations[j] );
  }
  return sum;
}

} // namespace

void ltu_params::validate() const
{
  check_arity( arity() );
  if ( std::ranges::any_of( weights, []( int w ) { return w < 0; } ) )
  {
    throw contract_error( "LTU weights must be nonnegative" );
  }
  if ( threshold < 1 )
  {
    throw contract_error( fmt::format( "LTU threshold {} must be at least 1", threshold ) );
  }
}

void nltu_params::validate() const
{
  if ( subunit_weights.empty() )
  {
    throw contract_error( "nLTU needs at least one subunit" );
  }
  if ( saturations.size() != subunit_weights.size() )
  {
    throw contract_error( fmt::format( "{} saturations given for {} subunits", saturations.size(), subunit_weights.size() ) );
  }
  for ( auto const& row : subunit_weights )
  {
    if ( row.size() != arity() )
      throw contract_error( "nLTU subunit rows must all have one weight per input" );
    if ( std::ranges::any_of( row, []( int w ) { return w < 0; } ) )
      throw contract_error( "nLTU weights must be nonnegative" );
  }
  if ( std::ranges::any_of( saturations, []( int s ) { return s < 1; } ) )
  {
    throw contract_error( "nLTU saturations must be at least 1" );
  }
  if ( threshold < 1 )
  {
    throw contract_error( fmt::format( "nLTU threshold {} must be at least 1", threshold ) );
  }
}

bool ltu_output( ltu_params const& params, assignment values )
{
  params.validate();
  if ( values.size() != params.arity() )
  {
    throw contract_error( fmt::format( "assignment length {} does not match {} weights", values.size(), params.arity() ) );
  }
  return ltu_drive( params, assignment_index( values ) ) >= params.threshold;
}

bool nltu_output( nltu_params const& params, assignment values )
{
  params.validate();
  if ( values.size() != params.arity() )
  {
    throw contract_error( fmt::format( "assignment length {} does not match arity {}", values.size(), params.arity() ) );
  }
  return nltu_drive( params, assignment_index( values ) ) >= params.threshold;
}

truth_table ltu_truth_table( ltu_params const& params )
{
  params.validate();
  check_arity( params.arity() );
  std::uint64_t mask = 0u;
  for ( auto p = 0u; p < num_assignments( params.arity() ); ++p )
  {
    if ( ltu_drive( params, p ) >= params.threshold )
      mask |= std::uint64_t{ 1 } << p;
  }
  return { params.arity(), mask };
}

truth_table nltu_truth_table( nltu_params const& params )
{
  params.validate();
  check_arity( params.arity() );
  std::uint64_t mask = 0u;
  for ( auto p = 0u; p < num_assignments( params.arity() ); ++p )
  {
    if ( nltu_drive( params, p ) >= params.threshold )
      mask |= std::uint64_t{ 1 } << p;
  }
  return { params.arity(), mask };
}

void to_json( nlohmann::json& j, ltu_params const& params )
{
  j = nlohmann::json{ { "model", "ltu" }, { "n", params.arity() }, { "weights", params.weights }, { "theta", params.threshold } };
}

void to_json( nlohmann::json& j, nltu_params const& params )
{
  j = nlohmann::json{ { "model", "nltu" },
                      { "n", params.arity() },
                      { "subunit_weights", params.subunit_weights },
                      { "saturations", params.saturations },
                      { "theta", params.threshold } };
}

void from_json( nlohmann::json const& j, ltu_params& params )
{
  if ( j.at( "model" ).get<std::string>() != "ltu" )
  {
    throw contract_error( "expected an LTU parameter record" );
  }
  params.weights = j.at( "weights" ).get<std::vector<int>>();
  params.threshold = j.at( "theta" ).get<int>();
  if ( j.at( "n" ).get<unsigned>() != params.arity() )
  {
    throw contract_error( "LTU record arity does not match its weight count" );
  }
  params.validate();
}

void from_json( nlohmann::json const& j, nltu_params& params )
{
  if ( j.at( "model" ).get<std::string>() != "nltu" )
  {
    throw contract_error( "expected an nLTU parameter record" );
  }
  params.subunit_weights = j.at( "subunit_weights" ).get<std::vector<std::vector<int>>>();
  params.saturations = j.at( "saturations" ).get<std::vector<int>>();
  params.threshold = j.at( "theta" ).get<int>();
  params.validate();
  if ( j.at( "n" ).get<unsigned>() != params.arity() )
  {
    throw contract_error( "nLTU record arity does not match its weight rows" );
  }
}

} // namespace nltu
