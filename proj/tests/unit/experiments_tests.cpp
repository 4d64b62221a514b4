#include <doctest.h>

#include <nltu/experiments.hpp>

#include "../support/reference.hpp"

#include <sstream>

using namespace nltu;

TEST_CASE( "worked example: one device needs two synapses, the other one" )
{
  CHECK( ltu_truth_table( figure1_ltu() ).mask() == figure1_mask );
  CHECK( nltu_truth_table( figure1_nltu() ).mask() == figure1_mask );
  auto const report = verify_figure1();
  CHECK( report.checks.size() == 6u );
  for ( auto const& c : report.checks )
  {
    CAPTURE( c.name );
    CHECK( c.passed );
  }
  CHECK( report.passed() );
  auto const j = to_json( report );
  CHECK( j["passed"] == true );
}

TEST_CASE( "capacity bits round to two decimals" )
{
  CHECK( capacity_bits( 1u ) == 0.0 );
  CHECK( capacity_bits( 81u ) == doctest::Approx( 6.34 ) );
  CHECK( capacity_bits( 332u ) == doctest::Approx( 8.38 ) );
}

TEST_CASE( "single-synapse LTU closed form matches a weight scan" )
{
  for ( unsigned n = 1; n <= 5; ++n )
    CHECK( single_synapse_ltu_count( n ) == reference::ltu_functions( n, 1 ).size() );
  CHECK( single_synapse_ltu_count( 5u ) == 81u );
  CHECK( single_synapse_ltu_count( 6u ) == 193u );
}

TEST_CASE( "published values" )
{
  CHECK( published_minimal_budget( model_kind::ltu, 5u ) == 6u );
  CHECK( published_minimal_budget( model_kind::nltu, 4u ) == 2u );
  CHECK_FALSE( published_minimal_budget( model_kind::ltu, 2u ) );
  CHECK( published_single_synapse_count( model_kind::nltu, 5u ) == 332u );
  CHECK_FALSE( published_single_synapse_count( model_kind::nltu, 4u ) );
}

TEST_CASE( "single-synapse report rows" )
{
  std::vector<unsigned> const arities{ 2u, 3u };
  auto const report = run_figure3( arities );
  REQUIRE( report.rows.size() == 4u );
  CHECK( report.rows[2].function_count == 13u );
  CHECK( report.rows[3].function_count == 16u );
  CHECK( report.rows[2].closed_form_count == 13u );
  CHECK( report.rows[3].oracle_count == 19u );
  CHECK( report.origin.specs.size() == 4u );
  CHECK_FALSE( report.origin.spec_hash.empty() );
}

TEST_CASE( "budget report rows" )
{
  std::vector<unsigned> const arities{ 3u };
  auto const report = run_figure2( arities );
  REQUIRE( report.rows.size() == 2u );
  auto const& ltu = report.rows[0];
  auto const& nltu = report.rows[1];
  CHECK( ltu.budget == 2u );
  CHECK( ltu.oracle_budget == 2u );
  CHECK( ltu.paper_value == 3u );
  CHECK_FALSE( ltu.match );
  CHECK( nltu.budget == 2u );
  CHECK( nltu.match );
  CHECK( nltu.containment_budget == 2u );
  CHECK( nltu.containment_reached );
}

TEST_CASE( "report CSV round trip" )
{
  std::vector<unsigned> const arities{ 2u, 3u };
  auto report = run_figure3( arities );
  report.rows[0].reached = false;
  std::ostringstream os;
  write_csv( os, report );
  CHECK( os.str().starts_with( std::string( csv_header ) + "\n" ) );

  std::istringstream is( os.str() );
  auto const rows = read_csv( is );
  REQUIRE( rows.size() == report.rows.size() );
  for ( std::size_t i = 0; i < rows.size(); ++i )
  {
    CHECK( rows[i].arity == report.rows[i].arity );
    CHECK( rows[i].model == report.rows[i].model );
    CHECK( rows[i].function_count == report.rows[i].function_count );
    CHECK( rows[i].capacity_bits == doctest::Approx( report.rows[i].capacity_bits ) );
    CHECK( rows[i].reached == report.rows[i].reached );
  }
}

TEST_CASE( "malformed CSV names the row and column" )
{
  auto const header = std::string( csv_header ) + "\n";
  auto fails_at = []( std::string const& text, std::size_t row, std::string const& column ) {
    std::istringstream is( text );
    try
    {
      read_csv( is );
      return false;
    }
    catch ( csv_error const& e )
    {
      return e.row() == row && e.column() == column;
    }
  };
  CHECK( fails_at( "", 0u, "" ) );
  CHECK( fails_at( header, 0u, "" ) );
  CHECK( fails_at( header + "3,ltu,1,13,19,3.70,,false\n3,xor,1,13,19,3.70,,false\n", 2u, "model" ) );
  CHECK( fails_at( header + "3,ltu,1,abc,19,3.70,,false\n", 1u, "function_count" ) );
  CHECK( fails_at( header + "3,ltu,1,13,19,3.7x,,false\n", 1u, "capacity_bits" ) );
  CHECK( fails_at( header + "3,ltu,1,13,19\n", 1u, "" ) );
  CHECK( fails_at( header + "9,ltu,1,13,19,3.70,,false\n", 1u, "n" ) );
  CHECK( fails_at( header + "3,ltu,1,13,19,3.70,,maybe\n", 1u, "match" ) );
}

TEST_CASE( "report JSON carries provenance" )
{
  std::vector<unsigned> const arities{ 2u };
  auto const j = to_json( run_figure3( arities ) );
  CHECK( j["figure"] == "figure3" );
  CHECK( j["provenance"]["code_version"] == NLTU_VERSION );
  CHECK( j["provenance"]["specs"].size() == 2u );
  CHECK( j["rows"].size() == 2u );
}

TEST_CASE( "weight matrix estimate" )
{
  /* one input, two subunits, budget 1: columns (0,0), (1,0), (0,1) */
  CHECK( nltu_weight_matrices( 1u, 1u, 2u ) == 3u );
  CHECK( nltu_weight_matrices( 2u, 1u, 2u ) == 9u );
}
