/* Acceptance run: one PASS/FAIL line per criterion, details indented below.
   Exits nonzero when any criterion fails. */

#include <nltu/experiments.hpp>
#include <nltu/oracle.hpp>
#include <nltu/search.hpp>

#include "../support/reference.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <set>
#include <thread>
#include <string>
#include <vector>

using namespace nltu;

namespace
{

struct outcome
{
  bool passed = true;
  std::vector<std::string> details;

  void expect( bool ok, std::string line )
  {
    passed = passed && ok;
    details.push_back( fmt::format( "{} {}", ok ? "ok  " : "FAIL", line ) );
  }
  void note( std::string line ) { details.push_back( fmt::format( "     {}", line ) ); }
};

double seconds_since( std::chrono::steady_clock::time_point start )
{
  return std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
}

unsigned workers()
{
  return std::max( 1u, std::thread::hardware_concurrency() );
}

std::size_t k1_count( unsigned n, model_kind model )
{
  search_options options;
  options.workers = workers();
  return enumerate_functions( { n, model, 1u }, options ).functions.size();
}

outcome worked_example()
{
  outcome o;
  auto const start = std::chrono::steady_clock::now();
  auto const ltu = ltu_truth_table( figure1_ltu() ).mask();
  auto const nltu = nltu_truth_table( figure1_nltu() ).mask();
  o.expect( ltu == figure1_mask && nltu == figure1_mask,
            fmt::format( "LTU w=(1,1,2) theta=3 gives {}, nLTU gives {}, expected {}", to_hex( ltu ), to_hex( nltu ),
                         to_hex( figure1_mask ) ) );
  auto const nltu_set = enumerate_functions( { 3u, model_kind::nltu, 1u } ).functions;
  auto const ltu_set = enumerate_functions( { 3u, model_kind::ltu, 1u } ).functions;
  o.expect( nltu_set.contains( figure1_mask ), "mask is computable by the single-synapse nLTU at n=3" );
  o.expect( !ltu_set.contains( figure1_mask ), "mask is not computable by the single-synapse LTU at n=3" );
  auto const elapsed = seconds_since( start );
  o.expect( elapsed < 1.0, fmt::format( "runtime {:.3f} s", elapsed ) );
  return o;
}

outcome single_synapse_counts()
{
  outcome o;
  auto const ltu5 = k1_count( 5u, model_kind::ltu );
  auto const nltu5 = k1_count( 5u, model_kind::nltu );
  o.expect( ltu5 == 81u, fmt::format( "n=5 LTU: {} functions, published 81", ltu5 ) );
  o.expect( nltu5 == 332u, fmt::format( "n=5 nLTU: {} functions, published 332", nltu5 ) );
  for ( unsigned n = 1; n <= 6; ++n )
  {
    auto const counted = k1_count( n, model_kind::ltu );
    o.expect( counted == single_synapse_ltu_count( n ),
              fmt::format( "n={} LTU: enumerated {}, closed form {}", n, counted, single_synapse_ltu_count( n ) ) );
  }
  auto const ltu6 = k1_count( 6u, model_kind::ltu );
  auto const nltu6 = k1_count( 6u, model_kind::nltu );
  o.note( fmt::format( "n=6 LTU: {} functions, published 128 ({})", ltu6, ltu6 == 128u ? "match" : "mismatch" ) );
  o.note( fmt::format( "n=6 nLTU: {} functions, published about 1000 ({})", nltu6,
                       nltu6 == 1000u ? "match" : "mismatch" ) );
  return o;
}

outcome minimal_budgets()
{
  outcome o;
  auto const start = std::chrono::steady_clock::now();
  experiment_options options;
  options.workers = workers();
  options.containment_budget_cap = 0u;
  std::vector<unsigned> const arities{ 3u, 4u, 5u };
  auto const report = run_figure2( arities, options );
  for ( auto const& row : report.rows )
  {
    if ( row.model == model_kind::ltu )
    {
      o.expect( row.reached && row.oracle_budget == row.budget,
                fmt::format( "n={} LTU budget {}, oracle minimum {}, published {}", row.arity, row.budget,
                             row.oracle_budget.value_or( 0u ), row.paper_value.value_or( 0u ) ) );
    }
    else
    {
      o.expect( row.reached && row.budget == 2u,
                fmt::format( "n={} nLTU budget {} ({} functions, {} threshold functions), published 2", row.arity,
                             row.budget, row.function_count, row.oracle_count ) );
    }
  }

  /* the stricter reading: every threshold function computable */
  for ( unsigned n : { 3u, 4u } )
  {
    budget_search_options bo;
    bo.criterion = capacity_criterion::contains_target;
    bo.budget_cap = 3u;
    bo.search.workers = workers();
    auto const found = minimal_budget_for_capacity( model_kind::nltu, n, oracle_capacity( n ), bo );
    o.note( fmt::format( "n={} nLTU computes every threshold function from budget {}", n, found.budget ) );
  }
  o.note( fmt::format( "runtime {:.1f} s", seconds_since( start ) ) );
  return o;
}

outcome oracle_equivalence()
{
  outcome o;
  for ( unsigned n = 1; n <= 5; ++n )
  {
    auto const table = build_oracle( n, workers() );
    auto const k = table.required_ltu_budget();
    search_options options;
    options.workers = workers();
    auto const at_k = enumerate_functions( { n, model_kind::ltu, k }, options ).functions;
    auto const above = enumerate_functions( { n, model_kind::ltu, k + 1u }, options ).functions;
    o.expect( at_k == table.capacity() && above == at_k,
              fmt::format( "n={}: LTU at k={} gives {} functions, k={} gives {}, oracle {}", n, k, at_k.size(), k + 1u,
                           above.size(), table.entries.size() ) );
  }
  return o;
}

outcome monotone_cross_check()
{
  outcome o;
  std::set<std::uint64_t> filtered;
  for ( unsigned n = 1; n <= 4; ++n )
  {
    filtered = reference::monotone_by_filter( n );
    auto const built = monotone_masks( n );
    o.expect( std::set<std::uint64_t>( built.begin(), built.end() ) == filtered,
              fmt::format( "n={}: construction {}, filter {}", n, built.size(), filtered.size() ) );
  }
  auto const five = enumerate_monotone( 5u ).size();
  auto const recount = reference::monotone_recount( filtered );
  o.expect( five == recount, fmt::format( "n=5: construction {}, recount from n=4 pairs {}", five, recount ) );
  return o;
}

outcome property_suites()
{
  outcome o;
  auto const command = fmt::format( "\"{}\" --minimal", PROPERTY_TESTS_PATH );
  auto const status = std::system( command.c_str() );
  o.expect( status == 0, fmt::format( "{} exited with status {}", PROPERTY_TESTS_PATH, status ) );
  return o;
}

} // namespace

int main()
{
  struct criterion
  {
    char const* name;
    std::function<outcome()> run;
  };
  std::vector<criterion> const criteria{
      { "1 worked example golden masks", worked_example },
      { "2 single-synapse function counts", single_synapse_counts },
      { "3 minimal synapse budgets", minimal_budgets },
      { "4 oracle equals saturated LTU enumeration", oracle_equivalence },
      { "5 monotone enumeration cross-check", monotone_cross_check },
      { "6 property suites", property_suites },
  };

  int failures = 0;
  for ( auto const& c : criteria )
  {
    outcome o;
    try
    {
      o = c.run();
    }
    catch ( std::exception const& e )
    {
      o.expect( false, fmt::format( "exception: {}", e.what() ) );
    }
    fmt::print( "{} {}\n", o.passed ? "PASS" : "FAIL", c.name );
    for ( auto const& line : o.details )
      fmt::print( "    {}\n", line );
    std::fflush( stdout );
    failures += o.passed ? 0 : 1;
  }
  fmt::print( "{} of {} criteria passed\n", criteria.size() - failures, criteria.size() );
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
