#include "nltu/experiments.hpp"

#include "nltu/detail/hash.hpp"
#include "nltu/oracle.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/chrono.h>
#include <fmt/format.h>

#ifndef NLTU_VERSION
#define NLTU_VERSION "unknown"
#endif

namespace nltu
{

double capacity_bits( std::uint64_t function_count )
{
  if ( function_count == 0u )
    return 0.0;
  return std::round( std::log2( static_cast<double>( function_count ) ) * 100.0 ) / 100.0;
}

std::uint64_t single_synapse_ltu_count( unsigned arity )
{
  /* sum_k C(n,k) * k = n * 2^(n-1) */
  std::uint64_t total = 1u;
  std::uint64_t binomial = 1u;
  for ( auto k = 1u; k <= arity; ++k )
  {
    binomial = binomial * ( arity - k + 1u ) / k;
    total += binomial * k;
  }
  return total;
}

std::optional<std::uint64_t> published_minimal_budget( model_kind model, unsigned arity )
{
  if ( arity < 3u || arity > 5u )
    return std::nullopt;
  if ( model == model_kind::nltu )
    return 2u;
  static constexpr std::uint64_t ltu[] = { 3u, 4u, 6u };
  return ltu[arity - 3u];
}

std::optional<std::uint64_t> published_single_synapse_count( model_kind model, unsigned arity )
{
  if ( arity == 5u )
    return model == model_kind::ltu ? 81u : 332u;
  if ( arity == 6u )
    return model == model_kind::ltu ? 128u : 1000u;
  return std::nullopt;
}

namespace
{

oracle_table oracle_for( unsigned arity, experiment_options const& options )
{
  if ( options.progress )
    *options.progress << fmt::format( "[oracle] n={}\n", arity );
  if ( options.cache_dir.empty() )
    return build_oracle( arity, options.workers );
  return load_or_build_oracle( arity, options.cache_dir, options.workers );
}

search_options search_options_for( experiment_options const& options )
{
  search_options out;
  out.workers = options.workers;
  out.state_cap = options.state_cap;
  out.progress = options.progress;
  return out;
}

provenance make_provenance( std::vector<std::string> specs, unsigned workers )
{
  provenance p;
  p.code_version = NLTU_VERSION;
  p.timestamp = fmt::format( "{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime( std::time( nullptr ) ) );
  p.workers = workers;
  std::string joined;
  for ( auto const& s : specs )
  {
    joined += s;
    joined += '\n';
  }
  p.spec_hash = to_hex( detail::fnv1a( joined ) );
  p.specs = std::move( specs );
  return p;
}

} // namespace

capacity_report run_figure2( std::span<const unsigned> arities, experiment_options const& options )
{
  capacity_report report;
  report.figure = "figure2";
  std::vector<std::string> specs;

  for ( auto n : arities )
  {
    auto const table = oracle_for( n, options );
    auto const target = table.capacity();

    for ( auto model : { model_kind::ltu, model_kind::nltu } )
    {
      budget_search_options bo;
      bo.max_subunits = options.max_subunits;
      bo.budget_cap = model == model_kind::ltu ? options.ltu_budget_cap : options.nltu_budget_cap;
      bo.search = search_options_for( options );

      report_row row;
      row.arity = n;
      row.model = model;
      row.oracle_count = target.size();
      try
      {
        auto const found = minimal_budget_for_capacity( model, n, target, bo );
        row.budget = found.budget;
        row.function_count = found.result.functions.size();
        row.states_visited = found.result.states_visited;
        row.states_pruned = found.result.states_pruned;
        specs.push_back( found.result.spec.describe() );
      }
      catch ( budget_not_reached const& e )
      {
        row.budget = e.best_budget();
        row.function_count = e.best().functions.size();
        row.states_visited = e.best().states_visited;
        row.states_pruned = e.best().states_pruned;
        row.reached = false;
        specs.push_back( e.best().spec.describe() );
      }
      row.capacity_bits = capacity_bits( row.function_count );
      row.paper_value = published_minimal_budget( model, n );
      row.match = row.reached && row.paper_value == row.budget;

      if ( model == model_kind::ltu )
      {
        /* an LTU reaching the threshold-function count computes all of them */
        row.oracle_budget = table.required_ltu_budget();
        row.containment_budget = row.budget;
        row.containment_reached = row.reached;
        row.containment_covered = row.reached ? target.size() : 0u;
      }
      else if ( options.containment_budget_cap > 0u )
      {
        bo.criterion = capacity_criterion::contains_target;
        bo.budget_cap = options.containment_budget_cap;
        try
        {
          auto const found = minimal_budget_for_capacity( model, n, target, bo );
          row.containment_budget = found.budget;
          row.containment_reached = true;
          row.containment_covered = target.size();
        }
        catch ( budget_not_reached const& e )
        {
          row.containment_budget = e.best_budget();
          row.containment_covered = e.covered();
        }
      }
      report.rows.push_back( row );
    }
  }
  report.origin = make_provenance( std::move( specs ), options.workers );
  return report;
}

capacity_report run_figure3( std::span<const unsigned> arities, experiment_options const& options )
{
  capacity_report report;
  report.figure = "figure3";
  std::vector<std::string> specs;

  for ( auto n : arities )
  {
    auto const oracle_count = oracle_for( n, options ).entries.size();
    for ( auto model : { model_kind::ltu, model_kind::nltu } )
    {
      search_spec spec{ n, model, 1u, options.max_subunits };
      auto const result = enumerate_functions( spec, search_options_for( options ) );
      specs.push_back( spec.describe() );

      report_row row;
      row.arity = n;
      row.model = model;
      row.budget = 1u;
      row.function_count = result.functions.size();
      row.oracle_count = oracle_count;
      row.capacity_bits = capacity_bits( row.function_count );
      row.paper_value = published_single_synapse_count( model, n );
      row.match = row.paper_value == row.function_count;
      row.states_visited = result.states_visited;
      row.states_pruned = result.states_pruned;
      if ( model == model_kind::ltu )
        row.closed_form_count = single_synapse_ltu_count( n );
      report.rows.push_back( row );
    }
  }
  report.origin = make_provenance( std::move( specs ), options.workers );
  return report;
}

ltu_params figure1_ltu()
{
  return { { 1, 1, 2 }, 3 };
}

nltu_params figure1_nltu()
{
  return { { { 1, 1, 0 }, { 0, 0, 1 } }, { 1, 1 }, 2 };
}

bool figure1_report::passed() const
{
  return !checks.empty() && std::ranges::all_of( checks, &named_check::passed );
}

figure1_report verify_figure1()
{
  figure1_report report;
  auto add = [&]( std::string name, bool passed, std::string detail ) {
    report.checks.push_back( { std::move( name ), passed, std::move( detail ) } );
  };

  auto const ltu = ltu_truth_table( figure1_ltu() );
  auto const nltu = nltu_truth_table( figure1_nltu() );
  add( "ltu_computes_target", ltu.mask() == figure1_mask, fmt::format( "ltu mask {}", to_hex( ltu.mask() ) ) );
  add( "nltu_computes_target", nltu.mask() == figure1_mask, fmt::format( "nltu mask {}", to_hex( nltu.mask() ) ) );
  add( "ltu_equals_nltu", ltu == nltu, fmt::format( "{} vs {}", to_hex( ltu.mask() ), to_hex( nltu.mask() ) ) );

  auto const nltu_single = enumerate_functions( { 3u, model_kind::nltu, 1u, 0u } );
  add( "nltu_single_synapse_reaches_target", nltu_single.functions.contains( figure1_mask ),
       fmt::format( "{} functions at n=3, k=1", nltu_single.functions.size() ) );

  auto const ltu_single = enumerate_functions( { 3u, model_kind::ltu, 1u, 0u } );
  add( "ltu_single_synapse_misses_target", !ltu_single.functions.contains( figure1_mask ),
       fmt::format( "{} functions at n=3, k=1", ltu_single.functions.size() ) );

  auto const cert = is_positive_threshold( truth_table( 3u, figure1_mask ) );
  auto const heaviest = cert.separable ? std::ranges::max( cert.weights ) : 0;
  add( "ltu_needs_two_synapses", cert.separable && heaviest == 2,
       fmt::format( "smallest largest weight {}", heaviest ) );
  return report;
}

std::uint64_t nltu_weight_matrices( unsigned arity, unsigned budget, unsigned subunits )
{
  /* columns per input: C(subunits + budget, budget) */
  std::uint64_t columns = 1u;
  for ( auto i = 1u; i <= budget; ++i )
    columns = columns * ( subunits + i ) / i;
  std::uint64_t total = 1u;
  for ( auto i = 0u; i < arity; ++i )
    total *= columns;
  return total;
}

namespace
{

std::string_view match_text( report_row const& row )
{
  if ( !row.reached )
    return "not_reached";
  return row.match ? "true" : "false";
}

} // namespace

void write_csv( std::ostream& os, capacity_report const& report )
{
  os << csv_header << '\n';
  for ( auto const& r : report.rows )
  {
    os << fmt::format( "{},{},{},{},{},{:.2f},{},{}\n", r.arity, to_string( r.model ), r.budget, r.function_count,
                       r.oracle_count, r.capacity_bits, r.paper_value ? std::to_string( *r.paper_value ) : "",
                       match_text( r ) );
  }
}

nlohmann::json to_json( capacity_report const& report )
{
  auto rows = nlohmann::json::array();
  for ( auto const& r : report.rows )
  {
    nlohmann::json row{ { "n", r.arity },
                        { "model", to_string( r.model ) },
                        { "budget", r.budget },
                        { "function_count", r.function_count },
                        { "oracle_count", r.oracle_count },
                        { "capacity_bits", r.capacity_bits },
                        { "paper_value", r.paper_value ? nlohmann::json( *r.paper_value ) : nlohmann::json() },
                        { "match", r.match },
                        { "reached", r.reached },
                        { "states_visited", r.states_visited },
                        { "states_pruned", r.states_pruned } };
    if ( r.oracle_budget )
      row["oracle_budget"] = *r.oracle_budget;
    if ( r.closed_form_count )
      row["closed_form_count"] = *r.closed_form_count;
    if ( r.containment_budget )
    {
      row["containment_budget"] = *r.containment_budget;
      row["containment_reached"] = r.containment_reached;
      row["containment_covered"] = r.containment_covered;
    }
    rows.push_back( std::move( row ) );
  }
  return { { "figure", report.figure },
           { "rows", std::move( rows ) },
           { "provenance",
             { { "code_version", report.origin.code_version },
               { "timestamp", report.origin.timestamp },
               { "workers", report.origin.workers },
               { "specs", report.origin.specs },
               { "spec_hash", report.origin.spec_hash } } } };
}

nlohmann::json to_json( figure1_report const& report )
{
  auto checks = nlohmann::json::array();
  for ( auto const& c : report.checks )
    checks.push_back( { { "name", c.name }, { "passed", c.passed }, { "detail", c.detail } } );
  return { { "figure", "figure1" },
           { "passed", report.passed() },
           { "mask", to_hex( figure1_mask ) },
           { "ltu", figure1_ltu() },
           { "nltu", figure1_nltu() },
           { "checks", std::move( checks ) } };
}

csv_error::csv_error( std::size_t row, std::string column, std::string const& what )
    : std::runtime_error( column.empty() ? fmt::format( "row {}: {}", row, what )
                                         : fmt::format( "row {}, column {}: {}", row, column, what ) ),
      row_( row ), column_( std::move( column ) )
{
}

namespace
{

template<class T>
T parse_number( std::string_view field, std::size_t row, char const* column )
{
  T value{};
  auto const [ptr, ec] = std::from_chars( field.data(), field.data() + field.size(), value );
  if ( field.empty() || ec != std::errc{} || ptr != field.data() + field.size() )
    throw csv_error( row, column, fmt::format( "'{}' is not a valid number", field ) );
  return value;
}

double parse_decimal( std::string_view field, std::size_t row, char const* column )
{
  try
  {
    std::size_t used = 0u;
    auto const value = std::stod( std::string( field ), &used );
    if ( used != field.size() )
      throw std::invalid_argument( "trailing characters" );
    return value;
  }
  catch ( std::exception const& )
  {
    throw csv_error( row, column, fmt::format( "'{}' is not a valid decimal", field ) );
  }
}

} // namespace

std::vector<report_row> read_csv( std::istream& is )
{
  std::string line;
  if ( !std::getline( is, line ) || line != csv_header )
  {
    throw csv_error( 0u, "", fmt::format( "expected header '{}'", csv_header ) );
  }
  std::vector<report_row> rows;
  std::size_t number = 0u;
  while ( std::getline( is, line ) )
  {
    ++number;
    if ( line.empty() )
      continue;
    std::vector<std::string_view> fields;
    std::string_view rest( line );
    while ( true )
    {
      auto const comma = rest.find( ',' );
      fields.push_back( rest.substr( 0u, comma ) );
      if ( comma == std::string_view::npos )
        break;
      rest.remove_prefix( comma + 1u );
    }
    if ( fields.size() != 8u )
    {
      throw csv_error( number, "", fmt::format( "expected 8 fields, found {}", fields.size() ) );
    }

    report_row row;
    row.arity = parse_number<unsigned>( fields[0], number, "n" );
    if ( row.arity < 1u || row.arity > max_arity )
      throw csv_error( number, "n", fmt::format( "arity {} outside 1..{}", row.arity, max_arity ) );
    try
    {
      row.model = parse_model_kind( fields[1] );
    }
    catch ( std::invalid_argument const& e )
    {
      throw csv_error( number, "model", e.what() );
    }
    row.budget = parse_number<unsigned>( fields[2], number, "budget" );
    row.function_count = parse_number<std::uint64_t>( fields[3], number, "function_count" );
    row.oracle_count = parse_number<std::uint64_t>( fields[4], number, "oracle_count" );
    row.capacity_bits = parse_decimal( fields[5], number, "capacity_bits" );
    if ( !fields[6].empty() )
      row.paper_value = parse_number<std::uint64_t>( fields[6], number, "paper_value" );
    if ( fields[7] == "true" )
      row.match = true;
    else if ( fields[7] == "not_reached" )
      row.reached = false;
    else if ( fields[7] != "false" )
      throw csv_error( number, "match", fmt::format( "'{}' is not one of true, false, not_reached", fields[7] ) );
    rows.push_back( row );
  }
  if ( rows.empty() )
  {
    throw csv_error( 0u, "", "report has no data rows" );
  }
  return rows;
}

} // namespace nltu
